"""Stationary points of |F_k| on the unit spheres of the Cartan subspace and of the full state space."""

from .core import (
    ChartError,
    NotStationaryError,
    StationaryReport,
    chart_hessian,
    hessian_signature,
    phase_fix_real,
    signature_of,
    state_residual,
    tangential_residual,
    verify_point,
)
from .known import AmbiguousRootError, known_points, labelled_points, lookup_point
from .lagrange import (
    ConvergenceError,
    NewtonResult,
    RealPolynomialSystem,
    batched_newton,
    build_lagrange_system,
    newton_refine,
)
from .search import multistart_search, start_point

__all__ = [
    "AmbiguousRootError",
    "ChartError",
    "ConvergenceError",
    "NewtonResult",
    "NotStationaryError",
    "RealPolynomialSystem",
    "StationaryReport",
    "batched_newton",
    "build_lagrange_system",
    "chart_hessian",
    "hessian_signature",
    "known_points",
    "labelled_points",
    "lookup_point",
    "multistart_search",
    "newton_refine",
    "phase_fix_real",
    "signature_of",
    "start_point",
    "state_residual",
    "tangential_residual",
    "verify_point",
]
