"""Stationarity residuals, chart Hessians and verification reports."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .._validation import check_nonzero, invariant_order, check_invariant
from ..cartan import CartanPoint, as_point, cartan_embed
from ._derivatives import full_state_gradient, holomorphic_derivatives, real_derivatives, to_real

AMBIENTS = ("S7", "S15")
OBJECTIVES = ("abs2", "real")


class NotStationaryError(ValueError):
    """The point is not a nonvanishing stationary point of the objective."""


class ChartError(ValueError):
    """The point lies outside the sphere chart (first coordinate vanishes)."""


def _unit(p) -> np.ndarray:
    z = as_point(p).z
    return z / check_nonzero(z, "Cartan point")


def phase_fix_real(p, invariant) -> np.ndarray:
    """Rotate by the smallest phase e^{it} that makes F_k real.

    F_k is homogeneous of degree 2k, so F_k(e^{it} z) = e^{2ikt} F_k(z). Points
    where F_k vanishes are returned unchanged.
    """
    k = invariant_order(invariant)
    z = as_point(p).z
    f = holomorphic_derivatives(z, k, order=1)[0][0]
    if abs(f) < 1e-300:
        return z.copy()
    ang = np.angle(f)
    # target a multiple of pi closest to the current angle
    t = (np.round(ang / np.pi) * np.pi - ang) / (2 * k)
    return z * np.exp(1j * t)


def tangential_residual(p, invariant, ambient: str = "S7", objective: str = "abs2") -> float:
    """Norm of the tangential gradient at the normalized point.

    ``objective="abs2"`` uses g = |F_k|^2; ``"real"`` uses g = Re F_k after
    rotating the point so that F_k is real. On ``"S15"`` the gradient is taken
    on the full 16-dimensional state space at the embedded point.
    """
    k = invariant_order(invariant)
    if ambient not in AMBIENTS:
        raise ValueError(f"ambient must be one of {AMBIENTS}")
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}")
    z = _unit(p)
    if objective == "real":
        z = phase_fix_real(z, invariant)
    if ambient == "S7":
        _, grad, _ = real_derivatives(z, k, objective, order=1)
        x = to_real(z)
        grad = grad[0]
        return float(np.linalg.norm(grad - (grad @ x) * x))
    phi = cartan_embed(z).amplitudes
    f, hol = full_state_gradient(phi, k)
    # real gradient packed as grad_x + i grad_y
    w = np.conj(hol[0]) if objective == "real" else 2 * f[0] * np.conj(hol[0])
    return float(np.linalg.norm(w - np.real(np.vdot(w, phi)) * phi))


def state_residual(state, invariant, objective: str = "abs2") -> float:
    """Tangential residual of |F_k|^2 (or Re F_k) on the unit sphere of C^16."""
    k = invariant_order(invariant)
    amps = np.asarray(getattr(state, "amplitudes", state), dtype=complex)
    phi = amps / check_nonzero(amps)
    f, hol = full_state_gradient(phi, k)
    w = np.conj(hol[0]) if objective == "real" else 2 * f[0] * np.conj(hol[0])
    return float(np.linalg.norm(w - np.real(np.vdot(w, phi)) * phi))


def chart_hessian(p, invariant, chart_tol: float = 1e-8) -> np.ndarray:
    """Hessian of |F_k|^2 in the chart (x2..x8) -> (sqrt(1 - sum xi^2), x2..x8).

    |F_k|^2 is phase invariant, so the point is first rotated to make z1 real
    and positive. The chart is the graph of the first real coordinate s over
    the remaining seven, and the second fundamental form contributes
    grad_1 g * d^2 s.
    """
    k = invariant_order(invariant)
    z = _unit(p)
    if abs(z[0]) < chart_tol:
        raise ChartError("first Cartan coordinate vanishes; chart is not valid here")
    z = z * np.exp(-1j * np.angle(z[0]))
    _, grad, hess = real_derivatives(z, k, "abs2")
    grad, hess = grad[0], hess[0]
    x = to_real(z)
    s, rest = x[0], x[1:]
    jac = np.vstack([-rest / s, np.eye(7)])
    d2s = -np.eye(7) / s - np.outer(rest, rest) / s**3
    return jac.T @ hess @ jac + grad[0] * d2s


def signature_of(eigenvalues, zero_tol_rel: float = 1e-6) -> tuple:
    ev = np.asarray(eigenvalues)
    thresh = zero_tol_rel * np.abs(ev).max()
    return (int(np.sum(ev < -thresh)), int(np.sum(np.abs(ev) <= thresh)), int(np.sum(ev > thresh)))


def hessian_signature(p, invariant, zero_tol_rel: float = 1e-6, stationary_tol: float = 1e-8):
    """Signature (negative, zero, positive) of the chart Hessian and its eigenvalues.

    Raises
    ------
    NotStationaryError
        If the S7 residual exceeds ``stationary_tol`` or F_k vanishes.
    ChartError
        If the first coordinate of the normalized point vanishes.
    """
    k = invariant_order(invariant)
    z = _unit(p)
    if abs(holomorphic_derivatives(z, k, order=1)[0][0]) < 1e-8:
        raise NotStationaryError(f"{invariant} vanishes at the point")
    res = tangential_residual(z, invariant, "S7")
    if res > stationary_tol:
        raise NotStationaryError(f"tangential residual {res:.3e} exceeds {stationary_tol:g}")
    ev = np.linalg.eigvalsh(chart_hessian(z, invariant))
    return signature_of(ev, zero_tol_rel), ev


@dataclass(frozen=True)
class StationaryReport:
    """Verification record of a candidate stationary point.

    ``point`` is normalized and rotated so that F_k is real. Eigenvalues and
    signature are ``None`` when the point is not a nonvanishing stationary
    point.
    """

    point: CartanPoint
    invariant_name: str
    residual_s7: float
    residual_s15: float
    value: float
    hessian_eigenvalues: Optional[tuple] = None
    signature: Optional[tuple] = None
    label: str = ""

    @property
    def stationary(self) -> bool:
        return self.signature is not None

    def to_dict(self) -> dict:
        z = self.point.z
        return {
            "label": self.label,
            "invariant": self.invariant_name,
            "point": [[float(v.real), float(v.imag)] for v in z],
            "residual_s7": self.residual_s7,
            "residual_s15": self.residual_s15,
            "value": self.value,
            "stationary": self.stationary,
            "hessian_eigenvalues": None if self.hessian_eigenvalues is None else [float(v) for v in self.hessian_eigenvalues],
            "signature": None if self.signature is None else list(self.signature),
        }


def verify_point(
    p,
    invariant,
    tol: float = 1e-8,
    s15_tol: float = 1e-7,
    zero_tol_rel: float = 1e-6,
    label: str = "",
) -> StationaryReport:
    """Residuals on both spheres, |F_k| and (if stationary) the Hessian signature."""
    name = check_invariant(invariant)
    k = invariant_order(name)
    z = phase_fix_real(_unit(p), name)
    value = float(abs(holomorphic_derivatives(z, k, order=1)[0][0]))
    r7 = tangential_residual(z, name, "S7")
    r15 = tangential_residual(z, name, "S15")
    ev = sig = None
    if r7 < tol and r15 < s15_tol and value > 1e-8:
        # F_k is symmetric in the coordinates, so move the largest one into the chart slot
        order = np.argsort(-np.abs(z), kind="stable")
        sig, ev = hessian_signature(z[order], name, zero_tol_rel, stationary_tol=tol)
        ev = tuple(float(v) for v in ev)
    return StationaryReport(CartanPoint(z), name, r7, r15, value, ev, sig, label)
