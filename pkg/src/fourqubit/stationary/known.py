"""Published stationary points of |F3| and |F4| on the Cartan sphere.

Closed-form points are stored directly. Points defined implicitly by
polynomial equations keep those equations and an approximate seed; the
coordinates are refined by Newton's method when requested, and refinement
refuses to pick between two roots near the same seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
import sympy as sp

from .._validation import check_invariant
from ..cartan import CartanPoint

__all__ = ["AlgebraicDefinition", "AmbiguousRootError", "known_points", "labelled_points", "lookup_point"]

_S2, _S3, _S6, _S7 = np.sqrt([2.0, 3.0, 6.0, 7.0])


def _e(t):
    return np.exp(1j * np.pi * t)


class AmbiguousRootError(RuntimeError):
    """More than one root of a defining system lies near its seed."""


@dataclass(frozen=True)
class AlgebraicDefinition:
    """Coordinates given by the real roots of polynomial equations near a seed."""

    unknowns: tuple
    equations: tuple
    seed: tuple
    build: Callable

    def symbols(self) -> tuple:
        return tuple(sp.Symbol(u, real=True) for u in self.unknowns)

    def expressions(self) -> list:
        names = dict(zip(self.unknowns, self.symbols()))
        return [sp.sympify(e, locals=names) for e in self.equations]

    def _functions(self):
        syms = self.symbols()
        exprs = self.expressions()
        f = sp.lambdify(syms, exprs, "numpy")
        jac = sp.lambdify(syms, sp.Matrix(exprs).jacobian(syms), "numpy")
        return (lambda v: np.array(f(*v), dtype=float)), (lambda v: np.array(jac(*v), dtype=float))

    def solve(self, window: float = 0.05, tol: float = 1e-14):
        """Unique root within ``window`` of the seed, refined to ``tol``."""
        seed = np.array(self.seed, dtype=float)
        if len(self.unknowns) == 1:
            poly = sp.Poly(self.expressions()[0], self.symbols()[0])
            roots = np.roots([float(c) for c in poly.all_coeffs()])
            roots = roots[np.abs(roots.imag) < 1e-9].real
            near = roots[np.abs(roots - seed[0]) < window]
            if len(near) != 1:
                raise AmbiguousRootError(f"{len(near)} real roots within {window} of {seed[0]}")
            candidates = [np.array([near[0]])]
        else:
            candidates = [seed]
        f, jac = self._functions()
        roots = []
        # probe the window for other roots of the multivariate system
        probes = candidates + (
            [seed + window * d for d in np.random.default_rng(0).uniform(-1, 1, (8, len(seed)))]
            if len(self.unknowns) > 1 else []
        )
        for v in probes:
            v = _newton(f, jac, v, tol)
            if v is not None and np.abs(v - seed).max() < window:
                if not any(np.abs(v - r).max() < 1e-8 for r in roots):
                    roots.append(v)
        if len(roots) != 1:
            raise AmbiguousRootError(f"found {len(roots)} roots near seed {tuple(seed)}")
        return roots[0]

    def residual(self, values) -> float:
        f, _ = self._functions()
        return float(np.abs(f(np.asarray(values, dtype=float))).max())


def _newton(f, jac, v, tol, max_iter=60):
    v = np.array(v, dtype=float)
    for _ in range(max_iter):
        try:
            step = np.linalg.solve(jac(v), -f(v))
        except np.linalg.LinAlgError:
            return None
        v = v + step
        if not np.all(np.isfinite(v)):
            return None
        if np.abs(step).max() <= tol * max(1.0, np.abs(v).max()):
            return v
    return None


@dataclass(frozen=True)
class KnownPoint:
    label: str
    z: Optional[tuple] = None
    algebraic: Optional[AlgebraicDefinition] = None

    def point(self) -> CartanPoint:
        if self.algebraic is None:
            return CartanPoint(np.array(self.z, dtype=complex))
        return CartanPoint(np.array(self.algebraic.build(*_solved(self.label)), dtype=complex))


_F3 = [
    KnownPoint("phi1", (1, 0, 0, 0)),
    KnownPoint("phi2", (1, 1, 0, 0)),
    KnownPoint("phi3", (1, 1, 1, 0)),
    KnownPoint("phi4", (2, 1, 1, 0)),
    KnownPoint("phi5", (_S2, 1j, 0, 0)),
    KnownPoint("phi6", (_S2, 1j, 1j, 0)),
    KnownPoint("phi7", (_S2, 1j, 1j, 1j)),
    KnownPoint("phi8", (_S3, 1j, 1j, 1j)),
    KnownPoint("phi9", (1, _e(1 / 3), _e(2 / 3), 0)),
    # last coordinate is (sqrt6 - 2) i; with sqrt6 - 2i the point is not stationary
    KnownPoint("phi10", (_S2, _S2 - _S3 + 1j, _S3 - _S2 + 1j, (_S6 - 2) * 1j)),
    KnownPoint("phi11", (7, 2j * _S7, 2j * _S7, 0)),
    KnownPoint("phi12", (18, 11 - np.sqrt(203) * 1j, 7 + np.sqrt(203) * 1j, 0)),
    KnownPoint("phi13", algebraic=AlgebraicDefinition(
        ("a", "b"),
        ("1000*a**2*b**2 - 872*b**4 + 85*a**2 + 345*b**2 - 7",
         "100*a**4 - 244*b**4 + 45*a**2 + 65*b**2 + 11"),
        (0.0933, 0.622),
        lambda a, b: (1, a + b * 1j, -a - b * 1j, 0),
    )),
    KnownPoint("phi14", algebraic=AlgebraicDefinition(
        ("a", "b", "c"),
        ("5*a**4*c - 30*a**2*b**2*c + 5*b**4*c - 5*a**2*c**3 + 5*b**2*c**3 + 2*c**5 + 5*a**2*c - 5*b**2*c - 5*c**3 + 2*c",
         "10*a**4*b - 40*a**2*b**3 + 14*b**5 - 15*a**2*b*c**2 + 5*b**3*c**2 + 5*b*c**4 + 25*a**2*b - 15*b**3 - 5*b*c**2 + 4*b",
         "4*a**5 + 20*a**3*b**2 - 5*a**3*c**2 + 15*a*b**2*c**2 - 5*a**3 - 5*a*b**2 + 5*a*c**2 + a"),
        (0.217, 0.830, 0.366),
        lambda a, b, c: (1, a - b * 1j, a + b * 1j, c * 1j),
    )),
]

_F4 = [
    KnownPoint("psi1", (1, 0, 0, 0)),
    KnownPoint("psi2", (1, 1, 0, 0)),
    KnownPoint("psi3", (1, 1, 1, 0)),
    KnownPoint("psi4", (2, 1, 1, 0)),
    KnownPoint("psi5", (1, 1j, 0, 0)),
    KnownPoint("psi6", (1, 1j, _e(-1 / 4), _e(1 / 4))),
    KnownPoint("psi7", (np.sqrt(33), np.sqrt(33), np.sqrt(13) - np.sqrt(20) * 1j, np.sqrt(13) - np.sqrt(20) * 1j)),
    KnownPoint("psi8", algebraic=AlgebraicDefinition(
        ("a",), ("80*a**6 - 91*a**4 + 77*a**2 - 10",), (0.393,),
        lambda a: (1, a * 1j, a * 1j, 0),
    )),
    KnownPoint("psi9", algebraic=AlgebraicDefinition(
        ("a",), ("75*a**6 - 63*a**4 + 49*a**2 - 5",), (0.342,),
        lambda a: (1, a * 1j, a * 1j, a * 1j),
    )),
    KnownPoint("psi10", algebraic=AlgebraicDefinition(
        ("a",), ("640*a**6 - 1232*a**4 + 2016*a**2 - 465",), (0.518,),
        lambda a: (1, 0.5 + a * 1j, 0.5 - a * 1j, 0),
    )),
    KnownPoint("psi11", algebraic=AlgebraicDefinition(
        ("a", "b"),
        ("35*a**4 - 21*a**2*b**2 - 4*b**4 - 21*a**2 - 18*b**2 - 4",
         "190*a**2*b**4 - 110*b**6 - 237*a**2*b**2 - 339*b**4 + 190*a**2 - 339*b**2 - 110"),
        (0.920, 0.302),
        lambda a, b: (1, a * 1j, b, 0),
    )),
    KnownPoint("psi12", algebraic=AlgebraicDefinition(
        ("a", "b"),
        ("35*a**4 - 21*a**2*b**2 + 52*b**4 - 21*a**2 + 3*b**2 - 4",
         "587*a**2*b**4 + 446*b**6 - 918*a**2*b**2 + 129*b**4 + 475*a**2 - 732*b**2 - 275"),
        (0.879, 0.256),
        lambda a, b: (1, a * 1j, b, b),
    )),
    KnownPoint("psi13", algebraic=AlgebraicDefinition(
        ("a", "b"),
        ("2696*a**6 - 24472*a**2*b**4 + 7792*b**6 - 161*a**4 - 2030*a**2*b**2 - 4221*b**4 + 679*a**2 + 1659*b**2 + 26",
         "94360*a**4*b**2 - 213584*a**2*b**4 + 51096*b**6 + 3437*a**4 + 2310*a**2*b**2 - 29687*b**4 + 1505*a**2 + 13405*b**2 - 262"),
        (0.347, 0.716),
        lambda a, b: (1, a + b * 1j, a + b * 1j, 0),
    )),
]

_BY_LABEL = {kp.label: kp for kp in _F3 + _F4}


@lru_cache(maxsize=None)
def _solved(label: str) -> tuple:
    return tuple(float(v) for v in _BY_LABEL[label].algebraic.solve())


def algebraic_definition(label: str) -> Optional[AlgebraicDefinition]:
    return lookup_entry(label).algebraic


def lookup_entry(label: str) -> KnownPoint:
    key = str(label).lower()
    if key not in _BY_LABEL:
        raise KeyError(f"unknown point label {label!r}")
    return _BY_LABEL[key]


def lookup_point(label: str) -> CartanPoint:
    """Unnormalized point by label, e.g. ``"phi10"`` or ``"psi8"``."""
    return lookup_entry(label).point()


def labelled_points(invariant) -> dict:
    """Ordered mapping label -> CartanPoint for the F3 or F4 list."""
    name = check_invariant(invariant)
    if name == "F3":
        entries = _F3
    elif name == "F4":
        entries = _F4
    else:
        raise ValueError("published stationary points exist only for F3 and F4")
    return {kp.label: kp.point() for kp in entries}


def known_points(invariant) -> list:
    """phi1..phi14 for F3 or psi1..psi13 for F4, unnormalized."""
    return list(labelled_points(invariant).values())
