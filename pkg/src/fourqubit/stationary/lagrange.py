"""Dehomogenized Lagrange systems for Re F_k on the sphere and a damped Newton solver.

With g = Re F_k in the real coordinates (x1, y1, ..., x4, y4), stationary
points of g on the unit sphere satisfy grad g = mu * x. Fixing one chart
variable x_j = 1 eliminates the multiplier and leaves seven equations

    dg/dx_i - (dg/dx_j) x_i = 0,    i != j

in seven unknowns. Every solution lifts to a stationary direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np
import sympy as sp

from .._validation import check_invariant, invariant_order
from ._derivatives import real_derivatives, to_complex

VARIABLE_NAMES = ("x1", "y1", "x2", "y2", "x3", "y3", "x4", "y4")


class ConvergenceError(RuntimeError):
    """Newton iteration failed; ``reason`` is 'singular', 'diverged' or 'max_iter'."""

    def __init__(self, reason: str, message: str = ""):
        super().__init__(message or reason)
        self.reason = reason


def real_part_polynomial(k: int, gens) -> sp.Poly:
    """Re F_k as an integer polynomial in the eight real coordinates."""
    p = 2 * k
    x = gens[0::2]
    y = gens[1::2]
    total = sp.Poly(0, *gens, domain=sp.ZZ)
    for i in range(4):
        for j in range(i + 1, 4):
            for sign in (-1, 1):
                a = sp.Poly(x[i] + sign * x[j], *gens, domain=sp.ZZ)
                b = sp.Poly(y[i] + sign * y[j], *gens, domain=sp.ZZ)
                # Re (a + i b)^p keeps the even powers of b
                for m in range(0, p + 1, 2):
                    coef = comb(p, m) * (-1) ** (m // 2)
                    total += coef * a ** (p - m) * b**m
    return total


class RealPolynomialSystem:
    """Square polynomial system of one invariant in one chart.

    Parameters
    ----------
    invariant : {"F1", "F3", "F4", "F6"}
    chart : int
        1-based index of the real variable set to 1 (1 = x1, 2 = y1, ..., 8 = y4).

    The exact equations (integer coefficients) are built lazily with sympy.
    Numerical evaluation uses closed-form derivatives and is batched.
    """

    def __init__(self, invariant="F3", chart: int = 1):
        self.invariant = check_invariant(invariant)
        chart = int(chart)
        if not 1 <= chart <= 8:
            raise ValueError(f"chart must be in 1..8, got {chart}")
        self.chart = chart
        self.k = invariant_order(self.invariant)
        self._j = chart - 1
        self._idx = [i for i in range(8) if i != self._j]

    def __repr__(self):
        return f"RealPolynomialSystem(invariant={self.invariant!r}, chart={self.chart})"

    @property
    def variables(self) -> tuple:
        return tuple(VARIABLE_NAMES[i] for i in self._idx)

    @property
    def provenance(self) -> dict:
        return {"invariant": self.invariant, "chart": self.chart, "chart_variable": VARIABLE_NAMES[self._j]}

    @cached_property
    def symbols(self) -> tuple:
        return sp.symbols(VARIABLE_NAMES, real=True)

    @cached_property
    def objective(self) -> sp.Poly:
        """g = Re F_k as a polynomial in all eight coordinates."""
        return real_part_polynomial(self.k, self.symbols)

    @cached_property
    def equations(self) -> list:
        """The seven dehomogenized equations as integer polynomials in ``variables``."""
        gens = self.symbols
        g = self.objective
        xj = gens[self._j]
        rest = [gens[i] for i in self._idx]
        dj = g.diff(xj)
        out = []
        for i in self._idx:
            eq = g.diff(gens[i]) - dj * sp.Poly(gens[i], *gens, domain=sp.ZZ)
            expr = eq.as_expr().subs(xj, 1)
            out.append(sp.Poly(expr, *rest, domain=sp.ZZ))
        return out

    def degrees(self) -> list:
        return [eq.total_degree() for eq in self.equations]

    def lambdified(self):
        """Residual function built from the exact equations (slow; for cross-checks)."""
        rest = [self.symbols[i] for i in self._idx]
        fn = sp.lambdify(rest, [eq.as_expr() for eq in self.equations], "numpy")
        return lambda y: np.array(fn(*np.asarray(y, dtype=float)), dtype=float)

    def lift(self, y) -> np.ndarray:
        """Insert x_j = 1 to obtain real 8-vectors."""
        return np.insert(np.atleast_2d(np.asarray(y, dtype=float)), self._j, 1.0, axis=1)

    def dehomogenize(self, x) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return np.delete(x / x[:, [self._j]], self._j, axis=1)

    def evaluate(self, y, jacobian: bool = True):
        """Residuals (N, 7) and, optionally, Jacobians (N, 7, 7)."""
        y = np.atleast_2d(np.asarray(y, dtype=float))
        x = self.lift(y)
        _, grad, hess = real_derivatives(to_complex(x), self.k, "real", order=2 if jacobian else 1)
        j, idx = self._j, self._idx
        h = grad[:, idx] - grad[:, [j]] * y
        if not jacobian:
            return h, None
        jac = hess[:, idx][:, :, idx] - y[:, :, None] * hess[:, j, idx][:, None, :] - grad[:, j][:, None, None] * np.eye(7)
        return h, jac

    def __call__(self, y):
        h, _ = self.evaluate(y, jacobian=False)
        return h[0] if np.ndim(y) == 1 else h

    def jacobian(self, y):
        _, jac = self.evaluate(y)
        return jac[0] if np.ndim(y) == 1 else jac


def build_lagrange_system(invariant, chart_var: int = 1) -> RealPolynomialSystem:
    return RealPolynomialSystem(invariant, chart_var)


@dataclass(frozen=True)
class NewtonResult:
    solution: np.ndarray
    point: np.ndarray
    iterations: int
    residual: float
    condition: float


def _solve_rows(jac, rhs):
    """Batched linear solve; rows with a singular matrix come back as NaN."""
    try:
        return np.linalg.solve(jac, rhs[..., None])[..., 0]
    except np.linalg.LinAlgError:
        out = np.full(rhs.shape, np.nan)
        for r in range(len(rhs)):
            try:
                out[r] = np.linalg.solve(jac[r], rhs[r])
            except np.linalg.LinAlgError:
                pass
        return out


def batched_newton(y0, system: RealPolynomialSystem, max_iter: int = 100, tol: float = 1e-12,
                   armijo: float = 1e-4, max_halvings: int = 20, blowup: float = 1e6):
    """Damped Newton on many starts at once.

    Each row is iterated independently, so results do not depend on how
    starts are grouped. Returns ``(y, status, iterations)`` where status is
    0 converged, 1 singular, 2 diverged, 3 max_iter.
    """
    y = np.array(np.atleast_2d(y0), dtype=float)
    n = len(y)
    status = np.full(n, 3)
    iters = np.zeros(n, dtype=int)
    active = np.ones(n, dtype=bool)
    for it in range(max_iter + 1):
        ids = np.flatnonzero(active)
        if ids.size == 0:
            break
        h, jac = system.evaluate(y[ids])
        r = np.linalg.norm(h, axis=1)
        done = r < tol
        status[ids[done]] = 0
        iters[ids[done]] = it
        active[ids[done]] = False
        if it == max_iter:
            break
        keep = ~done
        ids, h, jac, r = ids[keep], h[keep], jac[keep], r[keep]
        step = _solve_rows(jac, -h)
        bad = ~np.all(np.isfinite(step), axis=1)
        status[ids[bad]] = 1
        active[ids[bad]] = False
        ids, step, r = ids[~bad], step[~bad], r[~bad]
        if ids.size == 0:
            continue
        base = y[ids]
        t = np.ones(len(ids))
        trial = base + step
        for _ in range(max_halvings):
            hn, _ = system.evaluate(trial, jacobian=False)
            worse = np.linalg.norm(hn, axis=1) ** 2 > (1 - armijo * t) * r**2
            if not worse.any():
                break
            t[worse] *= 0.5
            trial[worse] = base[worse] + t[worse, None] * step[worse]
        y[ids] = trial
        iters[ids] = it + 1
        blown = ~np.all(np.isfinite(trial), axis=1) | (np.abs(trial).max(axis=1) > blowup)
        status[ids[blown]] = 2
        active[ids[blown]] = False
    return y, status, iters


_REASONS = {1: "singular", 2: "diverged", 3: "max_iter"}


def newton_refine(start, system: RealPolynomialSystem, max_iter: int = 100, tol: float = 1e-12,
                  max_condition: float = 1e12) -> NewtonResult:
    """Refine one start (a 7-vector in the chart, or a real 8-vector) by damped Newton.

    Raises
    ------
    ConvergenceError
        With ``reason`` 'singular' (including an 8-vector whose chart
        coordinate vanishes), 'diverged' or 'max_iter'.
    """
    start = np.asarray(start, dtype=float).ravel()
    if start.size == 8:
        if abs(start[system.chart - 1]) < 1e-12:
            raise ConvergenceError("singular", "start lies outside the chart")
        start = system.dehomogenize(start)[0]
    elif start.size != 7:
        raise ValueError("start must be a real 7-vector or 8-vector")
    y, status, iters = batched_newton(start, system, max_iter, tol)
    if status[0] != 0:
        raise ConvergenceError(_REASONS[int(status[0])], f"Newton failed: {_REASONS[int(status[0])]}")
    sol = y[0]
    h, jac = system.evaluate(sol)
    cond = float(np.linalg.cond(jac[0]))
    if not cond < max_condition:
        raise ConvergenceError("singular", f"Jacobian condition number {cond:.2e} at the solution")
    return NewtonResult(sol, system.lift(sol)[0], int(iters[0]), float(np.linalg.norm(h[0])), cond)
