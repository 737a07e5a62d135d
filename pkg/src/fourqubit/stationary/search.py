"""Multistart Newton search for stationary points of |F3| and |F4|."""

from __future__ import annotations

import numpy as np
from joblib import Parallel, delayed

from .._validation import check_invariant, invariant_order
from ..cartan import canonicalize
from ..invariants import fingerprint_array
from ._derivatives import real_derivatives, to_complex, to_real
from .core import verify_point
from .lagrange import RealPolynomialSystem, batched_newton

BOX = 2.0


def start_point(seed: int, index: int) -> tuple:
    """Chart (1..8) and start vector for start number ``index``.

    Each start draws from its own generator keyed by (seed, index), so the
    set of starts does not depend on how they are split across workers.
    """
    chart = index % 8 + 1
    y = np.random.default_rng([seed, index]).uniform(-BOX, BOX, 7)
    return chart, y


def _run_chunk(invariant: str, seed: int, indices, max_iter: int, tol: float):
    by_chart: dict = {}
    for i in indices:
        chart, y = start_point(seed, i)
        by_chart.setdefault(chart, ([], []))
        by_chart[chart][0].append(i)
        by_chart[chart][1].append(y)
    found_idx, found_x = [], []
    for chart in sorted(by_chart):
        system = RealPolynomialSystem(invariant, chart)
        ids, starts = by_chart[chart]
        y, status, _ = batched_newton(np.array(starts), system, max_iter, tol)
        ok = status == 0
        found_idx.extend(np.asarray(ids)[ok])
        found_x.extend(system.lift(y[ok]))
    return found_idx, found_x


def _sphere_residuals(z, k):
    _, grad, _ = real_derivatives(z, k, "abs2", order=1)
    x = to_real(z)
    along = np.einsum("ni,ni->n", grad, x)
    return np.linalg.norm(grad - along[:, None] * x, axis=1)


def multistart_search(
    invariant="F3",
    n_starts: int = 20_000,
    seed: int = 0,
    n_jobs: int = 1,
    chunk_size: int = 2_000,
    max_iter: int = 100,
    tol: float = 1e-12,
    s7_tol: float = 1e-8,
    s15_tol: float = 1e-7,
    dedup_tol: float = 1e-6,
) -> list:
    """Search for nonvanishing stationary points and return one report per class.

    Start ``i`` uses chart ``i % 8 + 1`` and a start drawn uniformly from
    [-2, 2]^7. Converged Newton solutions are lifted to the unit sphere,
    filtered by their tangential residuals on S^7 and S^15, and grouped by
    fingerprint. Each class is reported at its canonical representative.
    Results are identical for any ``n_jobs``.
    """
    name = check_invariant(invariant)
    if name not in ("F3", "F4"):
        raise ValueError("multistart_search supports F3 and F4")
    k = invariant_order(name)
    n_starts = int(n_starts)
    if n_starts <= 0:
        return []
    chunks = [range(a, min(a + chunk_size, n_starts)) for a in range(0, n_starts, chunk_size)]
    results = Parallel(n_jobs=n_jobs)(
        delayed(_run_chunk)(name, seed, list(c), max_iter, tol) for c in chunks
    )
    idx = np.concatenate([np.asarray(r[0], dtype=int) for r in results])
    if idx.size == 0:
        return []
    x = np.vstack([np.asarray(r[1]).reshape(-1, 8) for r in results])
    order = np.argsort(idx, kind="stable")
    z = to_complex(x[order])
    z = z / np.linalg.norm(z, axis=1, keepdims=True)
    fps = fingerprint_array(z)
    col = {3: 1, 4: 2}[k]
    keep = (fps[:, col] > 1e-8) & (_sphere_residuals(z, k) < s7_tol)
    z, fps = z[keep], fps[keep]

    classes: list = []
    reps: list = []
    for zi, fi in zip(z, fps):
        if any(np.abs(fi - c).max() < dedup_tol for c in classes):
            continue
        classes.append(fi)
        reps.append(zi)

    reports = []
    for zi in reps:
        rep = verify_point(canonicalize(zi), name, tol=s7_tol, s15_tol=s15_tol)
        if rep.stationary:
            reports.append(rep)
    reports.sort(key=lambda r: tuple(np.round(fingerprint_array(r.point.z)[0], 9)))
    return reports
