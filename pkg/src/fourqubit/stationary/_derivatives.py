"""Closed-form derivatives of the symmetric generators.

On the Cartan subspace F_k = sum_{i<j} (zi - zj)^p + (zi + zj)^p with p = 2k,
so its holomorphic first and second derivatives are sums of monomials in the
pair differences and sums. Real-coordinate derivatives follow from the
Cauchy-Riemann relations: with coordinates (x1, y1, ..., x4, y4),
d/dx_m = f_m and d/dy_m = i f_m.

Everything here is batched over a leading axis.
"""

from itertools import combinations

import numpy as np

from ..invariants import F_IN_E, _JJ, _poly_partials, f_from_e, g_values

_PAIRS = tuple(combinations(range(4), 2))


def to_real(z):
    """Interleave complex coordinates as (x1, y1, x2, y2, ...)."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape[:-1] + (2 * z.shape[-1],))
    out[..., 0::2] = z.real
    out[..., 1::2] = z.imag
    return out


def to_complex(x):
    x = np.asarray(x, dtype=float)
    return x[..., 0::2] + 1j * x[..., 1::2]


def holomorphic_derivatives(z, k: int, order: int = 2):
    """Value, gradient (N, 4) and Hessian (N, 4, 4) of F_k on Cartan rows."""
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    p = 2 * k
    n = z.shape[0]
    f = np.zeros(n, dtype=complex)
    g = np.zeros((n, 4), dtype=complex)
    h = np.zeros((n, 4, 4), dtype=complex) if order >= 2 else None
    for i, j in _PAIRS:
        a = z[:, i] - z[:, j]
        b = z[:, i] + z[:, j]
        f += a**p + b**p
        a1 = p * a ** (p - 1)
        b1 = p * b ** (p - 1)
        g[:, i] += a1 + b1
        g[:, j] += b1 - a1
        if order >= 2:
            c = p * (p - 1)
            a2 = c * a ** (p - 2)
            b2 = c * b ** (p - 2)
            h[:, i, i] += a2 + b2
            h[:, j, j] += a2 + b2
            h[:, i, j] += b2 - a2
            h[:, j, i] += b2 - a2
    return f, g, h


def real_derivatives(z, k: int, objective: str = "abs2", order: int = 2):
    """Value, gradient (N, 8) and Hessian (N, 8, 8) in real coordinates.

    ``objective`` is ``"abs2"`` for |F_k|^2 or ``"real"`` for Re F_k.
    """
    f, g, h = holomorphic_derivatives(z, k, order)
    n = f.shape[0]
    d = np.empty((n, 8), dtype=complex)
    d[:, 0::2] = g
    d[:, 1::2] = 1j * g
    big = None
    if order >= 2:
        big = np.empty((n, 8, 8), dtype=complex)
        for a in range(2):
            for b in range(2):
                big[:, a::2, b::2] = (1j) ** (a + b) * h
    if objective == "real":
        return f.real, d.real, None if big is None else big.real
    if objective != "abs2":
        raise ValueError(f"unknown objective {objective!r}")
    value = np.abs(f) ** 2
    grad = 2 * np.real(np.conj(f)[:, None] * d)
    hess = None
    if order >= 2:
        hess = 2 * np.real(np.conj(d)[:, :, None] * d[:, None, :] + np.conj(f)[:, None, None] * big)
    return value, grad, hess


def g_gradients(amplitudes):
    """Holomorphic gradients of G0..G3 on C^16, shape (N, 4, 16)."""
    a = np.atleast_2d(np.asarray(amplitudes, dtype=complex))
    mats = a.reshape(-1, 4, 4)
    n = mats.shape[0]
    kk = _JJ.astype(float)
    out = np.empty((n, 4, 16), dtype=complex)
    # d det(A) / dA is the cofactor matrix
    out[:, 0] = _cofactors(mats).reshape(n, 16)
    m = mats @ kk @ np.swapaxes(mats, -1, -2) @ kk
    power = np.broadcast_to(np.eye(4), m.shape).astype(complex)
    at = np.swapaxes(mats, -1, -2)
    for i in (1, 2, 3):
        # d tr(M^i) = i tr(M^{i-1} dM), dM = dA K A^T K + A K dA^T K
        left = kk @ at @ kk @ power
        right = kk @ power @ mats @ kk
        grad = i * (np.swapaxes(left, -1, -2) + right)
        out[:, i] = grad.reshape(n, 16)
        power = power @ m
    return out


def _cofactors(mats):
    cof = np.empty_like(mats)
    for r in range(4):
        for c in range(4):
            minor = np.delete(np.delete(mats, r, axis=1), c, axis=2)
            cof[:, r, c] = (-1) ** (r + c) * np.linalg.det(minor)
    return cof


def full_state_gradient(amplitudes, k: int):
    """Value and holomorphic gradient (N, 16) of F_k on the full four-qubit space."""
    a = np.atleast_2d(np.asarray(amplitudes, dtype=complex))
    g = g_values(a)
    partials = _poly_partials(F_IN_E[k], g)
    value = f_from_e(k, g)
    grad = np.einsum("ni,nij->nj", partials, g_gradients(a))
    return value, grad
