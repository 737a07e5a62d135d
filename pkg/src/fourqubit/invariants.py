"""SLOCC invariants of four qubits.

On the Cartan subspace the Weyl-invariant generators are

    E0 = z1 z2 z3 z4,   Ei = z1^(2i) + z2^(2i) + z3^(2i) + z4^(2i)   (i = 1, 2, 3)

and on the full space the invariants G0..G3 built from the 4x4 flattening
restrict to them. The symmetric generators F1, F3, F4, F6 are stored as
integer polynomials in the E's; the hyperdeterminant is stored as an
integer polynomial in (G1, F3, F4, F6) over a common denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional

import numpy as np
from sympy.polys.domains import ZZ_I

from ._validation import check_invariant, check_nonzero
from .cartan import as_point
from .states import PureState

__all__ = [
    "F_IN_E",
    "HDET_IN_GENERATORS",
    "HDET_DENOMINATOR",
    "eval_E",
    "eval_G",
    "eval_F_cartan",
    "eval_F_pairs",
    "eval_F_full",
    "eval_hdet_cartan",
    "eval_hdet_from_generators",
    "InvariantFingerprint",
    "fingerprint",
    "fingerprint_cartan",
]

# monomial exponents (e0, e1, e2, e3) -> integer coefficient
F_IN_E = {
    1: {(0, 1, 0, 0): 6},
    3: {(0, 1, 1, 0): 30, (0, 0, 0, 1): -24},
    4: {
        (0, 4, 0, 0): -20,
        (0, 2, 1, 0): 120,
        (2, 0, 0, 0): 480,
        (0, 0, 2, 0): 10,
        (0, 1, 0, 1): -104,
    },
    6: {
        (0, 6, 0, 0): -148,
        (0, 4, 1, 0): 565,
        (2, 2, 0, 0): 5460,
        (0, 2, 2, 0): 540,
        (0, 3, 0, 1): -570,
        (2, 0, 1, 0): 2160,
        (0, 0, 3, 0): -15,
        (0, 1, 1, 1): -610,
        (0, 0, 0, 2): 244,
    },
}

# monomial exponents (g1, f3, f4, f6) -> integer coefficient
HDET_IN_GENERATORS = {
    (12, 0, 0, 0): -23794560,
    (9, 1, 0, 0): 14450400,
    (8, 0, 1, 0): -6828300,
    (6, 2, 0, 0): -2211120,
    (5, 1, 1, 0): 2043360,
    (6, 0, 0, 1): 563760,
    (3, 3, 0, 0): 5376,
    (4, 0, 2, 0): -484380,
    (2, 2, 1, 0): 6552,
    (3, 1, 0, 1): -172800,
    (0, 4, 0, 0): -40,
    (1, 1, 2, 0): -5832,
    (2, 0, 1, 1): 81000,
    (0, 0, 3, 0): 729,
    (0, 2, 0, 1): 720,
    (0, 0, 0, 2): -3240,
}
HDET_DENOMINATOR = 314928000

_J = np.array([[0, -1], [1, 0]])
_JJ = np.kron(_J, _J)


def _eval_poly(table, values):
    """Evaluate an integer polynomial at complex (batched) values.

    ``values`` has the variables on its last axis. Terms are summed with
    numpy's pairwise reduction.
    """
    values = np.asarray(values, dtype=complex)
    terms = []
    for exps, coef in table.items():
        term = np.full(values.shape[:-1], float(coef), dtype=complex)
        for var, e in enumerate(exps):
            if e:
                term = term * values[..., var] ** e
        terms.append(term)
    return np.sum(np.stack(terms, axis=-1), axis=-1)


def _poly_partials(table, values):
    """Partial derivatives of an integer polynomial, stacked on the last axis."""
    values = np.asarray(values, dtype=complex)
    nvar = values.shape[-1]
    out = []
    for v in range(nvar):
        d = {}
        for exps, coef in table.items():
            if exps[v]:
                e = list(exps)
                e[v] -= 1
                d[tuple(e)] = d.get(tuple(e), 0) + coef * exps[v]
        out.append(_eval_poly(d, values) if d else np.zeros(values.shape[:-1], dtype=complex))
    return np.stack(out, axis=-1)


def e_values(z) -> np.ndarray:
    """(E0, E1, E2, E3) for Cartan coordinates on the last axis."""
    z = np.asarray(z, dtype=complex)
    sq = z * z
    return np.stack(
        [np.prod(z, axis=-1), sq.sum(-1), (sq**2).sum(-1), (sq**3).sum(-1)], axis=-1
    )


def f_from_e(k, e):
    return _eval_poly(F_IN_E[k], e)


def eval_E(p) -> tuple:
    """Weyl-invariant generators (E0, E1, E2, E3) at a Cartan point."""
    return tuple(complex(v) for v in e_values(as_point(p).z))


def g_values(amplitudes) -> np.ndarray:
    """(G0, G1, G2, G3) for four-qubit amplitude vectors on the last axis."""
    a = np.asarray(amplitudes, dtype=complex)
    mats = a.reshape(a.shape[:-1] + (4, 4))
    m = mats @ _JJ @ np.swapaxes(mats, -1, -2) @ _JJ
    m2 = m @ m
    tr = lambda x: np.trace(x, axis1=-2, axis2=-1)  # noqa: E731
    return np.stack([np.linalg.det(mats), tr(m), tr(m2), tr(m2 @ m)], axis=-1)


def eval_G(s) -> tuple:
    """SLOCC invariants G0 = det(A), Gi = tr((A K A^T K)^i) with K = J (x) J."""
    amps = s.amplitudes if isinstance(s, PureState) else np.asarray(s)
    if np.shape(amps)[-1] != 16:
        raise ValueError("eval_G needs a four-qubit state")
    return tuple(complex(v) for v in g_values(amps))


def eval_F_pairs(p, k: int) -> complex:
    """Sum over pairs of (zi - zj)^(2k) + (zi + zj)^(2k)."""
    z = as_point(p).z
    return complex(sum((z[i] - z[j]) ** (2 * k) + (z[i] + z[j]) ** (2 * k) for i, j in combinations(range(4), 2)))


def eval_F_cartan(p) -> tuple:
    """(F1, F3, F4, F6) at a Cartan point, via the E-polynomial expressions."""
    e = e_values(as_point(p).z)
    return tuple(complex(f_from_e(k, e)) for k in (1, 3, 4, 6))


def eval_F_full(s) -> tuple:
    """(F1, F3, F4, F6) of a four-qubit state, substituting Ei <- Gi."""
    amps = s.amplitudes if isinstance(s, PureState) else np.asarray(s)
    g = g_values(amps)
    return tuple(complex(f_from_e(k, g)) for k in (1, 3, 4, 6))


def eval_hdet_cartan(p) -> complex:
    """Hyperdeterminant on the Cartan subspace: prod_{i<j} (zi^2 - zj^2)^2."""
    sq = as_point(p).z ** 2
    out = 1.0 + 0j
    for i, j in combinations(range(4), 2):
        out *= (sq[i] - sq[j]) ** 2
    return complex(out)


# -- exact evaluation -------------------------------------------------------

def _scaled_gaussian(amplitudes):
    """Exact Gaussian-integer images of float amplitudes and the shared power of two."""
    parts = [Fraction(float(x)) for a in amplitudes for x in (a.real, a.imag)]
    shift = max(f.denominator.bit_length() - 1 for f in parts)
    ints = [int(f * (1 << shift)) for f in parts]
    return [ZZ_I(ints[2 * i], ints[2 * i + 1]) for i in range(len(amplitudes))], shift


def _gdet(m):
    total = ZZ_I(0, 0)
    for perm in permutations(range(4)):
        inv = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        term = ZZ_I(1, 0)
        for r, c in enumerate(perm):
            term = term * m[r][c]
        total = total - term if inv % 2 else total + term
    return total


def _gmatmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(4)), ZZ_I(0, 0)) for j in range(4)] for i in range(4)]


def _exact_g(amplitudes):
    vals, shift = _scaled_gaussian(amplitudes)
    a = [vals[4 * r: 4 * r + 4] for r in range(4)]
    jj = [[ZZ_I(int(v), 0) for v in row] for row in _JJ]
    at = [[a[c][r] for c in range(4)] for r in range(4)]
    m = _gmatmul(_gmatmul(_gmatmul(a, jj), at), jj)
    m2 = _gmatmul(m, m)
    m3 = _gmatmul(m2, m)
    tr = lambda x: sum((x[i][i] for i in range(4)), ZZ_I(0, 0))  # noqa: E731
    return [_gdet(a), tr(m), tr(m2), tr(m3)], shift


def _exact_poly(table, values):
    total = ZZ_I(0, 0)
    for exps, coef in table.items():
        term = ZZ_I(coef, 0)
        for v, e in zip(values, exps):
            if e:
                term = term * v**e
        total = total + term
    return total


def eval_hdet_from_generators(s, exact: bool = True) -> complex:
    """Hyperdeterminant through its expression in G1 = F1/6, F3, F4, F6.

    The expression cancels heavily, so by default the float amplitudes are
    converted to exact Gaussian integers (times a power of two) and the whole
    chain G -> F -> Hdet is evaluated in integer arithmetic, rounding once at
    the end. ``exact=False`` evaluates in double precision.
    """
    amps = s.amplitudes if isinstance(s, PureState) else np.asarray(s, dtype=complex)
    if not exact:
        g = g_values(amps)
        gens = np.stack([g[..., 1], f_from_e(3, g), f_from_e(4, g), f_from_e(6, g)], axis=-1)
        return complex(_eval_poly(HDET_IN_GENERATORS, gens) / HDET_DENOMINATOR)
    g, shift = _exact_g(amps)
    gens = [g[1], _exact_poly(F_IN_E[3], g), _exact_poly(F_IN_E[4], g), _exact_poly(F_IN_E[6], g)]
    num = _exact_poly(HDET_IN_GENERATORS, gens)
    den = HDET_DENOMINATOR << (24 * shift)
    return complex(float(Fraction(int(num.x), den)), float(Fraction(int(num.y), den)))


# -- fingerprints -----------------------------------------------------------

@dataclass(frozen=True)
class InvariantFingerprint:
    """Absolute values of F1, F3, F4, F6 (and optionally Hdet) on a unit state."""

    f1: float
    f3: float
    f4: float
    f6: float
    hdet: Optional[float] = None

    def as_array(self) -> np.ndarray:
        return np.array([self.f1, self.f3, self.f4, self.f6])

    def to_dict(self) -> dict:
        out = {"F1": self.f1, "F3": self.f3, "F4": self.f4, "F6": self.f6}
        if self.hdet is not None:
            out["Hdet"] = self.hdet
        return out

    def get(self, name: str) -> float:
        return getattr(self, check_invariant(name).lower())

    def isclose(self, other: "InvariantFingerprint", tol: float = 1e-8) -> bool:
        return bool(np.abs(self.as_array() - other.as_array()).max() <= tol)


def fingerprint(s, with_hdet: bool = False) -> InvariantFingerprint:
    """Fingerprint of ``s / ||s||``."""
    amps = s.amplitudes if isinstance(s, PureState) else np.asarray(s, dtype=complex)
    phi = amps / check_nonzero(amps)
    f = eval_F_full(phi)
    hdet = abs(eval_hdet_from_generators(phi)) if with_hdet else None
    return InvariantFingerprint(*(abs(v) for v in f), hdet=hdet)


def fingerprint_cartan(p, with_hdet: bool = False) -> InvariantFingerprint:
    """Fingerprint of a Cartan point, evaluated with the restricted formulas."""
    z = as_point(p).z
    z = z / check_nonzero(z, "Cartan point")
    f = eval_F_cartan(z)
    hdet = abs(eval_hdet_cartan(z)) if with_hdet else None
    return InvariantFingerprint(*(abs(v) for v in f), hdet=hdet)


def fingerprint_array(z) -> np.ndarray:
    """Batched (|F1|, |F3|, |F4|, |F6|) for normalized Cartan rows."""
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    z = z / np.linalg.norm(z, axis=1, keepdims=True)
    e = e_values(z)
    return np.stack([np.abs(f_from_e(k, e)) for k in (1, 3, 4, 6)], axis=-1)


__all__ += ["e_values", "g_values", "f_from_e", "fingerprint_array"]
