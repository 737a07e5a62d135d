"""The Cartan subspace of four-qubit space and its finite symmetries.

A point of the Cartan subspace is a 4-vector ``z`` standing for
``z1 u1 + z2 u2 + z3 u3 + z4 u4``. The norm of the embedded state equals the
Hermitian norm of ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Sequence

import numpy as np
import scipy.linalg

from ._validation import ZeroStateError, as_complex_vector, check_nonzero
from .states import PureState, flatten, ket, single_qubit_deviation, t_transform

__all__ = [
    "CartanPoint",
    "CARTAN_BASIS",
    "cartan_embed",
    "cartan_project",
    "normal_form",
    "tau_eigenvalues",
    "CartanSymmetry",
    "weyl",
    "s4",
    "phase",
    "conjugation",
    "apply_symmetry",
    "symmetry_group",
    "canonicalize",
    "NotCriticalError",
]


class NotCriticalError(ValueError):
    """Input state is not critical (its one-qubit marginals are not maximally mixed)."""


def _u(terms):
    return 0.5 * sum(sign * ket(bits) for sign, bits in terms)


CARTAN_BASIS = np.array(
    [
        _u([(1, "0000"), (1, "0011"), (1, "1100"), (1, "1111")]),
        _u([(1, "0000"), (-1, "0011"), (-1, "1100"), (1, "1111")]),
        _u([(1, "0101"), (1, "0110"), (1, "1001"), (1, "1010")]),
        _u([(1, "0101"), (-1, "0110"), (-1, "1001"), (1, "1010")]),
    ]
).T
CARTAN_BASIS.setflags(write=False)

# kets carrying amplitude on the Cartan subspace
CARTAN_SUPPORT = tuple(int(b, 2) for b in ("0000", "0011", "1100", "1111", "0101", "0110", "1001", "1010"))


@dataclass(frozen=True, eq=False)
class CartanPoint:
    """Complex coordinates ``(z1, z2, z3, z4)`` with respect to u1..u4."""

    z: np.ndarray

    def __post_init__(self):
        z = as_complex_vector(self.z, 4, name="z").copy()
        z.setflags(write=False)
        object.__setattr__(self, "z", z)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.z))

    def normalize(self) -> "CartanPoint":
        return CartanPoint(self.z / check_nonzero(self.z, "Cartan point"))

    def to_state(self) -> PureState:
        return cartan_embed(self)

    def allclose(self, other, atol=1e-10) -> bool:
        return bool(np.allclose(self.z, as_point(other).z, rtol=0, atol=atol))

    def __iter__(self):
        return iter(self.z)

    def __repr__(self):
        coords = ", ".join(f"{c.real:.6g}{c.imag:+.6g}j" for c in self.z)
        return f"CartanPoint({coords})"


def as_point(p) -> CartanPoint:
    return p if isinstance(p, CartanPoint) else CartanPoint(np.asarray(p))


def cartan_embed(p) -> PureState:
    """The four-qubit state ``sum_i z_i u_i``."""
    return PureState(CARTAN_BASIS @ as_point(p).z)


def cartan_project(s) -> CartanPoint:
    """Orthogonal projection of a four-qubit state onto the Cartan subspace."""
    amps = s.amplitudes if isinstance(s, PureState) else np.asarray(s, dtype=complex)
    return CartanPoint(CARTAN_BASIS.conj().T @ amps)


def tau_eigenvalues(s, cluster_tol: float = 1e-8) -> np.ndarray:
    """Eigenvalues of ``R R^T`` with ``R = T flatten(s) T*``.

    The matrix is complex symmetric rather than Hermitian, so eigenvalues
    are read off a complex Schur form; eigenvalues within ``cluster_tol``
    (relative to the largest) are replaced by their cluster mean.
    """
    r = t_transform(flatten(s))
    tau = r @ r.T
    schur_form, _ = scipy.linalg.schur(tau, output="complex")
    mu = np.diag(schur_form).copy()
    scale = max(np.abs(mu).max(), np.finfo(float).tiny)
    order = np.argsort(-np.abs(mu), kind="stable")
    mu = mu[order]
    used = np.zeros(4, dtype=bool)
    for i in range(4):
        if used[i]:
            continue
        members = [j for j in range(i, 4) if not used[j] and abs(mu[j] - mu[i]) <= cluster_tol * scale]
        mu[members] = mu[members].mean()
        used[members] = True
    mu[np.abs(mu) < 1e-12 * scale] = 0.0
    return mu


def normal_form(s, require_critical: bool = True, tol: float = 1e-8) -> CartanPoint:
    """Cartan representative of a critical four-qubit state.

    Takes principal square roots of the eigenvalues of ``tau(R_s)`` as Cartan
    coordinates and returns the canonical orbit representative.
    """
    if not isinstance(s, PureState):
        s = PureState(np.asarray(s))
    if s.n != 4:
        raise ValueError(f"normal_form needs a four-qubit state, got n={s.n}")
    check_nonzero(s.amplitudes)
    if require_critical:
        dev = single_qubit_deviation(s)
        if dev >= tol:
            raise NotCriticalError(f"state is not critical (marginal deviation {dev:.3g})")
    mu = tau_eigenvalues(s)
    if not np.all(np.isfinite(mu)):
        raise np.linalg.LinAlgError("eigenvalue computation failed")
    if not np.any(mu):
        # nilpotent (only reachable for non-critical input)
        return CartanPoint(np.zeros(4))
    return canonicalize(np.sqrt(mu))


# -- finite symmetry group -------------------------------------------------

_SIGMA1 = np.diag([1.0, 1.0, 1.0, -1.0])
_SIGMA2 = 0.5 * np.array(
    [[1, 1, 1, 1],
     [1, 1, -1, -1],
     [1, -1, -1, 1],
     [1, -1, 1, -1]],
    dtype=float,
)
S4_MATRICES = {1: _SIGMA1, 2: _SIGMA2, 3: _SIGMA1}


@dataclass(frozen=True, eq=False)
class CartanSymmetry:
    """Map ``z -> exp(i t) M c(z)``, ``c`` being complex conjugation or the identity.

    ``M`` is a real 4x4 matrix. Composition is ``g @ h`` (apply ``h`` first).
    """

    matrix: np.ndarray
    conjugate: bool = False
    t: float = 0.0
    label: str = field(default="", compare=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float).copy()
        if m.shape != (4, 4):
            raise ValueError(f"symmetry matrix must be 4x4, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __call__(self, p) -> CartanPoint:
        return apply_symmetry(self, p)

    def __matmul__(self, other: "CartanSymmetry") -> "CartanSymmetry":
        # M1 c1(e^{i t2} M2 c2 z) = e^{i(t1 +- t2)} M1 M2 c1c2(z)
        t2 = -other.t if self.conjugate else other.t
        return CartanSymmetry(
            self.matrix @ other.matrix,
            self.conjugate != other.conjugate,
            (self.t + t2) % (2 * np.pi),
            label=f"{self.label}*{other.label}" if self.label and other.label else "",
        )

    def key(self):
        return (tuple(np.rint(2 * self.matrix).astype(int).ravel()), self.conjugate)


def weyl(perm: Sequence[int], signs: Sequence[int]) -> CartanSymmetry:
    """Weyl element ``z_i -> eps_i z_perm(i)`` with 1-based ``perm`` and even sign count."""
    perm = tuple(int(p) for p in perm)
    signs = tuple(int(e) for e in signs)
    if sorted(perm) != [1, 2, 3, 4]:
        raise ValueError(f"{perm} is not a permutation of 1..4")
    if any(e not in (1, -1) for e in signs) or len(signs) != 4:
        raise ValueError(f"signs must be four entries of +-1, got {signs}")
    if np.prod(signs) != 1:
        raise ValueError(f"Weyl signs must multiply to 1, got {signs}")
    m = np.zeros((4, 4))
    for i, (p, e) in enumerate(zip(perm, signs)):
        m[i, p - 1] = e
    return CartanSymmetry(m, label=f"w{perm}{signs}")


def s4(word: Sequence[int]) -> CartanSymmetry:
    """Image of the product ``sigma_{w1} sigma_{w2} ...`` of adjacent transpositions."""
    m = np.eye(4)
    for w in word:
        if w not in S4_MATRICES:
            raise ValueError(f"generator index must be 1, 2 or 3, got {w}")
        m = m @ S4_MATRICES[w]
    return CartanSymmetry(m, label="s" + "".join(str(w) for w in word))


def phase(t: float) -> CartanSymmetry:
    return CartanSymmetry(np.eye(4), t=float(t) % (2 * np.pi), label=f"e^i{t:.3g}")


def conjugation() -> CartanSymmetry:
    return CartanSymmetry(np.eye(4), conjugate=True, label="conj")


def apply_symmetry(g: CartanSymmetry, p) -> CartanPoint:
    z = as_point(p).z
    if g.conjugate:
        z = z.conj()
    return CartanPoint(np.exp(1j * g.t) * (g.matrix @ z))


def weyl_group() -> list:
    return [
        weyl(perm, signs)
        for perm in permutations((1, 2, 3, 4))
        for signs in product((1, -1), repeat=4)
        if np.prod(signs) == 1
    ]


_KEY_WEIGHTS = 5 ** np.arange(17, dtype=np.int64)


def _element_keys(mats, conj):
    # entries of 2M lie in {-2..2}: read them as base-5 digits, conjugation as the last one
    digits = np.rint(2 * mats).astype(np.int64).reshape(len(mats), 16) + 2
    return digits @ _KEY_WEIGHTS[:16] + conj.astype(np.int64) * _KEY_WEIGHTS[16]


@lru_cache(maxsize=1)
def symmetry_group(max_size: int = 10_000) -> tuple:
    """Closure of the Weyl group, the two S4 matrices and conjugation (phase excluded)."""
    generators = weyl_group() + [s4([1]), s4([2]), conjugation()]
    gen_m = np.stack([g.matrix for g in generators])
    gen_c = np.array([g.conjugate for g in generators])
    seen, first = np.unique(_element_keys(gen_m, gen_c), return_index=True)
    all_m, all_c = [gen_m[first]], [gen_c[first]]
    frontier_m, frontier_c = all_m[0], all_c[0]
    while len(frontier_m):
        # conjugation commutes with the real matrices, so (M, c)(N, d) = (MN, c xor d)
        prod_m = np.einsum("fij,gjk->fgik", frontier_m, gen_m).reshape(-1, 4, 4)
        prod_c = (frontier_c[:, None] ^ gen_c[None, :]).ravel()
        keys, idx = np.unique(_element_keys(prod_m, prod_c), return_index=True)
        fresh = ~np.isin(keys, seen)
        frontier_m, frontier_c = prod_m[idx[fresh]], prod_c[idx[fresh]]
        seen = np.union1d(seen, keys[fresh])
        all_m.append(frontier_m)
        all_c.append(frontier_c)
        if len(seen) > max_size:
            raise RuntimeError(f"symmetry group closure exceeded {max_size} elements")
    mats, conj = np.concatenate(all_m), np.concatenate(all_c)
    return tuple(CartanSymmetry(m, bool(c)) for m, c in zip(mats, conj))


@lru_cache(maxsize=1)
def _group_arrays():
    group = symmetry_group()
    mats = np.stack([g.matrix for g in group])
    conj = np.array([g.conjugate for g in group])
    return mats, conj


def orbit(p) -> np.ndarray:
    """All images of ``p`` under the finite symmetry group, shape (|G|, 4)."""
    z = as_point(p).z
    mats, conj = _group_arrays()
    zs = np.where(conj[:, None], z.conj()[None, :], z[None, :])
    return np.einsum("gij,gj->gi", mats, zs)


def fix_phase(z: np.ndarray, zero_tol: float = 1e-12) -> np.ndarray:
    """Rotate rows so their first coordinate above ``zero_tol * norm`` is real positive."""
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    norms = np.linalg.norm(z, axis=1, keepdims=True)
    big = np.abs(z) > zero_tol * norms
    first = np.argmax(big, axis=1)
    lead = z[np.arange(len(z)), first]
    rot = np.where(np.abs(lead) > 0, np.abs(lead) / np.where(lead == 0, 1, lead), 1)
    out = z * rot[:, None]
    out[~big] = 0.0
    return out


def canonicalize(p, tol: float = 1e-9, snap: float = 1e-13) -> CartanPoint:
    """Deterministic representative of the orbit of ``p`` under symmetries and phases.

    Every orbit element is phase-fixed (first nonzero coordinate real
    positive); the representative is the lexicographically largest by
    (Re z1, Im z1, Re z2, ...), comparing with tolerance ``tol * ||p||``.
    Real and imaginary parts below ``snap * ||p||`` are set to zero.
    """
    z = as_point(p).z
    norm = float(np.linalg.norm(z))
    if norm == 0.0:
        raise ZeroStateError("cannot canonicalize the zero point")
    cands = fix_phase(orbit(z))
    keys = np.empty((len(cands), 8))
    keys[:, 0::2] = cands.real
    keys[:, 1::2] = cands.imag
    alive = np.arange(len(cands))
    for col in range(8):
        vals = keys[alive, col]
        alive = alive[vals >= vals.max() - tol * norm]
        if len(alive) == 1:
            break
    best = cands[alive[0]]
    re, im = best.real.copy(), best.imag.copy()
    re[np.abs(re) < snap * norm] = 0.0
    im[np.abs(im) < snap * norm] = 0.0
    return CartanPoint(re + 1j * im)


__all__ += ["as_point", "orbit", "fix_phase", "weyl_group", "CARTAN_SUPPORT", "S4_MATRICES"]
