"""Six-qubit AME states from pairs of Cartan critical points, and pure-code checks.

A pair (P0, P1) of four-qubit Cartan vectors gives the six-qubit state

    |00> P0 + |01> P1 - |10> conj(P1) + |11> conj(P0)

(normalized). When it is 3-uniform, tracing out the first qubit leaves a
((5, 2, 3)) pure code and tracing once more gives the ((4, 4, 2)) code equal
to the Cartan subspace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.linalg import subspace_angles

from .cartan import CARTAN_BASIS, CartanPoint, cartan_embed
from ._validation import check_nonzero
from .states import PureState, partial_trace, reduced_density_matrix

__all__ = [
    "AMEPair",
    "CodeError",
    "CodeSubspace",
    "CodeVerification",
    "build_six_qubit",
    "cartan_code",
    "five_qubit_code",
    "get_pair",
    "principal_angles",
    "rains_chain",
    "rains_reduce",
    "registered_pairs",
    "six_qubit_code",
    "v_to_u",
    "verify_pure_code",
]


class CodeError(ValueError):
    """A code subspace is malformed or a reduction produced the wrong rank."""


def v_to_u(coeffs) -> CartanPoint:
    """Convert coefficients on v1 = u1+u2, v2 = u1-u2, v3 = u3+u4, v4 = u3-u4 to u-coordinates."""
    c = np.asarray(coeffs, dtype=complex)
    if c.shape != (4,):
        raise ValueError("expected four coefficients")
    return CartanPoint(np.array([c[0] + c[1], c[0] - c[1], c[2] + c[3], c[2] - c[3]]))


@dataclass(frozen=True)
class AMEPair:
    """Two Cartan points whose combination is a six-qubit AME state."""

    name: str
    v0: tuple
    v1: tuple

    @property
    def phi0(self) -> CartanPoint:
        return v_to_u(self.v0)

    @property
    def phi1(self) -> CartanPoint:
        return v_to_u(self.v1)


def registered_pairs() -> list:
    """The five known pairs, with coefficients in the v-basis (unnormalized)."""
    s2, s3, s6 = np.sqrt([2.0, 3.0, 6.0])
    w = np.exp(1j * np.pi / 3)
    e = np.exp(1j * np.pi / 4)
    return [
        AMEPair("pair1", (s2 + 1j, s2 - 1j, 1j, 1j), (-1j, 1j, s2 + 1j, -s2 + 1j)),
        AMEPair("pair2", (s3 + 1j, s3 - 1j, 2j, 0), (-s2 * w, s2 * w, s2 * w, s2 * (1 + np.conj(w)))),
        AMEPair(
            "pair3",
            (2 * s2 - s3 + 1j, s3 - 1j, s3 - s2 + s6 * 1j - 1j, s3 - s2 - s6 * 1j + 3j),
            (s2 - s3 + s6 * 1j - 1j, s3 - s2 + s6 * 1j - 3j, 2 * s2 - s3 - 1j, -s3 - 1j),
        ),
        AMEPair("pair4", (e, np.conj(e), 0, 0), (0, 0, np.conj(e), -e)),
        AMEPair("pair5", (e, np.conj(e), 1, -1j), (e, np.conj(e), -1, 1j)),
    ]


def get_pair(name: str) -> AMEPair:
    for pair in registered_pairs():
        if pair.name == str(name).lower():
            return pair
    raise KeyError(f"unknown pair {name!r}; expected pair1..pair5")


def _blocks(pair: AMEPair):
    p0 = cartan_embed(pair.phi0).amplitudes
    p1 = cartan_embed(pair.phi1).amplitudes
    return p0, p1


def build_six_qubit(pair: AMEPair) -> PureState:
    p0, p1 = _blocks(pair)
    v = np.concatenate([p0, p1, -p1.conj(), p0.conj()])
    return PureState(v / np.linalg.norm(v))


@dataclass(frozen=True, eq=False)
class CodeSubspace:
    """Orthonormal basis of a K-dimensional code in n-qubit space with claimed distance d."""

    n: int
    basis: tuple
    claimed_distance: int
    name: str = ""

    def __post_init__(self):
        basis = tuple(b if isinstance(b, PureState) else PureState(b) for b in self.basis)
        if not basis:
            raise CodeError("a code needs at least one basis vector")
        if any(b.n != self.n for b in basis):
            raise CodeError(f"basis vectors must live on {self.n} qubits")
        m = np.column_stack([b.amplitudes for b in basis])
        gram = m.conj().T @ m
        if np.abs(np.diag(gram) - 1).max() > 1e-12:
            raise CodeError("basis vectors are not unit vectors")
        off = gram - np.diag(np.diag(gram))
        if off.size and np.abs(off).max() > 1e-10:
            raise CodeError(f"basis is not orthogonal (max overlap {np.abs(off).max():.2e})")
        object.__setattr__(self, "basis", basis)

    @property
    def K(self) -> int:
        return len(self.basis)

    @property
    def parameters(self) -> tuple:
        return (self.n, self.K, self.claimed_distance)

    def matrix(self) -> np.ndarray:
        """Basis vectors as columns."""
        return np.column_stack([b.amplitudes for b in self.basis])

    def projector(self) -> np.ndarray:
        m = self.matrix()
        return m @ m.conj().T


def six_qubit_code(pair: AMEPair) -> CodeSubspace:
    return CodeSubspace(6, (build_six_qubit(pair),), 4, f"{pair.name}-6")


def five_qubit_code(pair: AMEPair) -> CodeSubspace:
    """Span of |0>P0 + |1>P1 and -|0>conj(P1) + |1>conj(P0), claimed ((5, 2, 3))."""
    p0, p1 = _blocks(pair)
    zero = np.concatenate([p0, p1])
    one = np.concatenate([-p1.conj(), p0.conj()])
    zero = zero / check_nonzero(zero)
    one = one / check_nonzero(one)
    return CodeSubspace(5, (PureState(zero), PureState(one)), 3, f"{pair.name}-5")


def cartan_code() -> CodeSubspace:
    """The Cartan subspace as a ((4, 4, 2)) code."""
    return CodeSubspace(4, tuple(PureState(CARTAN_BASIS[:, i]) for i in range(4)), 2, "cartan")


def rains_reduce(code: CodeSubspace, rel_tol: float = 1e-10) -> CodeSubspace:
    """Image of the first-qubit partial trace of the code projector.

    A pure ((n, K, d)) code maps to a pure ((n-1, 2K, d-1)) code. Any other
    rank means the input was not pure and raises :class:`CodeError`.
    """
    if code.n < 2 or code.claimed_distance < 2:
        raise CodeError("reduction needs n >= 2 and distance >= 2")
    traced = partial_trace(code.projector(), [1], code.n)
    vals, vecs = np.linalg.eigh(traced)
    keep = vals > rel_tol * vals.max()
    rank = int(keep.sum())
    if rank != 2 * code.K:
        raise CodeError(f"traced operator has rank {rank}, expected {2 * code.K}")
    basis = tuple(PureState(vecs[:, i]) for i in np.flatnonzero(keep)[::-1])
    return CodeSubspace(code.n - 1, basis, code.claimed_distance - 1, f"{code.name}-reduced")


@dataclass
class CodeVerification:
    """Outcome of a purity check: every tested vector should be (d-1)-uniform."""

    parameters: tuple
    passed: bool
    worst_deviation: float
    n_vectors: int
    tol: float
    per_subset: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "parameters": list(self.parameters),
            "passed": self.passed,
            "worst_deviation": self.worst_deviation,
            "n_vectors": self.n_vectors,
            "tol": self.tol,
            "per_subset": {",".join(map(str, k)): v for k, v in sorted(self.per_subset.items())},
        }


def verify_pure_code(code: CodeSubspace, tol: float = 1e-9, n_random: int = 50, seed: int = 0) -> CodeVerification:
    """Check (d-1)-uniformity of the basis and of ``n_random`` random unit vectors in the span.

    Random vectors use complex Gaussian coefficients drawn from ``seed``.
    """
    r = code.claimed_distance - 1
    if r < 1:
        raise CodeError("purity needs claimed distance >= 2")
    m = code.matrix()
    rng = np.random.default_rng(seed)
    coeffs = rng.normal(size=(n_random, code.K)) + 1j * rng.normal(size=(n_random, code.K))
    vectors = [b.amplitudes for b in code.basis] + [m @ c / np.linalg.norm(c) for c in coeffs]
    target = np.eye(2**r) / 2**r
    per_subset = {}
    for subset in combinations(range(1, code.n + 1), r):
        worst = 0.0
        for v in vectors:
            dev = np.abs(reduced_density_matrix(v, subset) - target).max()
            worst = max(worst, float(dev))
        per_subset[subset] = worst
    worst = max(per_subset.values())
    return CodeVerification(code.parameters, worst < tol, worst, len(vectors), tol, per_subset)


def principal_angles(a, b) -> np.ndarray:
    """Principal angles between two codes (or matrices whose columns span subspaces)."""
    ma = a.matrix() if isinstance(a, CodeSubspace) else np.asarray(a)
    mb = b.matrix() if isinstance(b, CodeSubspace) else np.asarray(b)
    return subspace_angles(ma, mb)


def rains_chain(pair: AMEPair, tol: float = 1e-9, n_random: int = 50, seed: int = 0) -> list:
    """Codes ((6,1,4)) -> ((5,2,3)) -> ((4,4,2)) with their purity checks."""
    code = six_qubit_code(pair)
    out = [(code, verify_pure_code(code, tol, n_random, seed))]
    for _ in range(2):
        code = rains_reduce(code)
        out.append((code, verify_pure_code(code, tol, n_random, seed)))
    return out
