"""Pure n-qubit states: amplitudes, flattenings, local actions and marginals.

Amplitudes are stored big-endian: index ``i`` encodes the ket
``|i1 i2 ... in>`` with qubit 1 as the most significant bit. Qubits are
labelled 1..n in every public function.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from ._validation import (
    ZeroStateError,
    as_complex_vector,
    check_nonzero,
    check_permutation,
    check_subset,
)

__all__ = [
    "PureState",
    "T_MATRIX",
    "NAMED_STATES",
    "named_state",
    "ket",
    "apply_local",
    "permute_qubits",
    "flatten",
    "unflatten",
    "t_transform",
    "partial_trace",
    "reduced_density_matrix",
    "single_qubit_deviation",
    "lie_algebra_deviation",
    "is_critical",
    "is_r_uniform",
    "uniformity_deviation",
    "random_state",
    "random_sl2",
    "random_su2",
    "random_local",
]


@dataclass(frozen=True, eq=False)
class PureState:
    """Unnormalized n-qubit state vector (2**n complex amplitudes)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = as_complex_vector(self.amplitudes, name="amplitudes")
        n = int(round(np.log2(amps.shape[0]))) if amps.shape[0] else -1
        if n < 1 or 2**n != amps.shape[0]:
            raise ValueError(f"amplitude count must be 2**n with n >= 1, got {amps.shape[0]}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int:
        return int(self.amplitudes.shape[0]).bit_length() - 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "PureState":
        norm = check_nonzero(self.amplitudes)
        return PureState(self.amplitudes / norm)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n)

    def conj(self) -> "PureState":
        return PureState(self.amplitudes.conj())

    def allclose(self, other: "PureState", atol: float = 1e-12) -> bool:
        return self.n == other.n and bool(np.allclose(self.amplitudes, other.amplitudes, rtol=0, atol=atol))

    def __repr__(self):
        return f"PureState(n={self.n}, norm={self.norm:.6g})"


def ket(bits: str) -> np.ndarray:
    """Computational basis vector for a bit string such as ``'0101'``."""
    vec = np.zeros(2 ** len(bits), dtype=complex)
    vec[int(bits, 2)] = 1.0
    return vec


def _combo(terms, scale=1.0):
    out = sum(coef * ket(bits) for coef, bits in terms)
    return PureState(scale * out)


_S2, _S3 = np.sqrt(2.0), np.sqrt(3.0)
_OMEGA = np.exp(2j * np.pi / 3)


def _build_named():
    w = _OMEGA
    return {
        "GHZ": _combo([(1, "0000"), (1, "1111")], 1 / _S2),
        "MP": _combo([(1, "0000"), (1, "0101"), (1, "1010"), (1, "1111")], 0.5),
        "YC": _combo(
            [(1, "0000"), (-1, "0011"), (-1, "0101"), (1, "0110"),
             (1, "1001"), (1, "1010"), (1, "1100"), (1, "1111")],
            1 / np.sqrt(8.0),
        ),
        "HS": _combo(
            [(1, "0011"), (1, "1100"), (w, "0101"), (w, "1010"), (w**2, "0110"), (w**2, "1001")],
            1 / np.sqrt(6.0),
        ),
        "BSSB": _combo(
            [(1, "0110"), (1, "1011"), (1j, "0010"), (1j, "1111"), (1 + 1j, "0101"), (1 + 1j, "1000")],
            1 / np.sqrt(12.0),
        ),
        "C1": _combo([(1, "0000"), (1, "0011"), (1, "1100"), (-1, "1111")], 0.5),
        "C2": _combo([(1, "0000"), (1, "0110"), (1, "1001"), (-1, "1111")], 0.5),
        "C3": _combo([(1, "0000"), (1, "0101"), (1, "1010"), (-1, "1111")], 0.5),
        "HD": _combo(
            [(1, "0001"), (1, "0010"), (1, "0100"), (1, "1000"), (_S2, "1111")], 1 / np.sqrt(6.0)
        ),
        "OS": _combo([(1, "0001"), (1, "0010"), (1, "1100"), (1, "1111")], 0.5),
        "L": _combo(
            [(1 + w, "0000"), (1 + w, "1111"), (1 - w, "0011"), (1 - w, "1100"),
             (w**2, "0101"), (w**2, "0110"), (w**2, "1001"), (w**2, "1010")],
            0.25,
        ),
        "M": _combo(
            [(1 + _S3 * 1j, "0000"), (1 + _S3 * 1j, "1111"), (-1 + _S3 * 1j, "0011"),
             (-1 + _S3 * 1j, "1100"), (2, "0101"), (2, "1010")],
            1 / np.sqrt(24.0),
        ),
    }


# Weight 1 on |0101> + |1010> with prefactor 1/sqrt(18) gives Cartan coordinates
# (2 sqrt3 i, 2, 1, 1): critical, but |F1| = 2, so not in the HS class. Weight 2
# gives (2 sqrt3 i, 2, 2, 2), which is.
M_WEIGHT_ONE = _combo(
    [(1 + _S3 * 1j, "0000"), (1 + _S3 * 1j, "1111"), (-1 + _S3 * 1j, "0011"),
     (-1 + _S3 * 1j, "1100"), (1, "0101"), (1, "1010")],
    1 / np.sqrt(18.0),
)


# printed prefactors of BSSB and L do not give unit norm; store normalized
NAMED_STATES = {name: s.normalize() for name, s in _build_named().items()}


def named_state(name: str) -> PureState:
    """Return one of the named four-qubit states, normalized.

    Known names: GHZ, MP, YC, HS, BSSB, C1, C2, C3, HD, OS, L, M.
    """
    try:
        return NAMED_STATES[name.upper()]
    except KeyError:
        raise KeyError(f"unknown state {name!r}; known: {sorted(NAMED_STATES)}") from None


def _coerce(s) -> PureState:
    return s if isinstance(s, PureState) else PureState(np.asarray(s))


def apply_local(gs: Sequence[np.ndarray], s) -> PureState:
    """Act with g1 (x) ... (x) gn on ``s``; ``gs[k]`` acts on qubit k+1."""
    s = _coerce(s)
    if len(gs) != s.n:
        raise ValueError(f"need {s.n} local matrices, got {len(gs)}")
    t = s.tensor()
    for axis, g in enumerate(gs):
        g = np.asarray(g, dtype=complex)
        if g.shape != (2, 2):
            raise ValueError(f"local operator {axis + 1} has shape {g.shape}, expected (2, 2)")
        t = np.moveaxis(np.tensordot(g, t, axes=([1], [axis])), 0, axis)
    return PureState(t.reshape(-1))


def permute_qubits(sigma: Sequence[int], s) -> PureState:
    """Permute tensor factors: ``sigma.(v1 (x) ... (x) vn) = v_sigma(1) (x) ... (x) v_sigma(n)``.

    ``sigma`` is given in one-line notation ``(sigma(1), ..., sigma(n))``.
    This is a right action: ``permute(s1, permute(s2, x)) == permute(s2 o s1, x)``.
    """
    s = _coerce(s)
    perm = check_permutation(sigma, s.n)
    t = np.transpose(s.tensor(), [p - 1 for p in perm])
    return PureState(np.ascontiguousarray(t).reshape(-1))


def transposition(n: int, i: int, j: int) -> tuple:
    """One-line notation of the transposition (i, j) on 1..n."""
    perm = list(range(1, n + 1))
    perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
    return tuple(perm)


def flatten(s) -> np.ndarray:
    """4x4 matrix with rows indexed by (i1, i2) and columns by (i3, i4)."""
    s = _coerce(s)
    if s.n != 4:
        raise ValueError(f"flatten needs a four-qubit state, got n={s.n}")
    return s.amplitudes.reshape(4, 4).copy()


def unflatten(m) -> PureState:
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    return PureState(m.reshape(-1))


T_MATRIX = np.array(
    [[1, 0, 0, 1],
     [0, 1j, 1j, 0],
     [0, -1, 1, 0],
     [1j, 0, 0, -1j]],
    dtype=complex,
) / np.sqrt(2.0)
T_MATRIX.setflags(write=False)


def t_transform(m) -> np.ndarray:
    """Change of coordinates ``R = T m T*`` under which SL2^4 acts through SO4 x SO4."""
    m = np.asarray(m, dtype=complex)
    return T_MATRIX @ m @ T_MATRIX.conj().T


def partial_trace(rho, subset, n: int | None = None) -> np.ndarray:
    """Trace out the qubits in ``subset`` (1-based) of an n-qubit operator."""
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    if rho.ndim != 2 or rho.shape[1] != dim:
        raise ValueError(f"operator must be square, got shape {rho.shape}")
    if n is None:
        n = dim.bit_length() - 1
    if dim != 2**n:
        raise ValueError(f"operator dimension {dim} is not 2**{n}")
    traced = check_subset(subset, n)
    keep = [q for q in range(1, n + 1) if q not in traced]
    t = rho.reshape((2,) * (2 * n))
    # einsum labels: ket axes 0..n-1, bra axes n..2n-1; traced pairs share a label
    letters = [chr(ord("a") + k) for k in range(2 * n)]
    for q in traced:
        letters[n + q - 1] = letters[q - 1]
    out = "".join(letters[q - 1] for q in keep) + "".join(letters[n + q - 1] for q in keep)
    red = np.einsum("".join(letters) + "->" + out, t)
    d = 2 ** len(keep)
    return red.reshape(d, d)


def reduced_density_matrix(s, keep) -> np.ndarray:
    """Marginal of ``|s><s| / ||s||^2`` on the qubits in ``keep``."""
    s = _coerce(s)
    norm = check_nonzero(s.amplitudes)
    keep = check_subset(keep, s.n, "keep")
    traced = [q for q in range(1, s.n + 1) if q not in keep]
    t = s.tensor() / norm
    axes = [q - 1 for q in traced]
    m = np.tensordot(t, t.conj(), axes=(axes, axes))
    d = 2 ** len(keep)
    return m.reshape(d, d)


def uniformity_deviation(s, r: int) -> dict:
    """Max-entry deviation of every r-qubit marginal from I / 2**r, keyed by subset."""
    s = _coerce(s)
    target = np.eye(2**r) / 2**r
    return {
        subset: float(np.abs(reduced_density_matrix(s, subset) - target).max())
        for subset in combinations(range(1, s.n + 1), r)
    }


def single_qubit_deviation(s) -> float:
    return max(uniformity_deviation(s, 1).values())


_SL2_BASIS = (
    np.array([[0, 1], [0, 0]], dtype=complex),
    np.array([[0, 0], [1, 0]], dtype=complex),
    np.array([[0.5, 0], [0, -0.5]], dtype=complex),
)


def lie_algebra_deviation(s) -> float:
    """Largest |<X phi, phi>| over the 12 basis elements of sl2 acting on one qubit.

    ``phi`` is ``s`` normalized. The basis (E, F, H/2) makes this equal to the
    max-entry deviation of the one-qubit marginals from I/2.
    """
    s = _coerce(s)
    phi = s.amplitudes / check_nonzero(s.amplitudes)
    worst = 0.0
    eye = np.eye(2)
    for q in range(s.n):
        for x in _SL2_BASIS:
            gs = [eye] * s.n
            gs[q] = x
            val = np.vdot(phi, apply_local(gs, phi).amplitudes)
            worst = max(worst, abs(val))
    return float(worst)


def is_critical(s, tol: float = 1e-9) -> bool:
    """True when every one-qubit marginal of ``s`` is within ``tol`` of I/2."""
    return single_qubit_deviation(s) < tol


def is_r_uniform(s, r: int, tol: float = 1e-9) -> bool:
    s = _coerce(s)
    if not 1 <= r <= s.n // 2:
        raise ValueError(f"r must lie in 1..{s.n // 2}, got {r}")
    check_nonzero(s.amplitudes)
    return max(uniformity_deviation(s, r).values()) < tol


def random_state(n: int, rng=None) -> PureState:
    rng = np.random.default_rng(rng)
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return PureState(v / np.linalg.norm(v))


def random_sl2(rng=None) -> np.ndarray:
    """Gaussian 2x2 complex matrix rescaled to determinant one."""
    rng = np.random.default_rng(rng)
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return g / np.sqrt(np.linalg.det(g))


def random_su2(rng=None) -> np.ndarray:
    rng = np.random.default_rng(rng)
    a = rng.normal(size=4)
    a /= np.linalg.norm(a)
    alpha, beta = a[0] + 1j * a[1], a[2] + 1j * a[3]
    return np.array([[alpha, -beta.conjugate()], [beta, alpha.conjugate()]])


def random_local(n: int, rng=None, group: str = "SL2") -> list:
    rng = np.random.default_rng(rng)
    draw = {"SL2": random_sl2, "SU2": random_su2}[group]
    return [draw(rng) for _ in range(n)]


__all__ += ["transposition", "ZeroStateError", "M_WEIGHT_ONE"]
