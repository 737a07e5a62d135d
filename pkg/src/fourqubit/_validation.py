"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

from itertools import permutations

import numpy as np

INVARIANT_NAMES = ("F1", "F3", "F4", "F6")


def as_complex_vector(x, length=None, name="input"):
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    arr = arr.astype(np.complex128)
    if length is not None and arr.shape[0] != length:
        raise ValueError(f"{name} must have length {length}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_array_2d(X, n_features, name="X"):
    """Validate a batch of complex row vectors.

    A single vector is promoted to a one-row batch.
    """
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2D (n_samples, {n_features}), got shape {arr.shape}")
    if arr.shape[1] != n_features:
        raise ValueError(f"{name} must have {n_features} columns, got {arr.shape[1]}")
    arr = arr.astype(np.complex128)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_nonzero(vec, name="state", atol=0.0):
    norm = float(np.linalg.norm(vec))
    if norm <= atol:
        raise ZeroStateError(f"{name} is the zero vector")
    return norm


def check_invariant(name):
    key = str(name).upper()
    if key not in INVARIANT_NAMES:
        raise ValueError(f"unknown invariant {name!r}; expected one of {INVARIANT_NAMES}")
    return key


def invariant_order(name):
    """Half-degree k of the symmetric generator F_k."""
    return int(check_invariant(name)[1:])


def check_subset(subset, n, name="subset"):
    """Return a sorted tuple of 1-based qubit labels, validated against n."""
    try:
        items = tuple(int(q) for q in subset)
    except TypeError:
        items = (int(subset),)
    if not items:
        raise ValueError(f"{name} must be nonempty")
    if len(set(items)) != len(items):
        raise ValueError(f"{name} has repeated qubits: {items}")
    bad = [q for q in items if not 1 <= q <= n]
    if bad:
        raise ValueError(f"{name} has qubits outside 1..{n}: {bad}")
    return tuple(sorted(items))


def check_permutation(sigma, n):
    """Validate a permutation given in one-line notation (sigma(1), ..., sigma(n))."""
    items = tuple(int(v) for v in sigma)
    if sorted(items) != list(range(1, n + 1)):
        raise ValueError(f"{items} is not a permutation of 1..{n}")
    return items


def all_permutations(n):
    return [tuple(p) for p in permutations(range(1, n + 1))]


class ZeroStateError(ValueError):
    """Raised when an operation needs a nonzero vector."""
