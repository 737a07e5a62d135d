"""Four-qubit SLOCC invariants, Cartan normal forms, stationary points and AME codes."""

from .cartan import CartanPoint, apply_symmetry, canonicalize, cartan_embed, normal_form, symmetry_group
from .codes import build_six_qubit, five_qubit_code, rains_reduce, registered_pairs, verify_pure_code
from .invariants import (
    InvariantFingerprint,
    eval_E,
    eval_F_cartan,
    eval_F_full,
    eval_G,
    eval_hdet_cartan,
    eval_hdet_from_generators,
    fingerprint,
)
from .states import NAMED_STATES, PureState, apply_local, named_state, permute_qubits

__version__ = "0.1.0"

__all__ = [
    "CartanPoint",
    "InvariantFingerprint",
    "NAMED_STATES",
    "PureState",
    "apply_local",
    "apply_symmetry",
    "build_six_qubit",
    "canonicalize",
    "cartan_embed",
    "eval_E",
    "eval_F_cartan",
    "eval_F_full",
    "eval_G",
    "eval_hdet_cartan",
    "eval_hdet_from_generators",
    "fingerprint",
    "five_qubit_code",
    "named_state",
    "normal_form",
    "permute_qubits",
    "rains_reduce",
    "registered_pairs",
    "symmetry_group",
    "verify_pure_code",
]
