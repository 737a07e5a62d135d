"""Recompute the published tables: invariants of named states, stationary
points with their Hessian signatures, and the AME pair verification."""

from __future__ import annotations

import numpy as np

from .codes import build_six_qubit, principal_angles, cartan_code, rains_chain, registered_pairs
from .invariants import fingerprint, fingerprint_cartan
from .states import NAMED_STATES, single_qubit_deviation, uniformity_deviation
from .stationary import labelled_points, verify_point

__all__ = ["TABLE1_STATES", "MORE_TABLE_LABELS", "table1", "stationary_table", "more_table", "table4"]

TABLE1_STATES = ("GHZ", "MP", "C1", "HS", "HD", "BSSB")
MORE_TABLE_LABELS = tuple(f"phi{i}" for i in range(1, 15)) + tuple(f"psi{i}" for i in range(5, 14))
SIGNATURE_INVARIANTS = ("F3", "F4", "F6")


def table1() -> list:
    """|F1|, |F3|, |F4|, |F6|, |Hdet| of the six named representatives."""
    rows = []
    for name in TABLE1_STATES:
        fp = fingerprint(NAMED_STATES[name], with_hdet=True)
        rows.append({"state": name, **fp.to_dict()})
    return rows


def stationary_table(invariant) -> list:
    """Verification reports for the published F3 or F4 stationary points."""
    return [verify_point(p, invariant, label=label) for label, p in labelled_points(invariant).items()]


def _more_points() -> dict:
    pts = dict(labelled_points("F3"))
    pts.update({k: v for k, v in labelled_points("F4").items() if k in MORE_TABLE_LABELS})
    return {label: pts[label] for label in MORE_TABLE_LABELS}


def more_table(zero_tol_rel: float = 1e-6) -> list:
    """Invariant values and Hessian signatures for the 23 listed points.

    A signature cell is ``None`` when the point is not a nonvanishing
    stationary point of that invariant; the S7 residual is reported either way.
    """
    rows = []
    for label, p in _more_points().items():
        fp = fingerprint_cartan(p)
        row = {"point": label, **fp.to_dict()}
        for inv in SIGNATURE_INVARIANTS:
            rep = verify_point(p, inv, zero_tol_rel=zero_tol_rel, label=label)
            row[f"H({inv})"] = rep.signature
            row[f"residual({inv})"] = rep.residual_s7
        rows.append(row)
    return rows


def table4(tol: float = 1e-10, n_random: int = 50, seed: int = 0) -> list:
    """Per pair: uniformity of the six-qubit state, the reduction chain and constituent fingerprints."""
    rows = []
    a = cartan_code()
    for pair in registered_pairs():
        state = build_six_qubit(pair)
        chain = rains_chain(pair, tol, n_random, seed)
        fp0 = fingerprint_cartan(pair.phi0)
        fp1 = fingerprint_cartan(pair.phi1)
        rows.append({
            "pair": pair.name,
            "uniformity_deviation": max(uniformity_deviation(state, 3).values()),
            "zero_amplitudes": int(np.sum(state.amplitudes == 0)),
            "chain": [(list(code.parameters), ver.passed, ver.worst_deviation) for code, ver in chain],
            "final_angle": float(np.max(principal_angles(chain[-1][0], a))),
            "phi0_critical": single_qubit_deviation(pair.phi0.to_state()),
            "phi1_critical": single_qubit_deviation(pair.phi1.to_state()),
            "phi0": fp0.to_dict(),
            "phi1": fp1.to_dict(),
        })
    return rows
