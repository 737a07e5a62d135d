"""Command-line front end.

Exit codes: 0 success, 2 verification failure, 3 input error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from .._validation import ZeroStateError
from ..cartan import NotCriticalError, normal_form
from ..codes import (
    build_six_qubit,
    cartan_code,
    five_qubit_code,
    get_pair,
    principal_angles,
    rains_chain,
    registered_pairs,
    six_qubit_code,
    verify_pure_code,
)
from ..invariants import fingerprint, fingerprint_cartan
from ..states import NAMED_STATES, uniformity_deviation
from ..stationary import lookup_point, multistart_search, verify_point
from ..tables import more_table, stationary_table, table1, table4
from .grammar import PointSyntaxError, parse_point
from .io import InputError, load_point, load_state, render_csv, render_json, render_text

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_INPUT = 3

FP_COLUMNS = ["F1", "F3", "F4", "F6"]
REPORT_COLUMNS = ["point", *FP_COLUMNS, "invariant", "value", "residual_s7", "residual_s15", "signature"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


class Result:
    def __init__(self, payload, rows, columns, code=EXIT_OK):
        self.payload = payload
        self.rows = rows
        self.columns = columns
        self.code = code


def _state_from_args(args):
    if args.name is not None:
        key = args.name.upper()
        if key not in NAMED_STATES:
            raise InputError(f"unknown state {args.name!r}; known: {', '.join(sorted(NAMED_STATES))}")
        return key, NAMED_STATES[key]
    return args.file, load_state(args.file)


def cmd_invariants(args) -> Result:
    label, s = _state_from_args(args)
    if s.n != 4:
        raise InputError(f"{label}: expected a four-qubit state, got n={s.n}")
    fp = fingerprint(s, with_hdet=True).to_dict()
    row = {"state": label, **fp}
    return Result({"state": label, "invariants": fp}, [row], ["state", *FP_COLUMNS, "Hdet"])


def cmd_normal_form(args) -> Result:
    label, s = _state_from_args(args)
    if s.n != 4:
        raise InputError(f"{label}: expected a four-qubit state, got n={s.n}")
    tol = args.tol if args.tol is not None else 1e-8
    z = normal_form(s, require_critical=not args.allow_noncritical, tol=tol).z
    fp = fingerprint_cartan(z).to_dict()
    row = {"state": label, **{f"z{i + 1}": complex(v) for i, v in enumerate(z)}, **fp}
    payload = {"state": label, "z": [[float(v.real), float(v.imag)] for v in z], "invariants": fp}
    return Result(payload, [row], ["state", "z1", "z2", "z3", "z4", *FP_COLUMNS])


def _report_row(rep):
    fp = fingerprint_cartan(rep.point).to_dict()
    return {"point": rep.label, **fp, "invariant": rep.invariant_name, "value": rep.value,
            "residual_s7": rep.residual_s7, "residual_s15": rep.residual_s15, "signature": rep.signature}


def _points_from_args(args):
    if args.point is not None:
        if args.point.strip().lower() == "random":
            rng = np.random.default_rng(args.seed)
            z = rng.normal(size=4) + 1j * rng.normal(size=4)
            return [("random", z / np.linalg.norm(z))]
        try:
            return [(args.point, np.array(parse_point(args.point)))]
        except PointSyntaxError as exc:
            raise InputError(str(exc)) from exc
    if args.point_file is not None:
        return [(args.point_file, load_point(args.point_file))]
    try:
        return [(args.label, lookup_point(args.label).z)]
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from exc


def cmd_verify(args) -> Result:
    tol = args.tol if args.tol is not None else 1e-8
    if args.table is not None:
        reports = stationary_table(args.table)
        if args.tol is not None:
            reports = [verify_point(r.point, args.table, tol=tol, label=r.label) for r in reports]
    else:
        if args.invariant is None:
            raise InputError("--invariant is required with --point, --point-file or --label")
        reports = []
        for label, z in _points_from_args(args):
            if not np.any(z):
                raise InputError("the zero vector is not a point of the sphere")
            reports.append(verify_point(z, args.invariant, tol=tol, label=label))
    code = EXIT_OK if all(r.stationary for r in reports) else EXIT_VERIFY
    payload = {"reports": [r.to_dict() for r in reports]}
    return Result(payload, [_report_row(r) for r in reports], REPORT_COLUMNS, code)


def cmd_search(args) -> Result:
    if args.starts < 0:
        raise InputError("--starts must be nonnegative")
    reports = multistart_search(args.invariant, args.starts, args.seed, n_jobs=args.jobs)
    reports = [dataclasses.replace(r, label=f"class{i + 1}") for i, r in enumerate(reports)]
    payload = {"invariant": args.invariant, "n_starts": args.starts, "seed": args.seed,
               "classes": [r.to_dict() for r in reports]}
    return Result(payload, [_report_row(r) for r in reports], REPORT_COLUMNS)


def cmd_codes(args) -> Result:
    tol = args.tol if args.tol is not None else 1e-10
    if args.all:
        pairs = registered_pairs()
    else:
        try:
            pairs = [get_pair(args.pair)]
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from exc
    rows, payload = [], []
    for pair in pairs:
        state = build_six_qubit(pair)
        entry = {"pair": pair.name, "uniformity_deviation": max(uniformity_deviation(state, 3).values())}
        if args.chain:
            chain = rains_chain(pair, tol, args.random_vectors, args.seed)
            angle5 = float(np.max(principal_angles(chain[1][0], five_qubit_code(pair))))
            angle4 = float(np.max(principal_angles(chain[2][0], cartan_code())))
            entry["levels"] = [v.to_dict() for _, v in chain]
            entry["angle_to_five_qubit_code"] = angle5
            entry["angle_to_cartan_subspace"] = angle4
            checks = [v for _, v in chain]
            ok_angles = angle5 < 1e-8 and angle4 < 1e-8
        else:
            checks = [verify_pure_code(six_qubit_code(pair), tol, args.random_vectors, args.seed),
                      verify_pure_code(five_qubit_code(pair), tol, args.random_vectors, args.seed)]
            entry["levels"] = [v.to_dict() for v in checks]
            ok_angles = True
        entry["passed"] = all(v.passed for v in checks) and ok_angles
        payload.append(entry)
        for v in checks:
            n, k, d = v.parameters
            rows.append({"pair": pair.name, "code": f"(({n},{k},{d}))", "passed": v.passed,
                         "worst_deviation": v.worst_deviation})
    code = EXIT_OK if all(e["passed"] for e in payload) else EXIT_VERIFY
    return Result({"pairs": payload}, rows, ["pair", "code", "passed", "worst_deviation"], code)


def cmd_reproduce(args) -> Result:
    t = args.table
    if t == "1":
        rows = table1()
        return Result({"table": "1", "rows": rows}, rows, ["state", *FP_COLUMNS, "Hdet"])
    if t in ("2", "3"):
        reports = stationary_table("F3" if t == "2" else "F4")
        code = EXIT_OK if all(r.stationary for r in reports) else EXIT_VERIFY
        return Result({"table": t, "rows": [r.to_dict() for r in reports]},
                      [_report_row(r) for r in reports], REPORT_COLUMNS, code)
    if t == "more":
        rows = more_table()
        cols = ["point", *FP_COLUMNS, "H(F3)", "H(F4)", "H(F6)"]
        return Result({"table": "more", "rows": [{c: r[c] for c in cols} for r in rows]}, rows, cols)
    rows = table4(tol=args.tol if args.tol is not None else 1e-10, seed=args.seed)
    flat = []
    for r in rows:
        flat.append({"pair": r["pair"], "uniformity_deviation": r["uniformity_deviation"],
                     "zero_amplitudes": r["zero_amplitudes"], "chain_passed": all(c[1] for c in r["chain"]),
                     "final_angle": r["final_angle"],
                     **{f"phi0_{k}": v for k, v in r["phi0"].items()},
                     **{f"phi1_{k}": v for k, v in r["phi1"].items()}})
    cols = ["pair", "uniformity_deviation", "zero_amplitudes", "chain_passed", "final_angle",
            *[f"phi0_{c}" for c in FP_COLUMNS], *[f"phi1_{c}" for c in FP_COLUMNS]]
    code = EXIT_OK if all(f["chain_passed"] for f in flat) else EXIT_VERIFY
    return Result({"table": "4", "rows": rows}, flat, cols, code)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, help="tolerance override")
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--format", choices=["text", "json", "csv"], help="output format (default text)")
    common.add_argument("--out", help="write output to this path instead of stdout")

    parser = _Parser(prog="fourqubit", description=__doc__.splitlines()[0])
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=["text", "json", "csv"], default="text")
    parser.add_argument("--out", default=None)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def state_input(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--name", help="named state, e.g. GHZ, HS, BSSB")
        g.add_argument("--file", help='JSON file {"n": 4, "amplitudes": [[re, im], ...]}')

    p = sub.add_parser("invariants", parents=[common], help="|F1|, |F3|, |F4|, |F6|, |Hdet| of a state")
    state_input(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("normal-form", parents=[common], help="canonical Cartan point of a critical state")
    state_input(p)
    p.add_argument("--allow-noncritical", action="store_true")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("verify", parents=[common], help="stationarity and Hessian signature")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--table", choices=["F3", "F4"])
    g.add_argument("--point", help="'(z1, z2, z3, z4)' or 'random'")
    g.add_argument("--point-file", help='JSON file {"z": [[re, im], ...]}')
    g.add_argument("--label", help="published point label, e.g. phi10 or psi8")
    p.add_argument("--invariant", choices=["F1", "F3", "F4", "F6"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="multistart Newton search")
    p.add_argument("--invariant", choices=["F3", "F4"], required=True)
    p.add_argument("--starts", type=int, default=20_000)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("codes", parents=[common], help="AME states and pure codes from Cartan pairs")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pair", help="pair1..pair5")
    g.add_argument("--all", action="store_true")
    p.add_argument("--chain", action="store_true", help="run the full 6 -> 5 -> 4 reduction")
    p.add_argument("--random-vectors", type=int, default=50)
    p.set_defaults(func=cmd_codes)

    p = sub.add_parser("reproduce", parents=[common], help="recompute a published table")
    p.add_argument("--table", choices=["1", "2", "3", "4", "more"], required=True)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_INPUT
    try:
        result = args.func(args)
    except (InputError, ZeroStateError, NotCriticalError, ValueError) as exc:
        print(f"fourqubit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        text = render_json(result.payload)
    elif args.format == "csv":
        text = render_csv(result.rows, result.columns)
    else:
        text = render_text(result.rows, result.columns)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.code
