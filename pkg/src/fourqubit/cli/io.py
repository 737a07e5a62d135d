"""State and point files, and output rendering."""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from ..states import PureState


class InputError(ValueError):
    """Bad command-line input; maps to exit code 3."""


def _pair(value, where):
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise InputError(f"{where}: expected [re, im] with two numbers, got {value!r}")
    return complex(value[0], value[1])


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def state_from_json(data, source="state") -> PureState:
    """Decode ``{"n": n, "amplitudes": [[re, im], ...]}``."""
    if not isinstance(data, dict):
        raise InputError(f"{source}: top level must be an object")
    for key in ("n", "amplitudes"):
        if key not in data:
            raise InputError(f"{source}: missing field {key!r}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"{source}: field 'n' must be a positive integer")
    amps = data["amplitudes"]
    if not isinstance(amps, list) or len(amps) != 2**n:
        got = len(amps) if isinstance(amps, list) else type(amps).__name__
        raise InputError(f"{source}: field 'amplitudes' must list {2**n} entries, got {got}")
    vec = np.array([_pair(a, f"{source}: amplitudes[{i}]") for i, a in enumerate(amps)])
    return PureState(vec)


def state_to_json(s: PureState) -> dict:
    return {"n": s.n, "amplitudes": [[float(a.real), float(a.imag)] for a in s.amplitudes]}


def point_from_json(data, source="point") -> np.ndarray:
    if not isinstance(data, dict) or "z" not in data:
        raise InputError(f"{source}: expected an object with field 'z'")
    z = data["z"]
    if not isinstance(z, list) or len(z) != 4:
        raise InputError(f"{source}: field 'z' must list 4 entries")
    return np.array([_pair(v, f"{source}: z[{i}]") for i, v in enumerate(z)])


def point_to_json(z) -> dict:
    return {"z": [[float(v.real), float(v.imag)] for v in np.asarray(z, dtype=complex)]}


def load_state(path) -> PureState:
    return state_from_json(_load_json(path), str(path))


def load_point(path) -> np.ndarray:
    return point_from_json(_load_json(path), str(path))


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def render_json(payload) -> str:
    # repr-based floats round-trip and never need more than 17 significant digits
    return json.dumps(_plain(payload), sort_keys=True, indent=2) + "\n"


def _cell(v):
    if v is None:
        return "n/a"
    if isinstance(v, (tuple, list)):
        return "(" + ",".join(str(x) for x in v) + ")"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def render_csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _short(v):
    if v is None:
        return "n/a"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.6g}"
    if isinstance(v, complex):
        return f"{v.real:.6g}{v.imag:+.6g}i"
    if isinstance(v, (tuple, list)):
        return "(" + ",".join(_short(x) for x in v) + ")"
    return str(v)


def render_text(rows, columns) -> str:
    table = [list(columns)] + [[_short(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(columns))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table]
    return "\n".join(lines) + "\n"
