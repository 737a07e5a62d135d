import json
import subprocess
import sys

import numpy as np
import pytest

from fourqubit.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main
from fourqubit.cli.io import (
    InputError,
    load_point,
    load_state,
    point_to_json,
    render_csv,
    render_text,
    state_from_json,
    state_to_json,
)
from fourqubit.states import NAMED_STATES, PureState


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "json", *argv)
    return code, (json.loads(out) if out else None), err


class TestIO:
    def test_state_round_trip(self):
        s = NAMED_STATES["HS"]
        assert state_from_json(state_to_json(s)).allclose(s)

    @pytest.mark.parametrize(
        "data,fragment",
        [
            ([], "top level"),
            ({"n": 4}, "missing field 'amplitudes'"),
            ({"n": 0, "amplitudes": []}, "positive integer"),
            ({"n": 1, "amplitudes": [[1, 0]]}, "must list 2 entries"),
            ({"n": 1, "amplitudes": [[1, 0], [1]]}, "amplitudes[1]"),
            ({"n": 1, "amplitudes": [[1, 0], ["a", 0]]}, "amplitudes[1]"),
        ],
    )
    def test_state_errors(self, data, fragment):
        with pytest.raises(InputError, match=None) as info:
            state_from_json(data)
        assert fragment in str(info.value)

    def test_bad_json_position(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 4,\n "amplitudes": [}')
        with pytest.raises(InputError) as info:
            load_state(path)
        assert "line 2" in str(info.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_state(tmp_path / "nope.json")

    def test_point_round_trip(self, tmp_path):
        z = np.array([1, 1j, -2, 0.5 - 0.25j])
        path = tmp_path / "p.json"
        path.write_text(json.dumps(point_to_json(z)))
        np.testing.assert_array_equal(load_point(path), z)

    def test_render(self):
        rows = [{"a": 1.23456789, "b": None, "c": (1, 2, 3)}]
        assert render_csv(rows, ["a", "b", "c"]).splitlines() == ["a,b,c", '1.23456789,n/a,"(1,2,3)"']
        assert render_text(rows, ["a", "b", "c"]).splitlines()[1].split() == ["1.23457", "n/a", "(1,2,3)"]


class TestInvariants:
    def test_ghz(self, capsys):
        code, data, _ = run_json(capsys, "invariants", "--name", "GHZ")
        assert code == EXIT_OK
        inv = data["invariants"]
        for key, val in {"F1": 6, "F3": 9, "F4": 16.5, "F6": 64.125, "Hdet": 0}.items():
            assert inv[key] == pytest.approx(val, abs=1e-9)

    def test_hd(self, capsys):
        _, data, _ = run_json(capsys, "invariants", "--name", "HD")
        assert data["invariants"]["Hdet"] == pytest.approx(5.08e-5, rel=5e-3)

    def test_zero_file(self, capsys, tmp_path):
        path = tmp_path / "zero.json"
        path.write_text(json.dumps(state_to_json(PureState(np.zeros(16)))))
        code, out, err = run(capsys, "invariants", "--file", str(path))
        assert code == EXIT_INPUT
        assert "zero" in err

    def test_unknown_name(self, capsys):
        code, _, err = run(capsys, "invariants", "--name", "W")
        assert code == EXIT_INPUT and "unknown state" in err

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps(state_to_json(NAMED_STATES["MP"])))
        _, data, _ = run_json(capsys, "invariants", "--file", str(path))
        assert data["invariants"]["F3"] == pytest.approx(6)


class TestNormalForm:
    def test_yc_os_identical(self, capsys):
        _, a, _ = run(capsys, "normal-form", "--name", "YC")
        _, b, _ = run(capsys, "normal-form", "--name", "OS")
        # canonical coordinates print identically; invariants carry rounding noise
        assert a.splitlines()[1].split()[1:5] == b.splitlines()[1].split()[1:5]
        # full-precision JSON agrees to rounding
        _, ja, _ = run_json(capsys, "normal-form", "--name", "YC")
        _, jb, _ = run_json(capsys, "normal-form", "--name", "OS")
        np.testing.assert_allclose(ja["z"], jb["z"], atol=1e-14)

    def test_hs(self, capsys):
        _, data, _ = run_json(capsys, "normal-form", "--name", "HS")
        r3, r6 = np.sqrt(3), np.sqrt(6)
        z = np.array([complex(*v) for v in data["z"]])
        np.testing.assert_allclose(z, [r3 / r6, 1j / r6, 1j / r6, 1j / r6], atol=1e-12)

    def test_mp(self, capsys):
        _, data, _ = run_json(capsys, "normal-form", "--name", "MP")
        np.testing.assert_allclose(data["z"], [[1, 0], [0, 0], [0, 0], [0, 0]], atol=1e-12)

    def test_non_critical(self, capsys, tmp_path):
        path = tmp_path / "prod.json"
        v = np.zeros(16)
        v[0] = 1
        path.write_text(json.dumps(state_to_json(PureState(v))))
        code, _, err = run(capsys, "normal-form", "--file", str(path))
        assert code == EXIT_INPUT and "critical" in err


class TestVerify:
    def test_table_f3(self, capsys):
        code, data, _ = run_json(capsys, "verify", "--table", "F3")
        assert code == EXIT_OK
        assert len(data["reports"]) == 14
        assert all(r["residual_s7"] < 1e-8 for r in data["reports"])

    def test_point_f4(self, capsys):
        code, data, _ = run_json(capsys, "verify", "--point", "(1,1,1,0)", "--invariant", "F4")
        assert code == EXIT_OK
        assert data["reports"][0]["signature"] == [4, 1, 2]

    def test_random_not_stationary(self, capsys):
        code, _, _ = run(capsys, "verify", "--point", "random", "--invariant", "F3")
        assert code == EXIT_VERIFY

    def test_label(self, capsys):
        code, data, _ = run_json(capsys, "verify", "--label", "psi8", "--invariant", "F4")
        assert code == EXIT_OK and data["reports"][0]["stationary"]

    def test_syntax_error(self, capsys):
        code, _, err = run(capsys, "verify", "--point", "(1,1,", "--invariant", "F3")
        assert code == EXIT_INPUT and "column" in err

    def test_point_file(self, capsys, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(json.dumps(point_to_json([1, 1, 0, 0])))
        code, data, _ = run_json(capsys, "verify", "--point-file", str(path), "--invariant", "F3")
        assert code == EXIT_OK and data["reports"][0]["signature"] == [6, 1, 0]


class TestSearch:
    def test_zero_starts(self, capsys):
        code, data, _ = run_json(capsys, "search", "--invariant", "F3", "--starts", "0")
        assert code == EXIT_OK
        assert data["classes"] == []

    def test_deterministic_across_jobs(self, capsys):
        _, a, _ = run(capsys, "--format", "json", "search", "--invariant", "F3", "--starts", "150", "--jobs", "1")
        _, b, _ = run(capsys, "--format", "json", "search", "--invariant", "F3", "--starts", "150", "--jobs", "2")
        _, c, _ = run(capsys, "--format", "json", "search", "--invariant", "F3", "--starts", "150", "--jobs", "1")
        assert a == b == c


class TestCodes:
    def test_chain(self, capsys):
        code, data, _ = run_json(capsys, "codes", "--pair", "pair4", "--chain")
        assert code == EXIT_OK
        flat = json.dumps(data)
        for params in ("[6, 1, 4]", "[5, 2, 3]", "[4, 4, 2]"):
            assert params in flat

    def test_all(self, capsys):
        code, out, _ = run(capsys, "--format", "csv", "codes", "--all")
        assert code == EXIT_OK
        assert len(out.strip().splitlines()) == 11

    def test_unknown_pair(self, capsys):
        code, _, err = run(capsys, "codes", "--pair", "pair9")
        assert code == EXIT_INPUT and "unknown pair" in err


class TestReproduce:
    def test_table1_csv(self, capsys):
        code, out, _ = run(capsys, "--format", "csv", "reproduce", "--table", "1")
        lines = out.strip().splitlines()
        assert code == EXIT_OK
        assert lines[0] == "state,F1,F3,F4,F6,Hdet"
        assert len(lines) == 7

    def test_more(self, capsys):
        code, data, _ = run_json(capsys, "reproduce", "--table", "more")
        assert code == EXIT_OK and len(data["rows"]) == 23

    def test_bad_table(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["reproduce", "--table", "7"])
        assert info.value.code == EXIT_INPUT

    def test_out_file_and_subcommand_flags(self, capsys, tmp_path):
        path = tmp_path / "t1.json"
        code, out, _ = run(capsys, "reproduce", "--table", "1", "--format", "json", "--out", str(path))
        assert code == EXIT_OK and out == ""
        assert len(json.loads(path.read_text())["rows"]) == 6


class TestEntryPoint:
    def test_no_command(self, capsys):
        assert main([]) == EXIT_INPUT

    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "fourqubit", "--format", "json", "invariants", "--name", "MP"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["invariants"]["F1"] == pytest.approx(6)
