"""Tests for report plumbing, suite dispatch, and the CLI surface."""

import json
import os

import numpy as np
import pytest

from magiclab.cli import main
from magiclab.modular import double_fibonacci
from magiclab.reports import CheckReport, dump_state, sanitize, write_reports
from magiclab.statevec import StateVector
from magiclab.suites import SUITES, agsp_sweep, run_suite
from magiclab.zxcat import build


def test_sanitize_converts_numpy_and_complex():
    raw = {
        "scalar": np.float64(0.5),
        "int": np.int64(3),
        "flag": np.bool_(True),
        "vec": np.arange(3),
        "z": 1 + 2j,
        "nested": [(np.float32(1.0), {"k": np.complex128(1j)})],
    }
    clean = sanitize(raw)
    assert clean == {
        "scalar": 0.5,
        "int": 3,
        "flag": True,
        "vec": [0, 1, 2],
        "z": [1.0, 2.0],
        "nested": [[1.0, {"k": [0.0, 1.0]}]],
    }
    json.dumps(clean)  # round-trippable


def test_check_report_verdict_consistency():
    good = CheckReport("x", {}, 0.5, 1.0, True, 3)
    assert good.to_dict()["pass"] is True
    assert good.to_dict()["runtime_ms"] == 3
    with pytest.raises(ValueError):
        CheckReport("x", {}, 2.0, 1.0, True, 0)
    with pytest.raises(ValueError):
        CheckReport("x", {}, 0.5, 1.0, False, 0)
    # without a bound the verdict is free-form
    free = CheckReport("x", {"why": "boolean check"}, 1.0, None, False, 0)
    assert free.to_dict()["bound"] is None


def test_write_reports_atomic_json_and_jsonl(tmp_path):
    reports = [
        CheckReport("a", {"n": 2}, 0.0, 1e-9, True, 1),
        CheckReport("b", {}, 2.0, 1.0, False, 2),
    ]
    path = tmp_path / "out.json"
    write_reports(str(path), reports)
    parsed = json.loads(path.read_text())
    assert [r["check"] for r in parsed] == ["a", "b"]
    assert parsed[1]["pass"] is False
    lines_path = tmp_path / "out.jsonl"
    write_reports(str(lines_path), reports, jsonl=True)
    lines = lines_path.read_text().splitlines()
    assert len(lines) == 2 and json.loads(lines[0])["check"] == "a"
    assert not [p for p in os.listdir(tmp_path) if p.endswith(".tmp")]


def test_dump_state_interleaves_amplitudes(tmp_path):
    state = build(3, "i")
    path = tmp_path / "state.json"
    dump_state(str(path), state)
    snap = json.loads(path.read_text())
    assert snap["n"] == 3
    flat = np.asarray(snap["amps"])
    amps = flat[0::2] + 1j * flat[1::2]
    assert np.abs(amps - state.amps).max() <= 1e-15


def test_run_suite_exit_codes(tmp_path):
    assert run_suite("no-such-suite") == 2
    out = tmp_path / "glue.json"
    assert run_suite("glue", seed=3, trials=4, out=str(out)) == 0
    parsed = json.loads(out.read_text())
    assert all(r["pass"] for r in parsed)
    assert {"check", "params", "observed", "bound", "pass", "runtime_ms"} <= set(
        parsed[0]
    )


def test_run_suite_deterministic_modulo_runtime(tmp_path):
    paths = [tmp_path / f"r{i}.json" for i in range(2)]
    for path in paths:
        assert run_suite("modular", seed=11, out=str(path)) == 0
    loaded = [json.loads(p.read_text()) for p in paths]
    stripped = [
        [{k: v for k, v in r.items() if k != "runtime_ms"} for r in run]
        for run in loaded
    ]
    assert stripped[0] == stripped[1]


def test_every_suite_is_registered():
    assert set(SUITES) == {"symplectic", "zxcat", "agsp", "prep", "modular", "glue"}


def test_agsp_sweep_rows():
    rows = agsp_sweep([16, 64], [2, 4, 70])
    # the m >= n entry is skipped
    assert [(r["n"], r["m"]) for r in rows] == [(16, 2), (16, 4), (64, 2), (64, 4)]
    for row in rows:
        assert row["sup_error"] <= row["bound"]
        assert row["coeff_sum"] == pytest.approx(row["p_minus_n"], rel=1e-9)


def test_cli_unknown_suite_exits_two():
    with pytest.raises(SystemExit) as err:
        main(["bogus"])
    assert err.value.code == 2


def test_cli_invalid_params_exit_two(capsys):
    assert main(["prep", "sandwich", "--n", "0"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_suite_and_subcommands(tmp_path, capsys):
    assert main(["glue", "--trials", "3", "--seed", "2"]) == 0
    reports = json.loads(capsys.readouterr().out)
    assert len(reports) == 4 and all(r["pass"] for r in reports)

    assert main(["glue", "run", "--dims", "1,1,1,1,1,1", "--trials", "2"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["pass"] and len(record["instances"]) == 2
    assert "premises" in record["instances"][0]

    assert main(["modular", "verlinde", "--genus", "3"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["observed"]["value"] == pytest.approx(225.0)

    assert main(["prep", "mps", "--n", "5", "--boundary", "periodic"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["observed"]["overlap_deviation"] <= 1e-12


def test_cli_dump_state_snapshot(tmp_path, capsys):
    snap = tmp_path / "cat.json"
    assert main(["zxcat", "build", "--n", "4", "--variant", "plus",
                 "--dump-state", str(snap)]) == 0
    capsys.readouterr()
    data = json.loads(snap.read_text())
    flat = np.asarray(data["amps"])
    amps = flat[0::2] + 1j * flat[1::2]
    reference = build(4, "plus")
    assert data["n"] == 4
    assert np.abs(amps - reference.amps).max() <= 1e-15


def test_cli_lpu_search_with_data_file(tmp_path, capsys):
    payload = tmp_path / "fib.json"
    payload.write_text(double_fibonacci().to_json())
    assert main(["modular", "lpu-search", "--data", str(payload)]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["pass"] is True
    assert record["observed"]["survivors"] == [
        {"permutation": [0, 1, 2, 3], "phases": [1.0, 1.0, 1.0, 1.0]}
    ]
    assert main(["modular", "lpu-search", "--data", str(tmp_path / "no.json")]) == 2


def test_cli_agsp_sweep_csv(tmp_path, capsys):
    target = tmp_path / "sweep.csv"
    assert main(["agsp", "sweep", "--n-list", "16", "--m-list", "1,3",
                 "--csv", str(target)]) == 0
    capsys.readouterr()
    lines = target.read_text().splitlines()
    assert lines[0] == "n,m,sup_error,bound,coeff_sum,p_minus_n"
    assert len(lines) == 3


def test_cli_writes_suite_file(tmp_path, capsys):
    out = tmp_path / "agsp.json"
    assert main(["agsp", "--out", str(out), "--seed", "5"]) == 0
    assert "0 failed" in capsys.readouterr().out
    parsed = json.loads(out.read_text())
    assert all(r["pass"] for r in parsed)
