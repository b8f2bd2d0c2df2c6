"""Command line behavior: verify, figure CSVs, report, exit codes."""

import csv
import math
import re
import subprocess
import sys

import numpy as np
import pytest

from entswap.cli import cmd_verify, main
from entswap.entanglement import special_concurrences
from entswap.strategies import SwapInputs, closed_form_s2


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# ------------------------------------------------------------------ verify

def test_verify_exits_clean_on_chain_satisfying_sample(capsys):
    # seed 1 draws a single (alpha, gamma) inside the region where the
    # full ordering holds, so every check passes
    assert cmd_verify(trials=1, seed=1) == 0
    out = capsys.readouterr().out
    assert "verify: ok" in out
    assert "FAIL" not in out


def test_verify_reports_genuine_ordering_violation(capsys):
    rc = main(["verify", "--trials", "20", "--seed", "0"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "inequality chain" in out
    match = re.search(r"violated p_s3 <= p_s1 at \(alpha, gamma, p_s1, p_s2, p_s3\)"
                      r" = \(([^)]*)\)", out)
    assert match, out
    alpha, gamma, p1, p2, p3 = (float(v) for v in match.group(1).split(","))
    # revalidate the printed counterexample independently
    inp = SwapInputs(alpha, gamma)
    assert abs(p1 - 4 * inp.alpha ** 2 * inp.gamma ** 2) < 1e-12
    assert p3 > p1 + 1e-12
    assert p1 <= p2 + 1e-12
    # every simulation-vs-closed-form check still passes at machine precision
    for name in ("strategy 1", "strategy 2", "strategy 3", "strategy 4",
                 "extraction", "plateau", "slope breaks"):
        line = next(l for l in out.splitlines() if name in l)
        assert "[ok]" in line, line


def test_verify_negative_control_detects_corrupt_closed_form(capsys, monkeypatch):
    import entswap.strategies as st

    monkeypatch.setattr(st, "closed_form_s2", lambda inputs: 0.123)
    rc = cmd_verify(trials=1, seed=1)
    out = capsys.readouterr().out
    assert rc == 1
    line = next(l for l in out.splitlines() if "strategy 2 sim vs closed" in l)
    assert "[FAIL]" in line


def test_verify_rejects_bad_trials(capsys):
    assert main(["verify", "--trials", "0"]) == 2


# ----------------------------------------------------------------- figure2

def test_figure2_default_schema_and_values(tmp_path):
    out = tmp_path / "f2.csv"
    assert main(["figure2", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert list(rows[0]) == ["c_ac1", "c_bc2", "p_s1", "p_s2"]
    assert len(rows) == 3 * 101
    assert sorted({r["c_ac1"] for r in rows}) == ["0.4", "0.7", "0.97"]
    endpoints = {r["c_ac1"]: (float(r["p_s1"]), float(r["p_s2"]))
                 for r in rows if float(r["c_bc2"]) == 1.0}
    for c, frozen in (("0.4", 0.08348486100883201), ("0.7", 0.285857157145715),
                      ("0.97", 0.7568950843771356)):
        p1, p2 = endpoints[c]
        assert abs(p1 - frozen) < 1e-12
        assert abs(p2 - frozen) < 1e-12
    for r in rows:
        p1, p2 = float(r["p_s1"]), float(r["p_s2"])
        assert 0.0 <= p1 <= 1.0 and 0.0 <= p2 <= 1.0
        assert p2 >= p1 - 1e-12
        if float(r["c_bc2"]) == 0.0:
            assert p1 == 0.0 and p2 == 0.0


def test_figure2_plateau_structure(tmp_path):
    out = tmp_path / "f2.csv"
    main(["figure2", "--out", str(out), "--c-ac1", "0.4", "--steps", "101"])
    rows = read_csv(out)
    step = 1.0 / 100
    p2 = np.array([float(r["p_s2"]) for r in rows])
    c2 = np.array([float(r["c_bc2"]) for r in rows])
    peak = p2.max()
    onset = c2[np.argmax(p2 >= peak - 1e-12)]
    assert abs(onset - 0.4) <= step + 1e-12
    assert np.all(np.abs(p2[c2 >= 0.4] - peak) < 1e-12)
    # p_s1 only reaches the shared maximum at the very end of the sweep
    p1 = np.array([float(r["p_s1"]) for r in rows])
    assert abs(p1[-1] - peak) < 1e-12
    assert np.all(p1[c2 <= 1.0 - step] < peak - 1e-12)


def test_figure2_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["figure2", "--out", str(a), "--steps", "31"])
    main(["figure2", "--out", str(b), "--steps", "31"])
    assert a.read_bytes() == b.read_bytes()


def test_figure2_usage_errors(tmp_path, capsys):
    assert main(["figure2", "--out", str(tmp_path / "x.csv"), "--steps", "1"]) == 2
    assert main(["figure2", "--out", str(tmp_path / "x.csv"), "--c-ac1", "1.5"]) == 2
    assert main(["figure2", "--out", "/nonexistent_dir_zz/x.csv", "--steps", "5"]) == 1


# ----------------------------------------------------------------- figure3

def test_figure3_schema_and_plateau(tmp_path):
    out = tmp_path / "f3.csv"
    assert main(["figure3", "--out", str(out), "--steps", "51"]) == 0
    rows = read_csv(out)
    assert list(rows[0]) == ["c_bc2", "c_c1c2", "p_s4"]
    assert len(rows) == 51 * 51
    step = 1.0 / 50
    by_row = {}
    for r in rows:
        by_row.setdefault(float(r["c_bc2"]), []).append(
            (float(r["c_c1c2"]), float(r["p_s4"])))
    for c2, cells in by_row.items():
        cells.sort()
        vals = np.array([v for _, v in cells])
        assert np.all((0.0 <= vals) & (vals <= 1.0))
        if c2 == 0.0:
            assert np.all(vals == 0.0)
            continue
        # full-strength hub measurement reproduces the Bell-then-extract value
        expected = closed_form_s2(SwapInputs.from_concurrences(0.7, c2))
        assert abs(cells[-1][1] - expected) < 1e-12
        # plateau onset sits within one grid step of c_minus
        c_minus, _ = special_concurrences(0.7, c2)
        hub = np.array([c for c, _ in cells])
        onset = hub[np.argmax(vals >= vals.max() - 1e-12)]
        assert onset <= c_minus + step + 1e-12


def test_figure3_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["figure3", "--out", str(a), "--steps", "21"])
    main(["figure3", "--out", str(b), "--steps", "21"])
    assert a.read_bytes() == b.read_bytes()


def test_figure3_usage_errors(tmp_path):
    assert main(["figure3", "--out", str(tmp_path / "x.csv"), "--c-ac1", "-0.2"]) == 2
    assert main(["figure3", "--out", str(tmp_path / "x.csv"), "--steps", "0"]) == 2


# ------------------------------------------------------------------ report

def test_report_full_output(capsys):
    rc = main(["report", "--alpha", "0.5", "--gamma", "0.6"])
    out = capsys.readouterr().out
    assert rc == 0
    closed = [float(v) for v in re.findall(r"closed form\s+(\S+)", out)]
    np.testing.assert_allclose(closed, [0.36, 0.5, 0.20093023255813952, 0.5],
                               atol=1e-11)
    # strategy 4 defaults to the plateau-onset basis parameter min(x2, x3)
    assert out.count("basis x = 0.60999428133") == 2
    forms = re.search(r"p_s3 forms: direct=(\S+)\s+via c_minus=(\S+)", out)
    assert abs(float(forms.group(1)) - float(forms.group(2))) < 1e-12
    for label in ("mu+", "nu+", "nu-", "mu-", "phi+", "psi-", "use:AC1:fail"):
        assert label in out


def test_report_explicit_x(capsys):
    rc = main(["report", "--alpha", "0.5", "--gamma", "0.6", "--x", "0.3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "basis x = 0.3" in out


def test_report_deterministic_limit(capsys):
    rc = main(["report", "--alpha", str(1 / math.sqrt(2)),
               "--gamma", str(1 / math.sqrt(2))])
    out = capsys.readouterr().out
    assert rc == 0
    closed = [float(v) for v in re.findall(r"closed form\s+(\S+)", out)]
    np.testing.assert_allclose(closed, [1.0, 1.0, 0.25, 1.0], atol=1e-12)


def test_report_rejects_major_amplitude(capsys):
    rc = main(["report", "--alpha", "0.9", "--gamma", "0.3"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "alpha <= beta required" in err


def test_report_rejects_bad_x(capsys):
    assert main(["report", "--alpha", "0.5", "--gamma", "0.6", "--x", "0.9"]) == 2


# ------------------------------------------------------------------- usage

def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2


def test_unknown_flag_is_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "--bogus"])
    assert excinfo.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "entswap.cli", "report", "--alpha", "0.3",
         "--gamma", "0.4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "strategy 4" in proc.stdout
