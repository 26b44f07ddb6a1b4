from __future__ import annotations

import json
import re
import subprocess
import sys

import pytest

from gindex.cli import main
from gindex.report import dumps


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def action_file(tmp_path):
    def write(obj):
        p = tmp_path / "action.json"
        p.write_text(json.dumps(obj))
        return str(p)

    return write


def test_analyze_morita_table(capsys):
    code, out, _ = run(capsys, "example", "morita", "--m", "5", "--h", "1")
    assert code == 0
    assert "SU(1,4) SU(2,3)" in out
    assert re.search(r"^\s+5: 5$", out, re.M)


def test_analyze_m2(capsys, action_file):
    code, out, _ = run(capsys, "--format", "json", "analyze", action_file({"m": 2, "quotient_genus": 3, "fixed_points": {"1": 2}}))
    assert code == 0
    rep = json.loads(out)
    assert rep["solved_classes"][0]["expr"] == "1/8 σ + 1/8 η_1"
    assert rep["multiplicities"]["rational_isotypic"] == {"1": 6, "2": 6}


def test_analyze_free_has_empty_eta(capsys, action_file):
    code, out, _ = run(capsys, "analyze", action_file({"m": 3, "quotient_genus": 2}), "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["eta_index"] == [] and all(r["eta"] == {} for r in rep["solved_classes"])


def test_floats_only_under_numeric_checks(capsys, action_file):
    _, out, _ = run(capsys, "--format", "json", "analyze", action_file({"m": 7, "quotient_genus": 1, "fixed_points": {"1": 7}}))
    rep = json.loads(out)

    def floats(x, path=""):
        if isinstance(x, float):
            yield path
        elif isinstance(x, dict):
            for k, v in x.items():
                yield from floats(v, f"{path}/{k}")
        elif isinstance(x, list):
            for i, v in enumerate(x):
                yield from floats(v, f"{path}/{i}")

    assert all(p.startswith("/numeric_checks") for p in floats(rep))


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "--format", "json", "example", "ak7", "--h", "2")
    assert dumps(json.loads(out)) == out


def test_table_and_json_carry_same_values(capsys, action_file):
    path = action_file({"m": 7, "quotient_genus": 2, "fixed_points": {"1": 7}})
    _, js, _ = run(capsys, "--format", "json", "analyze", path)
    _, table, _ = run(capsys, "analyze", path)
    rep = json.loads(js)
    for row in rep["solved_classes"]:
        assert row["expr"] in table
        for v in row["eta"].values():
            assert v in table
    for row in rep["image"]["matrix"]:
        assert f"- [{', '.join(row)}]" in table


def test_exit_codes(capsys, action_file, tmp_path):
    code, _, err = run(capsys, "analyze", action_file({"m": 4}))
    assert code == 2 and "error" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "analyze", str(bad))[0] == 2
    assert run(capsys, "analyze", action_file({"m": 6, "quotient_genus": 1, "fixed_points": {"2": 1}}))[0] == 2
    code, _, err = run(capsys, "analyze", action_file({"m": 5, "quotient_genus": 1, "fixed_points": {"1": 1}}))
    assert code == 3 and "inconsistent" in err


def test_toledo_command(capsys):
    code, out, _ = run(capsys, "--format", "json", "toledo", "--h", "2")
    rep = json.loads(out)
    assert code == 0 and [f["sigma_coeff"] for f in rep["factors"]] == ["3/112", "5/112", "3/56"]
    assert rep["eta_over_sigma"] == "-1/16"


def test_cobordism_command(capsys, tmp_path):
    code, out, _ = run(capsys, "--format", "json", "cobordism", "ak2_fibering1", "ak2_fibering2")
    assert code == 0 and json.loads(out)["all_equal"]
    p = tmp_path / "f.json"
    p.write_text(json.dumps({"action": {"m": 2, "quotient_genus": 3, "fixed_points": {"1": 2}}, "base_genus": 129, "sigma": "256"}))
    assert run(capsys, "cobordism", str(p), "ak2_fibering2")[0] == 2


def test_ak2_example(capsys):
    code, out, _ = run(capsys, "--format", "json", "example", "ak2")
    rep = json.loads(out)
    assert [r["rank"] for r in rep["fibering_2"]["eigenranks"]] == [104, 217]


def test_verify_small_bounds(capsys):
    code, out, _ = run(capsys, "verify", "--max-m", "8", "--max-z", "4")
    assert code == 0 and "9/9 passed" in out


def test_verify_injected_fault(capsys, monkeypatch):
    from gindex import verify

    def broken(b):
        r = verify.CheckResult(99, "injected")
        r.failures.append("boom")
        return r

    monkeypatch.setattr(verify, "CHECKS", verify.CHECKS + [broken])
    code, out, _ = run(capsys, "verify", "--max-m", "6")
    assert code == 1 and "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gindex", "--format", "json", "toledo", "--h", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["j0"] == 1
