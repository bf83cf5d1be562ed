from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from agcover.cli import main
from agcover.invariants import InvariantReport, invariant_report
from agcover.profile import SingularProfile
from conftest import cubic


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_invariants_cubic(write_profile):
    path = write_profile({"d": 3, "N": 3, "s3_odd": {"0": 6}}, "cubic.json")
    code, out, _ = run("invariants", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["K_square"] == 3 and doc["euler_X"] == 9
    assert doc["chi_OX"] == {"num": 1, "den": 1}
    assert doc["noether_ok"] is True


def test_invariants_round_trip(write_profile):
    p = SingularProfile(6, 4, n={0: 24, 1: 1}, m={2: 1}, t={1: 12})
    code, out, _ = run("invariants", write_profile(p))
    assert code == 0
    assert InvariantReport.from_json(json.loads(out)) == invariant_report(p)


def test_table_format_prints_rationals(write_profile):
    code, out, _ = run("invariants", "--format", "table", write_profile(SingularProfile(4, 3, n={0: 1})))
    assert code == 0
    lines = dict(line.split(None, 1) for line in out.splitlines())
    assert lines["chi_OX"].strip() == "14/3"


def test_json_output_is_deterministic(write_profile):
    path = write_profile(cubic())
    assert run("galois", path)[1] == run("galois", path)[1]


def test_galois_cubic(write_profile):
    code, out, _ = run("galois", write_profile(cubic()))
    assert code == 0
    doc = json.loads(out)
    assert doc["eZ_assembled"] == {"num": 24, "den": 1}
    assert doc["eZ_closed"] == {"num": 42, "den": 1}
    assert doc["chiZ_integral"] is True and doc["chiZ_closed_integral"] is False
    assert "eZ_closed_vs_assembled" in doc["discrepancy_flags"]


def test_check_exit_codes(write_profile):
    code, out, _ = run("check", write_profile(cubic()))
    assert code == 0 and json.loads(out)["admissible"]
    code, out, _ = run("check", write_profile(SingularProfile(3, 3, n={0: 1})))
    assert code == 2
    failed = {c["name"] for c in json.loads(out)["checks"] if not c["passed"]}
    assert "cusp_divisibility" in failed


def test_check_table(write_profile):
    code, out, _ = run("check", "--format", "table", write_profile(SingularProfile(3, 3, n={0: 1})))
    assert code == 2
    assert any(line.startswith("cusp_divisibility") and "FAIL" in line for line in out.splitlines())


def test_file_errors(tmp_path, write_profile):
    assert run("invariants", str(tmp_path / "missing.json"))[0] == 66
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("invariants", str(bad))[0] == 66
    assert run("invariants", write_profile({"d": 3, "N": 3, "s2": {"0": 1}}))[0] == 2


def test_structurally_invalid_profile(write_profile):
    code, _, err = run("invariants", write_profile(SingularProfile(3, 3, t={1: 4})))
    assert code == 2
    assert "S2-requires-N>=4" in err


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["invariants"], ["enumerate"], ["enumerate", "--d", "x"], ["monodromy", "--model", "s3"],
     ["monodromy", "--model", "d4"], ["local-model"], ["enumerate", "--d", "0"], ["enumerate", "--d", "3", "--jobs", "0"]],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == 64


def test_local_model_verify():
    code, out, _ = run("local-model", "--n", "2", "--verify")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and all(doc["checks"].values())


def test_local_model_output():
    code, out, _ = run("local-model", "--n", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["branch_germ_type"] == "A(8)"
    assert doc["branch_curve"]["vars"] == ["u", "v"]
    code, out, _ = run("local-model", "--n", "1", "--format", "table")
    assert "w^2 - 4*z" in out


def test_monodromy_command():
    code, out, _ = run("monodromy", "--model", "s3", "--n", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["group"] == "S3" and doc["order"] == 6
    assert len(doc["generators"]) == 2 and all(g.count(" ") == 1 for g in doc["generators"])
    code, out, _ = run("monodromy", "--model", "s2pair", "--k", "3")
    assert code == 0 and json.loads(out)["group"] == "Z2xZ2"
    code, out, _ = run("monodromy", "--model", "smooth2", "--backend", "python")
    assert code == 0 and json.loads(out)["order"] == 2


def test_enumerate_json_lines_and_brute_force_agree():
    base = ["enumerate", "--d", "3", "--N", "3", "--k-max", "1", "--cap", "8"]
    code, out, _ = run(*base)
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows and all(r["admissible"] and r["failed"] == [] for r in rows)
    assert {"d": 3, "N": 3, "s3_odd": {"0": 6}, "s3_even": {}, "s2": {}} in [r["profile"] for r in rows]
    assert run(*base, "--brute-force")[1] == out
    assert run(*base, "--jobs", "2")[1] == out


def test_enumerate_budget_exceeded():
    code, _, err = run("enumerate", "--d", "6", "--k-max", "2", "--node-limit", "10")
    assert code == 2 and "exceeded" in err


def test_console_script_module_entry(write_profile):
    proc = subprocess.run(
        [sys.executable, "-m", "agcover.cli", "invariants", write_profile(cubic())],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["K_square"] == 3
