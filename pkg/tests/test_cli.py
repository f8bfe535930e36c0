from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from hopfgs.cli import load_schema, main

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def _strip_versions(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "versions"}


@pytest.mark.parametrize(
    "golden, argv",
    [
        ("cohomology_psl2_q2.json", ["cohomology", "psl2", "--q", "2"]),
        ("cohomology_group_gs_z2.json", ["cohomology", "group-gs", "--group", "Z2", "--max-degree", "3"]),
        ("normalizability_cn4.json", ["normalizability", "--builtin", "cn", "--n", "4"]),
    ],
)
def test_golden_reports(capsys, golden, argv):
    code, report = run_json(capsys, *argv)
    assert code == 0
    expected = json.loads((GOLDEN / golden).read_text())
    assert _strip_versions(report) == _strip_versions(expected)


def test_reruns_are_byte_identical(capsys):
    _, first, _ = run(capsys, "cohomology", "psl2", "--q", "3")
    _, second, _ = run(capsys, "cohomology", "psl2", "--q", "3")
    assert first == second


def test_timing_is_opt_in(capsys):
    _, report = run_json(capsys, "cohomology", "sl2", "--q", "2", "--timing")
    assert float(report["timing_seconds"]) >= 0
    _, report = run_json(capsys, "cohomology", "sl2", "--q", "2")
    assert "timing_seconds" not in report


@pytest.mark.parametrize(
    "schema, argv",
    [
        ("cohomology", ["cohomology", "sl2", "--q", "2"]),
        ("cohomology", ["cohomology", "hochschild", "--group", "Z2", "--bimodule", "random"]),
        ("verify", ["verify", "normalizability"]),
        ("normalizability", ["normalizability", "--builtin", "cn", "--n", "2"]),
    ],
)
def test_reports_match_schema(capsys, schema, argv):
    _, report = run_json(capsys, *argv)
    jsonschema.validate(report, load_schema(schema))


def test_report_schema_command(capsys):
    code, out, _ = run(capsys, "report-schema", "verify")
    assert code == 0
    jsonschema.Draft202012Validator.check_schema(json.loads(out))


def test_psl2_flagship(capsys):
    for q in ("1", "2", "3"):
        code, report = run_json(capsys, "cohomology", "psl2", "--q", q)
        assert code == 0 and report["result"]["homology"] == [1, 0, 0, 1]


def test_sl2_flagship(capsys):
    code, report = run_json(capsys, "cohomology", "sl2", "--q", "2")
    h = report["result"]["homology"]
    assert code == 0 and h[0] == 1 and h[3] == 1


def test_symbolic_q(capsys):
    code, report = run_json(capsys, "cohomology", "psl2", "--symbolic-q")
    assert code == 0 and report["result"]["q"] == "q"
    assert report["result"]["homology"] == [1, 0, 0, 1]


def test_group_gs_table_format(capsys):
    code, out, _ = run(capsys, "cohomology", "group-gs", "--group", "Z2", "--max-degree", "3", "--format", "table")
    assert code == 0
    assert "homology: [1, 0, 0, 0]" in out and out.rstrip().endswith("PASSED")


def test_group_from_json_file(capsys):
    code, report = run_json(capsys, "cohomology", "group-gs", "--group", str(DATA / "s3_group.json"))
    assert code == 0 and report["result"]["homology"] == [1, 0, 0]


def test_measured_algebra_from_json_file(capsys):
    code, report = run_json(capsys, "normalizability", "--input", str(DATA / "c4.json"))
    assert code == 0 and report["result"]["mu_squared"] == "4"


def test_hochschild_regular_center(capsys):
    _, report = run_json(capsys, "cohomology", "hochschild", "--group", "Z2", "--bimodule", "regular")
    assert report["result"]["homology"][0] == 2


def test_q_zero_is_usage_error(capsys):
    code, out, err = run(capsys, "cohomology", "sl2", "--q", "0")
    assert code == 2 and out == ""
    assert "q must be nonzero" in err


def test_bad_q_text(capsys):
    code, _, err = run(capsys, "cohomology", "sl2", "--q", "1/+")
    assert code == 2 and "invalid q" in err


def test_degree_bound_too_small(capsys):
    code, _, err = run(capsys, "cohomology", "psl2", "--degree-bound", "4")
    assert code == 2 and "degree bound" in err


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("HOPFGS_BUDGET", "10")
    code, _, err = run(capsys, "cohomology", "group-gs", "--group", "S3", "--max-degree", "3")
    assert code == 3 and "budget" in err


def test_unknown_group(capsys):
    code, _, err = run(capsys, "cohomology", "group-gs", "--group", "nope")
    assert code == 2


def test_normalizability_cn4(capsys):
    code, report = run_json(capsys, "normalizability", "--builtin", "cn", "--n", "4")
    assert code == 0 and report["result"]["mu_squared"] == "4"


def test_normalizability_cn2_warns(capsys):
    _, report = run_json(capsys, "normalizability", "--builtin", "cn", "--n", "2")
    assert any("< 4" in w for w in report["result"]["warnings"])


def test_malformed_json_is_parse_error(capsys):
    code, out, err = run(capsys, "normalizability", "--input", str(DATA / "malformed.json"))
    assert code == 2 and out == "" and err.startswith("error:")


def test_missing_input_file(capsys):
    code, _, _ = run(capsys, "normalizability", "--input", str(DATA / "missing.json"))
    assert code == 2


def test_verify_weighted_fails_with_witness(capsys):
    code, report = run_json(capsys, "verify", "normalizability", "--input", str(DATA / "weighted_c2.json"))
    assert code == 1 and not report["passed"]
    failed = [c for c in report["checks"] if not c["passed"]]
    assert failed and failed[0]["witnesses"] == ["e2"]


def test_verify_normalizability_table(capsys):
    code, report = run_json(capsys, "verify", "normalizability")
    assert code == 0
    names = [c["name"] for c in report["checks"]]
    assert "C^9: lambda = 1, mu^2 = 9" in names


def test_verify_sigma(capsys):
    code, report = run_json(capsys, "verify", "sigma", "--q", "2")
    assert code == 0
    conds = [c for c in report["checks"] if c["name"].startswith("(")]
    assert len(conds) == 3 and all(c["passed"] for c in conds)


@pytest.mark.parametrize("suite", ["axioms", "yd", "averaging", "relations"])
def test_verify_suites(capsys, suite):
    code, report = run_json(capsys, "verify", suite, "--q", "2")
    assert code == 0, [c for c in report["checks"] if not c["passed"]]


def test_entry_point_subprocess():
    proc = subprocess.run([sys.executable, "-m", "hopfgs.cli", "cohomology", "sl2", "--q", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "q must be nonzero" in proc.stderr
    proc = subprocess.run([sys.executable, "-m", "hopfgs.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "hopfgs" in proc.stdout
