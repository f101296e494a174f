from __future__ import annotations

import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from optconst.cli import run

DATA = Path(__file__).resolve().parent.parent / "data"


def call(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
    try:
        code = run(list(argv), out, err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def test_constants_steinhaus_lower():
    code, out, _ = call("constants", "--family", "steinhaus-lower", "--p", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["value"] == pytest.approx(math.sqrt(math.pi) / 2)
    assert doc["branch"] == "A~_p=gaussian"


def test_constants_case_table_and_littlewood():
    _, out, _ = call("constants", "--family", "case-table", "--case", "i", "--m", "3")
    assert json.loads(out)["value"] == pytest.approx(2.0)
    _, out, _ = call("constants", "--family", "mixed-littlewood", "--p", "inf", "--m", "2")
    assert json.loads(out)["value"] == pytest.approx(2 / math.sqrt(math.pi))


def test_critical():
    code, out, _ = call("critical", "--which", "p0")
    doc = json.loads(out)
    assert code == 0 and doc["value"] == 1.8474163360763542 and doc["residual"] <= 1e-12
    _, out, _ = call("critical")
    assert [json.loads(line)["name"] for line in out.splitlines()] == ["p0", "p1", "alpha"]


def test_moment_variants():
    _, out, _ = call("moment", "--p", "4")
    assert json.loads(out)["closed_form"] == pytest.approx(6.0)
    _, out, _ = call("moment", "--p", "2", "--tensor", str(DATA / "littlewood2.json"), "--M", "3")
    assert json.loads(out)["value"] == pytest.approx(2.0)
    _, out, _ = call("--samples", "20000", "moment", "--p", "2", "--tensor", "littlewood2", "--mc")
    assert json.loads(out)["samples"] == 20000
    code, _, err = call("moment", "--p", "2", "--tensor", "littlewood2")
    assert code == 2 and "--M" in err


def test_grid_norm_and_sandwich():
    code, out, _ = call("grid-norm", "--tensor", str(DATA / "littlewood2.json"), "--M", "4")
    doc = json.loads(out)
    assert code == 0
    assert doc["grid_norm"] == pytest.approx(2 * math.sqrt(2))
    assert doc["upper"] == pytest.approx(4 * math.sqrt(2))
    _, out, _ = call("grid-norm", "--tensor", "identity3", "--M", "4", "--slots", "2", "--domain", "2,inf")
    assert json.loads(out)["grid_norm"] == pytest.approx(math.sqrt(3))


def test_mixed_norm():
    _, out, _ = call("mixed-norm", "--tensor", "littlewood2", "--t", "1,2")
    assert json.loads(out)["value"] == pytest.approx(2 * math.sqrt(2))
    _, out, _ = call("mixed-norm", "--tensor", "identity3", "--sigma", "2,1", "--t", "1,2")
    assert json.loads(out)["value"] == pytest.approx(3.0)


def test_verify_littlewood_example():
    code, out, _ = call("verify-littlewood", "--tensor", str(DATA / "littlewood2.json"), "--p", "inf", "--M", "8")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "pass" and doc["margin"] > 0


def test_verify_commands_csv():
    code, out, _ = call("--format", "csv", "verify-pra", "--tensor", "littlewood2", "--p", "inf,inf")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("claim_id,verdict,lhs,rhs,margin")
    code, out, _ = call("verify-khinchine", "--tensor", "littlewood2", "--p", "1.5", "--M", "4", "--format", "csv")
    assert code == 0 and out.splitlines()[1].startswith("multiple_khinchine_discrete,pass")


def test_tensor_from_stdin():
    doc = json.dumps({"shape": [2], "re": [1, 1], "im": [0, 0]})
    code, out, _ = call("moment", "--tensor", "-", "--p", "1", "--M", "64", stdin=doc)
    assert code == 0
    assert abs(json.loads(out)["value"] - 4 / math.pi) < 1e-3


def test_hl_check_exit_codes():
    assert call("hl-check", "--p", "inf,inf", "--t", "4/3,4/3")[0] == 2
    assert call("hl-check", "--p", "inf,inf", "--t", "1.3333333333333333,1.3333333333333333")[0] == 0
    assert call("hl-check", "--p", "inf,inf", "--t", "1,1")[0] == 1


def test_usage_errors():
    assert call()[0] == 2
    assert call("nonsense")[0] == 2
    assert call("constants", "--family", "nope")[0] == 2
    assert call("constants", "--family", "steinhaus-upper", "--p", "inf")[0] == 2
    assert call("grid-norm", "--tensor", "missing.json", "--M", "4")[0] == 2
    assert call("verify-littlewood", "--tensor", "littlewood2", "--p", "1.5")[0] == 2
    assert call("--samples", "1", "critical")[0] == 2
    code, _, err = call("moment", "--tensor", "-", "--p", "1", "--M", "3", stdin="{bad json")
    assert code == 2 and "bad tensor JSON" in err


def test_resource_error():
    code, out, err = call("--budget", "3", "grid-norm", "--tensor", "littlewood2", "--M", "4")
    assert code == 3 and out == "" and "budget" in err


def test_thread_count_does_not_change_output():
    args = ("verify-littlewood", "--tensor", "identity3", "--p", "4", "--M", "8", "--variant", "2")
    assert call("--threads", "1", *args)[1] == call("--threads", "8", *args)[1]


def test_report_subset():
    code, out, err = call("report", "--criteria", "1,2,3")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [r["criterion"] for r in rows] == [1, 2, 3]
    assert all(r["passed"] for r in rows)
    assert "criterion  1" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "optconst", "critical", "--which", "alpha"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == pytest.approx(2.18006, abs=1e-4)
