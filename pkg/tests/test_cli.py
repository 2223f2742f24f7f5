import io
import json
import os.path
import subprocess
import sys
from typing import Any, Tuple

import pytest

from ladder import document
from ladder.cli import run
from ladder.rep import Representation
from ladder.stability import StabilityParams

ROOT = os.path.dirname(os.path.dirname(__file__))
ADJUDICATION = os.path.join(ROOT, "tests", "fixtures", "a2xa2_adjudication.json")


def call(argv, stdin: str = "") -> Tuple[int, str, str]:
    stdout, stderr = io.StringIO(), io.StringIO()
    code = run(argv, io.StringIO(stdin), stdout, stderr)
    return code, stdout.getvalue(), stderr.getvalue()


def docs(*values: Any) -> str:
    return document.dumps([document.encode(v) for v in values])


def last_error(stderr: str) -> Any:
    return json.loads(stderr.strip().splitlines()[-1])


@pytest.fixture
def line(trivial2, f3) -> Representation:
    return Representation.build(trivial2, f3, (1, 1), {"beta_1^v": [[1]]})


@pytest.fixture
def line_params(trivial2) -> StabilityParams:
    return StabilityParams.create(trivial2, (1, -1), d=(1, 1))


@pytest.fixture
def adjudication() -> str:
    with open(ADJUDICATION) as f:
        return f.read()


def test_ladder() -> None:
    code, out, _ = call(["ladder", "-levels", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "ladder"
    assert doc["payload"]["levels"] == 3
    assert doc["payload"]["vertex_order"] == ["1,v", "2,v", "3,v"]


def test_check(hn_example) -> None:
    code, out, _ = call(["check"], docs(hn_example))
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "report"
    assert doc["payload"]["command"] == "check"
    assert doc["payload"]["settings"]["field"] == "fp:3"
    assert doc["payload"]["settings"]["convention"] == "document"
    result = doc["payload"]["result"]
    assert result["relations"]
    assert result["filtered"]
    assert result["dims"] == [1, 2]


def test_stability_sweep(adjudication) -> None:
    code, out, _ = call(
        ["stability", "-field", "fp:3", "-convention", "both"], adjudication
    )
    assert code == 0
    result = json.loads(out)["payload"]["result"]
    assert result["vertex_order"] == ["1,q1", "1,q2", "2,q1", "2,q2"]
    assert result["locus"] == "rel"
    assert [r["convention"] for r in result["rows"]] == ["subgeq", "subleq"]
    for row in result["rows"]:
        assert row["total"] == 153
        assert row["injective"] == 48
        assert row["semistable"] == 0
        assert row["stable"] == 0
        assert not row["matches_injectivity"]


def test_stability_verdicts(hn_example, hn_params) -> None:
    code, out, _ = call(["stability"], docs(hn_example, hn_params))
    assert code == 0
    (verdict,) = json.loads(out)["payload"]["result"]["verdicts"]
    assert verdict["convention"] == "subgeq"
    assert not verdict["semistable"]
    assert verdict["witness"] == [1, 1]


def test_enumerate(line_params) -> None:
    code, out, _ = call(
        ["enumerate", "-field", "fp:3", "-convention", "both"], docs(line_params)
    )
    assert code == 0
    result = json.loads(out)["payload"]["result"]
    assert result["points"] == 2
    subgeq, subleq = result["s_classes"]
    assert subgeq["count"] == 1
    assert subgeq["classes"][0]["size"] == 2
    assert subleq["count"] == 0


def test_output_is_deterministic(line_params) -> None:
    argv = ["enumerate", "-field", "fp:3", "-seed", "5"]
    assert call(argv, docs(line_params)) == call(argv, docs(line_params))


def test_verbose_logs_to_stderr(adjudication) -> None:
    code, _, err = call(["-v", "stability", "-field", "fp:3"], adjudication)
    assert code == 0
    assert "kept 153 of 729 points" in err


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["check", "-bogus"]])
def test_usage_errors(argv) -> None:
    code, out, err = call(argv)
    assert code == 2
    assert out == ""
    assert last_error(err)["error"] == "usage"


def test_diagnostics_go_to_stderr(output) -> None:
    stdout = io.StringIO()
    code = run(["frobnicate"], io.StringIO(""), stdout, output)
    assert code == 2
    assert stdout.getvalue() == ""
    written = "".join(c.args[0] for c in output.write.call_args_list)
    assert "Usage: ladder" in written
    assert '"error": "usage"' in written


def test_invalid_flag_value(hn_example) -> None:
    code, _, err = call(["check", "-field", "fp:6"], docs(hn_example))
    assert code == 2
    assert last_error(err)["error"] == "usage"


def test_invalid_input() -> None:
    code, out, err = call(["check"], "{not json")
    assert code == 2
    assert out == ""
    assert last_error(err)["error"] == "validation"


def test_resource_cap(adjudication) -> None:
    code, out, err = call(["stability", "-field", "fp:3", "-cap", "10"], adjudication)
    assert code == 3
    assert out == ""
    assert last_error(err)["error"] == "resource"


def test_inconclusive_certificate(line, line_params) -> None:
    code, _, err = call(["certify", "-convention", "subleq"], docs(line, line_params))
    assert code == 4
    assert last_error(err)["error"] == "inconclusive"


def test_certificate(line, line_params) -> None:
    code, out, _ = call(["certify"], docs(line, line_params))
    assert code == 0
    (cert,) = json.loads(out)["payload"]["result"]["certificates"]
    assert cert["weight_ok"]
    assert cert["value"] != "0 mod 3"


@pytest.mark.parametrize("argv", [["-h"], ["check", "-h"]])
def test_help(argv) -> None:
    code, out, err = call(argv)
    assert code == 0
    assert out == ""
    assert "Usage" in err or "-field" in err


def test_module_entry_point() -> None:
    proc = subprocess.run(
        [sys.executable, "-m", "ladder", "ladder", "-base", "linear:2"],
        capture_output=True,
        text=True,
        cwd=ROOT,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["payload"]["vertex_order"] == ["1,q1", "1,q2", "2,q1", "2,q2"]
