import csv
import io
import json
import subprocess
import sys

import pytest

from mlcf import cli
from mlcf.cli import RunConfig

LIMITS_R3 = ["limits", "--omega1", "1/6", "--omega2", "5/6", "--p", "ramanujan:q=0.2", "--q", "zero", "--tol", "1e-9"]


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        config = cli.parse_args(argv)
    except cli.InvalidInput:
        return cli.EXIT_INVALID, "", "parse"
    status = cli.run(config, out, err)
    return status, out.getvalue(), err.getvalue()


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_rank_prints_three():
    status, out, _ = _run(["rank", "--omega1", "1/6", "--omega2", "5/6"])
    assert status == 0
    assert _csv_rows(out)[0]["rank"] == "3"


def test_eval_fibonacci():
    status, out, _ = _run(["eval", "--cf", "fibonacci", "--N", "5"])
    assert status == 0
    assert float(_csv_rows(out)[0]["re"]) == pytest.approx(8 / 5, abs=1e-15)


def test_limits_r3_profile():
    status, out, _ = _run(LIMITS_R3)
    assert status == 0
    rows = _csv_rows(out)
    assert len(rows) == 6
    values = {round(float(r["re_limit"]), 8) for r in rows}
    assert len(values) == 3
    assert float(rows[0]["re_limit"]) == pytest.approx(0.051291407665566061, abs=1e-8)


def test_json_and_csv_agree():
    _, out_csv, _ = _run(LIMITS_R3)
    _, out_json, _ = _run(LIMITS_R3 + ["--format", "json"])
    doc = json.loads(out_json)
    assert doc["config"]["command"] == "limits"
    assert doc["residuals"]["rank"] == 3
    for row_c, row_j in zip(_csv_rows(out_csv), doc["rows"]):
        for key, val in row_j.items():
            if isinstance(val, float):
                assert float(row_c[key]) == val
            elif isinstance(val, bool):
                assert row_c[key] == ("true" if val else "false")


def test_reruns_are_identical():
    assert _run(LIMITS_R3 + ["--format", "json"]) == _run(LIMITS_R3 + ["--format", "json"])


def test_output_path(tmp_path):
    target = tmp_path / "rank.json"
    status, out, _ = _run(["rank", "--omega1", "1/8", "--omega2", "7/8", "--format", "json", "--output", str(target)])
    assert status == 0 and out == ""
    assert json.loads(target.read_text())["rows"][0]["rank"] == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["rank", "--omega1", "1/6", "--omega2", "1/6"],
        ["rank", "--omega1", "0.5", "--omega2", "1/6"],
        ["rank", "--omega1", "1/6"],
        ["limits", "--omega1", "1/6", "--omega2", "5/6", "--p", "geometric:r=2"],
        ["eval", "--cf", "nonsense"],
        ["qlimits", "--m", "2"],
        ["bogus"],
        ["rank", "--omega1", "1/6", "--omega2", "5/6", "--colour", "red"],
    ],
)
def test_invalid_input_exit_one(argv):
    assert _run(argv)[0] == cli.EXIT_INVALID


def test_unknown_key_in_config():
    with pytest.raises(cli.InvalidInput):
        RunConfig("rank", {"omega1": "1/6", "omega2": "5/6", "colour": "red"}).validate()


def test_no_convergence_exit_two():
    status, _, err = _run(["limits", "--omega1", "1/6", "--omega2", "5/6", "--p", "power:s=1.01", "--kmax", "5"])
    assert status == cli.EXIT_NO_CONVERGENCE
    assert "no convergence" in err


def test_poincare_command():
    status, out, _ = _run(["poincare", "--omega1", "1/6", "--omega2", "5/6", "--a", "geometric:r=0.5", "--format", "json"])
    assert status == 0
    doc = json.loads(out)
    assert len(doc["rows"]) == 6
    assert doc["residuals"]["matrix_route"] < 1e-9


def test_qlimits_and_ramanujan():
    status, out, _ = _run(["qlimits", "--m", "5", "--q", "0.15", "--format", "json"])
    assert status == 0 and len(json.loads(out)["rows"]) == 5
    status, out, _ = _run(["ramanujan", "--m", "6", "--q", "0.2", "--format", "json"])
    assert status == 0 and json.loads(out)["residuals"]["distinct_limits"] == 3
    status, out, _ = _run(["ramanujan", "--q", "0.2", "--format", "json"])
    assert status == 0 and len(json.loads(out)["rows"]) == 3


@pytest.mark.parametrize("construction", ["theorem4", "three", "rational"])
def test_bernoulli_command(construction):
    argv = ["bernoulli", "--construction", construction, "--z", "0.3"]
    if construction == "rational":
        argv += ["--ca", "harmonic:v=1,c=0.5"]
    status, out, _ = _run(argv)
    assert status == 0 and len(_csv_rows(out)) >= 2


def test_bernoulli_rational_equal_terms_exit_one():
    argv = ["bernoulli", "--construction", "rational", "--ca", "harmonic:v=1,c=1"]
    assert _run(argv)[0] == cli.EXIT_INVALID


def test_verify_passes():
    status, out, _ = _run(["verify", "--format", "json"])
    assert status == 0
    assert all(r["passed"] for r in json.loads(out)["rows"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mlcf", "rank", "--omega1", "1/5", "--omega2", "4/5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[1].endswith(",5")
