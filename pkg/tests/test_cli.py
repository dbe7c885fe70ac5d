import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from reverse_bernstein.cli import OutputEnvelope, main
from reverse_bernstein.piecewise import CirclePiecewisePoly
from reverse_bernstein.waves import make_extremal

PI = np.pi


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_constants_json_and_csv_agree(capsys):
    code, out = run(capsys, "constants", "--k", "1", "--m", "1", "--m-max", "2")
    assert code == 0
    env = OutputEnvelope.from_json(out)
    assert env.command == "constants" and env.parameters["m"] == [1, 2]
    c = [r["C_km"] for r in env.results]
    assert c[0] == pytest.approx(2 / PI, rel=1e-12) and c[1] == pytest.approx(8 / PI**2, rel=1e-12)
    code, out = run(capsys, "constants", "--k", "1", "--m", "1", "--m-max", "2", "--format", "csv")
    assert code == 0
    assert [float(r["C_km"]) for r in rows(out)] == c
    assert [r["B_m"] for r in rows(out)] == ["1", "1/2"]


def test_constants_cross_validate(capsys):
    code, out = run(capsys, "constants", "--k-max", "2", "--m-max", "3", "--cross-validate")
    assert code == 0
    res = json.loads(out)["results"]
    assert len(res) == 6 and all(r["cross_validated"] for r in res)


@pytest.mark.parametrize(
    "argv",
    [
        ["constants", "--m", "0"],
        ["constants", "--k", "65"],
        ["constants", "--m", "3", "--m-max", "2"],
        ["extremal", "--k", "1"],
        ["verify", "--k", "2", "--m", "1", "--band", "1"],
        ["verify", "--k", "1", "--m", "1", "--band", "5000"],
        ["sweep", "--k-max", "0", "--m-max", "1"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2
    assert capsys.readouterr().err


def test_extremal_round_trip(capsys):
    code, out = run(capsys, "extremal", "--k", "2", "--m", "3")
    assert code == 0
    env = OutputEnvelope.from_json(out)
    f = CirclePiecewisePoly.from_json_obj(env.results["function"])
    assert f == make_extremal(2, 3)
    assert env.results["sup_norm"] == pytest.approx(env.results["D_km"], rel=1e-14)
    code, out = run(capsys, "extremal", "--k", "1", "--m", "1", "--format", "csv", "--samples", "8")
    r = rows(out)
    assert len(r) == 8
    assert float(r[3]["x"]) == pytest.approx(0.0, abs=1e-15)
    assert float(r[3]["value"]) == pytest.approx(PI / 2)


def test_interpolate(capsys):
    code, out = run(capsys, "interpolate", "--k", "3", "--m", "2")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["zero_structure"]["passed"] and res["zero_structure"]["n_zeros"] == 6
    assert abs(res["discrepancy"]) < 1e-9
    code, out = run(capsys, "interpolate", "--k", "3", "--m", "2", "--format", "csv")
    r = rows(out)
    assert sum(x["quantity"] == "coeff" for x in r) == 5
    assert sum(x["quantity"] == "zero_over_pi" for x in r) == 6


def test_interpolate_failure_exit_1(capsys):
    # a zero tolerance turns the round-off in the L1 identity into a reported failure
    code, out = run(capsys, "interpolate", "--k", "3", "--m", "2", "--tol", "0")
    assert code == 1
    assert json.loads(out)["results"]["discrepancy"] != 0


def test_verify(capsys, tmp_path):
    path = tmp_path / "v.json"
    code, out = run(capsys, "verify", "--k", "2", "--m", "1", "--trials", "10", "--band", "16", "--forward", "--output", str(path))
    assert code == 0 and out == ""
    env = OutputEnvelope.from_json(path.read_text())
    assert env.results["reverse"]["failures"] == 0 and env.results["forward"]["trials"] == 10
    code, out = run(capsys, "verify", "--k", "2", "--m", "1", "--trials", "10", "--band", "16", "--format", "csv")
    r = rows(out)
    assert len(r) == 10 and all(x["passed"] == "True" for x in r)


def test_sweep_csv_is_deterministic(capsys):
    argv = ["sweep", "--k-max", "2", "--m-max", "2", "--trials", "10", "--seed", "3", "--band", "16", "--format", "csv"]
    code1, out1 = run(capsys, *argv)
    code2, out2 = run(capsys, *argv)
    assert code1 == code2 == 0 and out1 == out2
    r = rows(out1)
    assert list(r[0]) == ["k", "m", "min_margin", "saturation_gap", "trials", "failures"]
    assert [(x["k"], x["m"]) for x in r] == [("1", "1"), ("1", "2"), ("2", "1"), ("2", "2")]
    assert all(x["failures"] == "0" for x in r)


def test_sweep_saturation_only(capsys):
    code, out = run(capsys, "sweep", "--k-max", "2", "--m-max", "3", "--trials", "0", "--format", "csv")
    assert code == 0
    assert all(x["trials"] == "0" and float(x["saturation_gap"]) == 0 for x in rows(out))


def test_envelope_round_trip():
    env = OutputEnvelope("x", {"a": [1, 2]}, {"v": 0.1 + 0.2, "s": "1/3"})
    assert OutputEnvelope.from_json(env.to_json()) == env


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "reverse_bernstein.cli", "constants", "--m", "3", "--format", "csv"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert float(rows(out)[0]["C_km"]) == pytest.approx(24 / PI**3, rel=1e-12)
