import io
import json
import math
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

from qwabsorb.cli import (
    FormatUnsupported,
    OutputEnvelope,
    canonical_json,
    dispatch,
    emit,
)
from qwabsorb.core import DEFAULT_TOL

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "output_schema.json").read_text())


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_simulate_two_sites():
    code, out, _ = run("simulate", "--n", "2", "--k", "1", "--state", "R", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert abs(doc["results"]["p_left"] - 0.5) < 1e-15
    assert doc["wall_time_ms"] is None


def test_conjecture_csv_is_exact():
    code, out, _ = run("conjecture", "--max-n", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["N,value", "1,0/1", "2,1/2", "3,2/3", "4,7/10", "5,12/17"]


def test_corollary_diverged_exit_code():
    code, out, _ = run("corollary", "--n", "3", "--method", "lemma")
    assert code == 3
    assert json.loads(out)["results"]["status"] == "Diverged"


def test_corollary_solve():
    code, out, _ = run("corollary", "--n", "3", "--method", "solve")
    assert code == 0
    assert abs(json.loads(out)["results"]["value"] - 2 / 3) < 1e-10


def test_gf_command():
    code, out, _ = run("gf", "--method", "solve", "--n", "3", "--k", "1", "--z", "0,1")
    assert code == 0
    r = json.loads(out)["results"]["value"]["r"]
    assert abs(r["re"]) < 1e-15 and abs(r["im"] + 1 / 3) < 1e-15


def test_gf_negative_z_and_degenerate_point():
    code, out, _ = run("gf", "--method", "lemma", "--n", "3", "--z=-0.5,0.2")
    assert code == 0
    code, out, _ = run("gf", "--method", "lemma", "--n", "3", "--z", "0,0")
    assert code == 3
    assert json.loads(out)["results"]["error"] == "DegeneratePoint"


def test_absorb_and_semi():
    code, out, _ = run("absorb", "--n", "3", "--state", "R")
    assert code == 0
    assert abs(json.loads(out)["results"]["probability"] - 2 / 3) < 1e-10
    code, out, _ = run("semi", "--k", "1", "--state", "R", "--tmax", "500", "--extrapolate")
    res = json.loads(out)["results"]
    assert code == 0 and abs(res["richardson"] - 2 / math.pi) < 1e-6


def test_simulate_not_converged():
    code, out, _ = run("simulate", "--n", "30", "--max-steps", "5")
    assert code == 3
    assert json.loads(out)["results"]["converged"] is False


def test_poles_table():
    code, out, _ = run("poles", "--format", "table")
    assert code == 3
    assert "modulus" in out.splitlines()[0]


@pytest.mark.parametrize("argv", [
    ["simulate"],
    ["simulate", "--n", "2", "--state", "X"],
    ["simulate", "--n", "2", "--state", "1,0,1,0"],
    ["simulate", "--n", "1"],
    ["verify", "--n-range", "1..3"],
    ["bogus"],
    ["gf", "--method", "solve", "--n", "3", "--z", "0.5,0", "--format", "csv"],
    ["poles", "--quad-tol", "-1"],
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == "" and err
    assert "usage:" in err or "error" in err


def test_global_flags_after_subcommand():
    code, out, _ = run("corollary", "--n", "2", "--quad-tol", "1e-9", "--grid-doublings", "4")
    doc = json.loads(out)
    assert doc["tolerances"]["quad_tol"] == 1e-9
    assert doc["tolerances"]["max_grid_doublings"] == 4


def test_timing_flag():
    code, out, _ = run("conjecture", "--max-n", "3", "--timing")
    assert isinstance(json.loads(out)["wall_time_ms"], int)


def test_canonical_json_formatting():
    env = OutputEnvelope("conjecture", {"b": 1, "a": 2},
                         {"x": Fraction(2, 3), "z": 1 + 2j, "f": 0.1, "n": float("nan"), "i": 1.0},
                         DEFAULT_TOL)
    text = emit(env)
    assert text == emit(env)
    doc = json.loads(text)
    assert list(doc["params"]) == ["a", "b"]
    assert doc["results"] == {"x": "2/3", "z": {"re": 1.0, "im": 2.0}, "f": 0.1, "n": "NaN", "i": 1.0}
    assert '"f": 0.10000000000000001' in text
    assert '"i": 1.0' in text


def test_csv_needs_table():
    env = OutputEnvelope("poles", {}, {"a": 1}, DEFAULT_TOL)
    with pytest.raises(FormatUnsupported):
        emit(env, "csv")


def test_round_trip_structure():
    payload = {"rows": [{"N": 2, "v": 0.5}], "flag": True, "none": None}
    assert json.loads(canonical_json(payload)) == payload
