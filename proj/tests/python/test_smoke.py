import json
import os
import pathlib
import subprocess
from fractions import Fraction

import pytest

import knotconc

DATA = pathlib.Path(__file__).resolve().parents[2] / "data" / "examples.json"
TREFOIL = [[-1, 1], [0, -1]]


def examples():
    return json.loads(DATA.read_text())


def test_alexander_poly():
    assert knotconc.alexander_poly(TREFOIL) == "t^2 - t + 1"
    assert knotconc.alexander_poly([[0, 2], [1, 0]]) == "2t^2 - 5t + 2"


def test_rho0_encloses_minus_four_thirds():
    mid, radius = knotconc.rho0(TREFOIL, "1e-9")
    assert abs(Fraction(mid) + Fraction(4, 3)) <= Fraction(radius)
    assert Fraction(radius) <= Fraction(1, 10**9)


def test_arf_and_depth():
    assert knotconc.arf(TREFOIL) == 1
    assert knotconc.derived_depth("[[x1,x2],[x3,x4]]", 4) == (2, False)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        knotconc.alexander_poly([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        knotconc.derived_depth("[x1,x3]", 2)


def test_fos_and_verdict_with_a_document():
    doc = examples()
    fos = knotconc.fos("eight9_infected", doc)
    assert sorted(s["term"]["text"] for s in fos["signatures"]) == ["2 rho0(K1)", "2 rho0(K1)", "rho0(K1)"]
    assert knotconc.verdict("eight9_infected", doc)["conclusion"] == "NOT_SLICE"


def test_run_mirrors_the_command_line():
    code, out, err = knotconc.run(["rho0", "trefoil"])
    assert code == 0
    assert out == "-1.333333333 ± 1e-9\n"
    code, _, err = knotconc.run(["alex", "no_such_knot"])
    assert code == 1 and err


@pytest.mark.skipif("KNOTCONC_CLI" not in os.environ, reason="command-line binary not provided")
def test_binary_json_output():
    cli = os.environ["KNOTCONC_CLI"]
    out = subprocess.run(
        [cli, "--doc", str(DATA), "verdict", "highersigs_equal", "--json"],
        check=True, capture_output=True, text=True,
    ).stdout
    v = json.loads(out)
    assert v["conclusion"] == "NOT_SLICE_CONDITIONAL"
    assert v["condition"] == "rho0(K) not in {0, -1/2 rho1(nine46)}"
