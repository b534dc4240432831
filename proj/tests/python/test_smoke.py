import math

import pytest

import polyrad

CUBIC = """
name = "cubic"
dimension = 1
term = { exps = [3], coeff = "1" }
"""

CIRCLE_WITH_SWEEP = """
name = "circle"
dimension = 2
term = { exps = [2, 0], coeff = "1" }
term = { exps = [0, 2], coeff = "1" }
sublevel = { r = 0.25, eps_min = 1e-5, eps_max = 1e-2, eps_count = 8, budget = 60000, seed = 3 }
"""

CUBIC_WITH_BOX_TEST = """
name = "cubic"
dimension = 1
term = { exps = [3], coeff = "1" }
sharpness = { p = "2", q = "4", s = "1/10", r_list = [0.125, 0.0625, 0.03125, 0.015625], grid = [128, 512], cutoff = 8, seed = 5 }
"""


def test_analyze_cubic_exact():
    doc = polyrad.analyze(CUBIC)
    assert doc["d"] == "3"
    assert doc["o"] == 0
    assert doc["a0"] == "1/3"
    assert doc["a0_source"] == "exact"
    assert doc["g"] == "1/3"
    assert doc["k"] == "1"
    assert doc["case"] == "subcritical"


def test_region_plane_is_exact():
    doc = polyrad.region(CUBIC)
    assert doc["plane"]["slope"] == "4/3"
    assert doc["plane"]["rhs"] == "1/3"
    labels = {piece["label"] for piece in doc["pieces"]}
    assert {"Z", "Z1", "Z2"} <= labels


def test_slice_trapezoid():
    doc = polyrad.slice_polygon(CUBIC)
    assert doc["polygon"] == [["0", "0"], ["1/2", "1/4"], ["3/4", "1/2"], ["1", "1"]]
    assert doc["excluded_line_applies"] is True
    assert doc["excluded_offset"] == "1/4"


def test_svg_renders():
    svg = polyrad.render_svg(CUBIC)
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")


def test_bad_document_raises_value_error():
    with pytest.raises(ValueError) as err:
        polyrad.analyze('name = "broken"\ndimension = 1\n')
    assert "term" in str(err.value)


def test_sublevel_sweep_matches_quarter_disk():
    out = polyrad.verify_sublevel(CIRCLE_WITH_SWEEP)
    fit = out["fit"]
    assert fit["stable"] is True
    assert math.isclose(fit["a0_hat"], 1.0, abs_tol=0.08)
    assert fit["predicted_a0"] == "1"
    assert fit["verdict"] == "consistent"
    assert out["csv"].splitlines()[0] == "eps,measure,stderr"


def test_sharpness_box_test_sees_growth():
    out = polyrad.verify_sharpness(CUBIC_WITH_BOX_TEST)
    report = out["report"]
    assert report["predicted_exponent"] == "-3/10"
    assert report["verdict"] == "GrowthObserved"
    assert abs(report["observed_slope"] + 0.3) < 0.06
