"""Conversion-efficiency curve: interpolation, clamping, file loading."""

import dataclasses

import numpy as np
import pytest

from swiptdas.config import SystemConfig
from swiptdas.efficiency import (
    DEFAULT_CURVE_KNOTS,
    EfficiencyCurve,
    curve_from_config,
    default_curve,
    load_curve,
)


def test_default_curve_hits_knots():
    curve = default_curve()
    for p, eta in DEFAULT_CURVE_KNOTS:
        assert curve(p) == pytest.approx(eta, rel=1e-12)


def test_clamping_below_and_above():
    curve = default_curve()
    assert curve(1e-9) == pytest.approx(0.05)
    assert curve(10.0) == pytest.approx(0.60)


def test_two_knot_interpolation_fixture():
    # midpoint of {(0, 0.2), (10, 0.6)}: efficiency 0.4, harvest 5 * 0.4 = 2 W
    curve = EfficiencyCurve.from_knots([(0.0, 0.2), (10.0, 0.6)])
    assert curve(5.0) == pytest.approx(0.4, rel=1e-12)
    assert curve.harvested(5.0) == pytest.approx(2.0, rel=1e-12)


def test_constant_curve_harvest():
    curve = EfficiencyCurve.from_knots([(1e-9, 0.5), (1e3, 0.5)])
    assert curve.harvested(10.0) == pytest.approx(5.0, rel=1e-12)


def test_harvested_vectorized():
    curve = default_curve()
    p = np.logspace(-7, 0, 40)
    np.testing.assert_allclose(curve.harvested(p), curve(p) * p, rtol=1e-12)


def test_default_curve_monotone_harvest():
    # x * eta(x) must never decrease for a non-decreasing curve
    curve = default_curve()
    p = np.logspace(-8, 1, 2000)
    harvested = curve.harvested(p)
    assert np.all(np.diff(harvested) >= -1e-15)
    assert np.all(np.diff(curve(p)) >= -1e-15)


@pytest.mark.parametrize(
    "knots",
    [
        [(1e-3, 0.5)],                      # one knot
        [(1e-3, 0.5), (1e-3, 0.6)],         # non-increasing powers
        [(1e-2, 0.5), (1e-3, 0.6)],         # decreasing powers
        [(-1e-3, 0.5), (1e-2, 0.6)],        # negative power
        [(1e-3, -0.1), (1e-2, 0.6)],        # efficiency below 0
        [(1e-3, 0.5), (1e-2, 1.2)],         # efficiency above 1
    ],
)
def test_invalid_knots_rejected(knots):
    with pytest.raises(ValueError):
        EfficiencyCurve.from_knots(knots)


def test_zero_power_first_knot_allowed():
    curve = EfficiencyCurve.from_knots([(0.0, 0.0), (1.0, 0.5)])
    assert curve.harvested(0.0) == 0.0


def test_load_curve_file(tmp_path):
    path = tmp_path / "curve.txt"
    path.write_text(
        "# rectifier input power (W)   efficiency\n"
        "1e-6 0.05\n"
        "1e-3 0.40  # mid knot\n"
        "1e-1 0.60\n"
    )
    curve = load_curve(str(path))
    assert curve.knots() == ((1e-6, 0.05), (1e-3, 0.40), (1e-1, 0.60))


def test_curve_from_config_default_and_custom():
    assert curve_from_config(SystemConfig()).knots() == default_curve().knots()
    cfg = dataclasses.replace(
        SystemConfig(), efficiency_curve_knots=((1e-6, 0.1), (1e-1, 0.5))
    )
    assert curve_from_config(cfg).knots() == ((1e-6, 0.1), (1e-1, 0.5))
