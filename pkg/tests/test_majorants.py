import numpy as np
import pytest

from analysis.characteristics import gabisonia
from analysis.corpus import corpus_names, get_function
from analysis.majorants import calibrate, majorant, validate_majorant
from utils.errors import PreconditionError


def test_exponent_is_capped_by_s(coarse_quad):
    _, exponent = calibrate(get_function("cusp0.5"), 0.0, quad=coarse_quad)
    assert exponent == pytest.approx(1.0 / 3.0)
    _, exponent = calibrate(get_function("cusp0.25"), 0.0, s=2.0, quad=coarse_quad)
    assert exponent == pytest.approx(0.25)
    _, exponent = calibrate(get_function("cos"), 1.0, s=3.0, quad=coarse_quad)
    assert exponent == pytest.approx(2.0 / 3.0)


def test_majorant_dominates_on_grid(coarse_quad):
    f = get_function("cusp0.5")
    for j in (0, 3, 7):
        delta = np.pi * 2.0 ** -j
        assert gabisonia(f, 0.0, delta, 1.0, 1.5, coarse_quad) <= majorant(f, 0.0, delta, quad=coarse_quad)


def test_validate_majorant(coarse_quad):
    report = validate_majorant(get_function("cusp0.5"), 0.0, quad=coarse_quad)
    assert report.valid
    assert report.s == 1.5


def test_calibrated_for_any_s_above_one(coarse_quad):
    f = get_function("cusp0.5")
    _, exponent = calibrate(f, 0.0, s=1.2, quad=coarse_quad)
    assert exponent == pytest.approx(1.0 - 1.0 / 1.2)
    assert validate_majorant(f, 0.0, s=4.0 / 3.0, quad=coarse_quad).valid
    with pytest.raises(PreconditionError, match="s > 1"):
        calibrate(f, 0.0, s=1.0, quad=coarse_quad)


def test_constant_function_has_zero_majorant(coarse_quad):
    assert majorant(get_function("one"), 0.0, 0.5, quad=coarse_quad) == 0.0


def test_delta_capped_at_pi(coarse_quad):
    f = get_function("squarewave")
    assert majorant(f, 0.0, 10.0, quad=coarse_quad) == majorant(f, 0.0, np.pi, quad=coarse_quad)
    np.testing.assert_allclose(
        majorant(f, 0.0, np.array([1.0, 20.0]), quad=coarse_quad),
        [majorant(f, 0.0, 1.0, quad=coarse_quad), majorant(f, 0.0, np.pi, quad=coarse_quad)],
    )


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_majorants_validate_at_designated_points(coarse_quad, name):
    f = get_function(name)
    for x in (f.designated_points[0], f.designated_points[-1]):
        report = validate_majorant(f, x, quad=coarse_quad)
        assert report.valid, report
