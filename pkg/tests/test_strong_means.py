import math

import numpy as np
import pytest

from analysis.corpus import get_function
from analysis.fourier import series_for
from analysis.strong_means import (
    abel_scheme,
    block_scheme,
    cesaro_scheme,
    dyadic_blocks,
    get_growth,
    get_scheme,
    h_lambda_phi,
    h_lambda_phi_values,
    lambda_class_check,
    parse_indices,
    partial_sum_deviations,
    phi_class_check,
    strong_mean_hq,
    theorem3_scheme,
)
from schemas.means_schemas import GrowthFunction
from utils.errors import PreconditionError, TruncationError


def test_parse_indices():
    assert parse_indices("arith:3").indices == [0, 1, 2, 3]
    assert parse_indices("lacunary:3").indices == [1, 2, 4, 8]
    assert parse_indices("shifted:3,4").indices == [3, 4, 5, 6, 7]
    explicit = parse_indices("1, 4, 9")
    assert explicit.indices == [1, 4, 9]
    assert explicit.kr == 9 and explicit.r == 2


@pytest.mark.parametrize("spec", ["bogus:3", "arith:x", "3,2", "shifted:4"])
def test_parse_indices_rejects(spec):
    with pytest.raises(PreconditionError):
        parse_indices(spec)


def test_strong_mean_vanishes_past_the_degree():
    f = get_function("cos3")
    series = series_for(f, 7)
    assert strong_mean_hq(f, series, 0.4, parse_indices("shifted:3,4"), 2.0) == pytest.approx(0.0, abs=1e-14)


def test_strong_mean_is_a_power_mean():
    f = get_function("squarewave")
    series = series_for(f, 16)
    idx = parse_indices("arith:16")
    x = np.array([0.5, 1.0, 2.0])
    h1 = strong_mean_hq(f, series, x, idx, 1.0)
    h2 = strong_mean_hq(f, series, x, idx, 2.0)
    assert h1.shape == (3,)
    assert np.all(h1 <= h2 + 1e-15)
    manual = np.mean(np.abs(partial_sum_deviations(f, series, 1.0, idx.as_array())[:, 0]))
    assert h1[1] == pytest.approx(manual)


def test_strong_mean_preconditions():
    f = get_function("cos")
    series = series_for(f, 4)
    with pytest.raises(PreconditionError):
        strong_mean_hq(f, series, 0.0, parse_indices("arith:4"), 0.0)
    with pytest.raises(PreconditionError, match="exceeds series degree"):
        strong_mean_hq(f, series, 0.0, parse_indices("arith:5"), 2.0)


def test_theorem3_weights():
    scheme = theorem3_scheme(3, dyadic_blocks(5))
    weights = scheme(np.arange(12), 0.0)
    expected = np.where((np.arange(12) >= 3) & (np.arange(12) <= 8), 1.0 / 9.0, 0.0)
    np.testing.assert_allclose(weights, expected)
    assert scheme.support_bound(0.0) == 8
    with pytest.raises(PreconditionError):
        theorem3_scheme(6, dyadic_blocks(5))


def test_block_scheme_matches_theorem3():
    blocks = dyadic_blocks(6)
    nu = np.arange(70)
    for m in (1, 2, 5):
        np.testing.assert_allclose(block_scheme(blocks)(nu, m), theorem3_scheme(m, blocks)(nu, 0.0))


def test_first_block_starts_at_zero():
    weights = theorem3_scheme(1, dyadic_blocks(3))(np.arange(4), 0.0)
    np.testing.assert_allclose(weights, [1 / 3, 1 / 3, 1 / 3, 0.0])


def test_abel_weights_sum_to_one():
    scheme = abel_scheme(dyadic_blocks(4))
    assert scheme(np.arange(20000), 10.0).sum() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(PreconditionError):
        scheme(np.arange(3), 1.0)


def test_h_lambda_phi_block_scheme():
    f = get_function("squarewave")
    blocks = dyadic_blocks(4)
    series = series_for(f, 16)
    scheme = block_scheme(blocks)
    result = h_lambda_phi(f, series, 1.0, scheme, get_growth("identity"), 3)
    nu = np.arange(3, 9)
    manual = np.sum(np.abs(partial_sum_deviations(f, series, 1.0, nu)[:, 0])) / 9.0
    assert result.value == pytest.approx(manual)
    assert result.truncation_index == 8
    assert result.tail_bound == 0.0


def test_h_lambda_phi_values_vectorized():
    f = get_function("cusp0.5")
    series = series_for(f, 32)
    scheme = cesaro_scheme(dyadic_blocks(5))
    phi = get_growth("power2")
    xs = np.array([0.0, 1.0])
    values = h_lambda_phi_values(f, series, xs, scheme, phi, 32)
    assert values[1] == pytest.approx(h_lambda_phi(f, series, 1.0, scheme, phi, 32).value)


def test_truncation_errors():
    f = get_function("cos")
    series = series_for(f, 10)
    identity = get_growth("identity")
    with pytest.raises(TruncationError, match="support"):
        h_lambda_phi(f, series, 0.0, cesaro_scheme(dyadic_blocks(4)), identity, 20)
    with pytest.raises(TruncationError, match="tail"):
        h_lambda_phi(f, series, 0.0, abel_scheme(dyadic_blocks(4)), identity, 50)


def test_abel_with_enough_terms_certifies_tail():
    f = get_function("cos")
    series = series_for(f, 2000)
    result = h_lambda_phi(f, series, 0.0, abel_scheme(dyadic_blocks(4)), get_growth("identity"), 20)
    assert result.truncation_index == 2000
    assert result.tail_bound <= 1e-10
    # S_0 cos = 0, every later partial sum is exact
    assert result.value == pytest.approx(1.0 / 20.0, rel=1e-9)


def test_growth_functions():
    assert get_growth("power3").name == "power3"
    assert get_growth("power0.5")(4.0) == pytest.approx(2.0)
    for name in ("cubic", "powerx"):
        with pytest.raises(PreconditionError):
            get_growth(name)
    with pytest.raises(PreconditionError):
        get_scheme("riesz", dyadic_blocks(3))


def test_phi_class_membership():
    assert phi_class_check(get_growth("identity")).member
    power = phi_class_check(get_growth("power2"))
    assert power.member
    assert power.doubling_constant == pytest.approx(4.0)
    report = phi_class_check(get_growth("expsquare"))
    assert not report.member
    assert any("log phi" in reason for reason in report.reasons)


@pytest.mark.parametrize("q", [0.5, 9, 10, 12, 30])
def test_every_power_is_in_phi(q):
    report = phi_class_check(get_growth(f"power{q}"))
    assert report.member, report.reasons
    assert report.doubling_constant == pytest.approx(2.0 ** q, rel=1e-9)


def test_phi_rejects_superlinear_log_growth():
    phi = GrowthFunction(name="ulogu", phi=lambda u: np.expm1(u * np.log1p(u) / 10.0))
    report = phi_class_check(phi)
    assert not report.member
    assert any("grows on the tail" in reason for reason in report.reasons)


def test_phi_rejects_flat_start():
    phi = GrowthFunction(name="flat", phi=lambda u: np.where(u > 0.0, np.exp(-1.0 / np.maximum(u, 1e-300)), 0.0))
    report = phi_class_check(phi)
    assert not report.member
    assert report.doubling_constant == math.inf


def test_phi_grid_must_cover_both_sides():
    with pytest.raises(PreconditionError):
        phi_class_check(get_growth("identity"), np.linspace(0.1, 0.9, 9))


def test_lambda_class_of_block_scheme():
    report = lambda_class_check(block_scheme(dyadic_blocks(8)), 2.0, range(1, 7))
    assert report.member
    assert report.worst_ratio == pytest.approx(math.sqrt(4.0 / 3.0))
    assert report.ratios[2] == pytest.approx(1.0)


def test_lambda_class_zero_block():
    report = lambda_class_check(block_scheme(dyadic_blocks(8)), 2.0, [3], u=1)
    assert not report.member
    assert report.worst_ratio == math.inf
    with pytest.raises(PreconditionError):
        lambda_class_check(block_scheme(dyadic_blocks(8)), 1.0, [3])
