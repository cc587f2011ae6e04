import numpy as np
import pytest
from scipy import special

from analysis.corpus import CUSP_ALPHAS, corpus_names, eval_wrapped, get_function
from analysis.fourier import (
    compute_coefficients,
    deviations_at,
    dirichlet_kernel,
    gibbs_overshoot,
    kernel_deviations,
    parseval_error,
    partial_sum,
    partial_sums_table,
    series_for,
)
from utils.errors import PreconditionError

X_GRID = np.linspace(-np.pi, np.pi, 128, endpoint=False)


def test_fft_coefficients_of_cos3():
    series = compute_coefficients(get_function("cos3"), 5, 16)
    expected = np.zeros(5)
    expected[2] = 1.0
    assert series.a0 == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(series.a, expected, atol=1e-12)
    np.testing.assert_allclose(series.b, 0.0, atol=1e-12)


def test_constant_has_a0_two():
    series = compute_coefficients(get_function("one"), 3, 8)
    assert series.a0 == pytest.approx(2.0)
    assert partial_sum(series, 3, 1.234) == pytest.approx(1.0)


def test_sine_coefficients_of_sawtooth():
    series = compute_coefficients(get_function("sawtooth"), 4, 4096)
    exact = [2.0, -1.0, 2.0 / 3.0, -0.5]
    np.testing.assert_allclose(series.b, exact, atol=1e-4)


def test_aliasing_guard():
    with pytest.raises(PreconditionError, match="aliasing"):
        compute_coefficients(get_function("cos"), 10, 21)


def test_clenshaw_matches_direct():
    series = series_for(get_function("squarewave"), 50)
    x = np.linspace(-3.0, 3.0, 41)
    for k in (0, 1, 17, 50):
        np.testing.assert_allclose(
            partial_sum(series, k, x, method="clenshaw"),
            partial_sum(series, k, x, method="direct"),
            atol=1e-12,
        )


def test_partial_sum_order_checked():
    series = series_for(get_function("cos"), 3)
    with pytest.raises(PreconditionError):
        partial_sum(series, 4, 0.0)
    with pytest.raises(PreconditionError):
        partial_sum(series, 2, 0.0, method="fejer")


def test_partial_sums_table_rows():
    series = series_for(get_function("squarewave"), 12)
    x = np.array([0.3, 1.1])
    table = partial_sums_table(series, x, 12)
    assert table.shape == (13, 2)
    np.testing.assert_allclose(table[7], partial_sum(series, 7, x), atol=1e-13)


def test_dirichlet_kernel():
    assert dirichlet_kernel(3, 0.0) == pytest.approx(3.5)
    assert dirichlet_kernel(3, 1e-6) == pytest.approx(3.5, rel=1e-9)
    t = 0.7
    assert dirichlet_kernel(5, t) == pytest.approx(0.5 + sum(np.cos(j * t) for j in range(1, 6)), abs=1e-13)


def test_kernel_route_agrees_with_coefficients():
    f = get_function("squarewave")
    ks = [0, 1, 5, 20]
    series = series_for(f, 20)
    np.testing.assert_allclose(kernel_deviations(f, ks, 1.0), deviations_at(series, f, 1.0, ks), atol=1e-6)


@pytest.mark.parametrize("name", corpus_names())
def test_kernel_route_agrees_across_the_grid(name):
    f = get_function(name)
    ks = np.arange(65)
    series = series_for(f, 64)
    table = partial_sums_table(series, X_GRID, 64)
    for j, x in enumerate(X_GRID):
        coefficient_route = table[:, j] - eval_wrapped(f, x)
        np.testing.assert_allclose(kernel_deviations(f, ks, float(x)), coefficient_route, atol=1e-6, err_msg=f"x={x}")


def test_partial_sums_are_linear():
    alpha, beta = 2.5, -0.75
    s, t = series_for(get_function("squarewave"), 32), series_for(get_function("cusp0.5"), 32)
    combined = s.combine(alpha, t, beta)
    for k in (0, 1, 7, 32):
        np.testing.assert_allclose(
            partial_sum(combined, k, X_GRID),
            alpha * partial_sum(s, k, X_GRID) + beta * partial_sum(t, k, X_GRID),
            atol=1e-12,
        )


def test_combine_truncates_to_common_degree():
    combined = series_for(get_function("cos"), 4).combine(1.0, series_for(get_function("cos3"), 9), 1.0)
    assert combined.degree == 4
    assert combined.a[0] == pytest.approx(1.0) and combined.a[2] == pytest.approx(1.0)


def test_trig_polynomial_partial_sums_are_exact():
    f = get_function("cos3")
    series = series_for(f, 8)
    np.testing.assert_allclose(deviations_at(series, f, 0.4, range(3, 9)), 0.0, atol=1e-14)


def test_parseval():
    assert parseval_error(get_function("cos3"), series_for(get_function("cos3"), 5)) < 1e-12
    assert parseval_error(get_function("squarewave"), series_for(get_function("squarewave"), 2000)) < 1e-3


@pytest.mark.parametrize("alpha", CUSP_ALPHAS)
def test_parseval_error_decreases_for_cusps(alpha):
    f = get_function(f"cusp{alpha}")
    errors = [parseval_error(f, series_for(f, n)) for n in (8, 16, 32, 64, 128)]
    assert all(later < earlier for earlier, later in zip(errors, errors[1:]))


def test_gibbs_overshoot():
    series = series_for(get_function("squarewave"), 2048)
    limit = 2.0 / np.pi * special.sici(np.pi)[0]
    assert gibbs_overshoot(series, 2048) == pytest.approx(limit, abs=1e-3)
