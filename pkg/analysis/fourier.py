"""
Fourier coefficients, partial sums S_k f and the Dirichlet kernel.

Partial sums are available through two independent routes: from the coefficient
vector (Clenshaw recurrence or direct summation) and as the kernel integral
(1/pi) * int_0^pi phi_x(t) D_k(t) dt, which equals S_k f(x) - f(x).
"""
import logging
from typing import Iterable, Optional, Sequence

import numpy as np

from analysis.characteristics import phi_breakpoints, phi_x
from analysis.corpus import eval_wrapped
from analysis.quadrature import composite_rule
from schemas.corpus_schemas import TestFunction
from schemas.fourier_schemas import FourierSeries, QuadratureSpec
from utils.errors import PreconditionError
from utils.settings import QUAD_CELLS, QUAD_POINTS

logger = logging.getLogger(__name__)

DEFAULT_QUAD = QuadratureSpec(cells=QUAD_CELLS, points_per_cell=QUAD_POINTS)

# Below this |t| the kernel switches to the sinc-ratio form, whose Taylor expansion is
# (k+1/2) * (1 - ((k+1/2)**2 - 1/4) * t**2 / 6 + O(t**4)).
KERNEL_THRESHOLD = 1e-4


# ==================== Coefficients ====================

def compute_coefficients(f: TestFunction, N: int, M: int) -> FourierSeries:
    """
    Coefficients from M equispaced samples by discrete orthogonality.

    The sums are the trapezoid rule on [-pi, pi), evaluated with a real FFT.

    Args:
        f: Corpus function
        N: Degree of the returned series
        M: Number of samples, at least 2N + 2

    Returns:
        FourierSeries: a_0..a_N, b_1..b_N
    """
    if N < 0:
        raise PreconditionError(f"degree must be nonnegative (got {N})")
    if M < 2 * N + 2:
        raise PreconditionError(f"aliasing: requires M >= 2N + 2 (got N={N}, M={M})")

    x = -np.pi + 2.0 * np.pi * np.arange(M) / M
    values = eval_wrapped(f, x)
    spectrum = np.fft.rfft(values)[: N + 1]
    # Sample grid starts at -pi, which multiplies the k-th bin by (-1)**k
    spectrum = spectrum * (-1.0) ** np.arange(N + 1)
    a = 2.0 / M * spectrum.real
    b = -2.0 / M * spectrum.imag
    return FourierSeries(a0=float(a[0]), a=a[1:].copy(), b=b[1:].copy())


def coefficients_by_quadrature(
        f: TestFunction,
        N: int,
        quad: QuadratureSpec = DEFAULT_QUAD
) -> FourierSeries:
    """Coefficients by composite Gauss-Legendre, split and graded at the singular points."""
    breakpoints = [float(s) for s in f.singular_locations]
    nodes, weights = composite_rule(-np.pi, np.pi, quad, breakpoints)
    weighted = eval_wrapped(f, nodes) * weights
    k = np.arange(N + 1)
    angles = np.outer(k, nodes)
    a = np.cos(angles) @ weighted / np.pi
    b = np.sin(angles) @ weighted / np.pi
    return FourierSeries(a0=float(a[0]), a=a[1:], b=b[1:])


def series_for(f: TestFunction, N: int, quad: Optional[QuadratureSpec] = None) -> FourierSeries:
    """Analytic coefficients when the corpus has a closed form, quadrature otherwise."""
    if f.analytic_coeffs is not None:
        k = np.arange(N + 1)
        a, b = f.analytic_coeffs(k)
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return FourierSeries(a0=float(a[0]), a=a[1:].copy(), b=b[1:].copy())
    logger.debug(f"No closed form for {f.name}, integrating {N + 1} coefficients")
    return coefficients_by_quadrature(f, N, quad or DEFAULT_QUAD)


# ==================== Partial sums ====================

def _check_order(series: FourierSeries, k: int) -> None:
    if not 0 <= k <= series.degree:
        raise PreconditionError(f"requires 0 <= k <= degree (got k={k}, degree={series.degree})")


def partial_sum(series: FourierSeries, k: int, x, method: str = "clenshaw"):
    """
    S_k f(x) = a_0/2 + sum_{j<=k} (a_j cos jx + b_j sin jx).

    Args:
        series: Coefficients
        k: Order, 0 <= k <= degree
        x: Scalar or array of points
        method: "clenshaw" or "direct"
    """
    _check_order(series, k)
    x_arr = np.asarray(x, dtype=float)
    if method == "direct":
        j = np.arange(1, k + 1)
        angles = np.multiply.outer(x_arr, j)
        value = series.a0 / 2.0 + np.cos(angles) @ series.a[:k] + np.sin(angles) @ series.b[:k]
    elif method == "clenshaw":
        value = _clenshaw(series, k, x_arr)
    else:
        raise PreconditionError(f"unknown summation method '{method}'")
    if np.ndim(x) == 0:
        return float(value)
    return value


def _clenshaw(series: FourierSeries, k: int, x: np.ndarray) -> np.ndarray:
    # y_j = c_j + 2 cos(x) y_{j+1} - y_{j+2}, run for both coefficient vectors at once
    two_cos = 2.0 * np.cos(x)
    ya1 = np.zeros_like(x)
    ya2 = np.zeros_like(x)
    yb1 = np.zeros_like(x)
    yb2 = np.zeros_like(x)
    for j in range(k, 0, -1):
        ya1, ya2 = series.a[j - 1] + two_cos * ya1 - ya2, ya1
        yb1, yb2 = series.b[j - 1] + two_cos * yb1 - yb2, yb1
    return series.a0 / 2.0 + np.cos(x) * ya1 - ya2 + np.sin(x) * yb1


def partial_sums_table(series: FourierSeries, x_values, k_max: int) -> np.ndarray:
    """
    Matrix of S_k f(x) for k = 0..k_max (rows) and every x (columns).

    Cumulative direct summation; the batched evaluator behind strong means.
    """
    _check_order(series, k_max)
    x = np.atleast_1d(np.asarray(x_values, dtype=float))
    j = np.arange(1, k_max + 1)
    angles = np.multiply.outer(j, x)
    terms = series.a[:k_max, None] * np.cos(angles) + series.b[:k_max, None] * np.sin(angles)
    table = np.empty((k_max + 1, x.size))
    table[0] = series.a0 / 2.0
    table[1:] = series.a0 / 2.0 + np.cumsum(terms, axis=0)
    return table


# ==================== Dirichlet kernel ====================

def dirichlet_kernel(k, t):
    """D_k(t) = sin((k+1/2)t) / (2 sin(t/2)), limit k + 1/2 at t = 0."""
    t_arr = np.asarray(t, dtype=float)
    m = np.asarray(k, dtype=float) + 0.5
    small = np.abs(t_arr) < KERNEL_THRESHOLD
    denominator = np.where(small, 1.0, 2.0 * np.sin(t_arr / 2.0))
    direct = np.sin(m * t_arr) / denominator
    near_zero = m * np.sinc(m * t_arr / np.pi) / np.sinc(t_arr / (2.0 * np.pi))
    value = np.where(small, near_zero, direct)
    if np.ndim(value) == 0:
        return float(value)
    return value


def kernel_deviations(
        f: TestFunction,
        ks: Sequence[int],
        x: float,
        quad: QuadratureSpec = DEFAULT_QUAD
) -> np.ndarray:
    """(1/pi) int_0^pi phi_x(t) D_k(t) dt for every k in ks, sharing one node set."""
    ks = np.atleast_1d(np.asarray(ks, dtype=int))
    nodes, weights = composite_rule(0.0, np.pi, quad, phi_breakpoints(f, x, 0.0, np.pi))
    weighted_phi = phi_x(f, x, nodes) * weights
    kernels = dirichlet_kernel(ks[:, None], nodes[None, :])
    return kernels @ weighted_phi / np.pi


def partial_sum_deviation_via_kernel(
        f: TestFunction,
        k: int,
        x: float,
        quad: QuadratureSpec = DEFAULT_QUAD
) -> float:
    return float(kernel_deviations(f, [k], x, quad)[0])


# ==================== Diagnostics ====================

def parseval_error(f: TestFunction, series: FourierSeries, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Relative gap between a0^2/2 + sum(a_k^2 + b_k^2) and (1/pi) int f^2."""
    nodes, weights = composite_rule(-np.pi, np.pi, quad, [float(s) for s in f.singular_locations])
    energy = float(np.sum(eval_wrapped(f, nodes) ** 2 * weights)) / np.pi
    coefficient_energy = series.a0 ** 2 / 2.0 + float(np.sum(series.a ** 2 + series.b ** 2))
    if energy == 0.0:
        return abs(coefficient_energy)
    return abs(coefficient_energy - energy) / energy


def gibbs_overshoot(series: FourierSeries, k: int, window: Optional[float] = None, samples: int = 4001) -> float:
    """Maximum of S_k over (0, window], by default window = 4*pi/k."""
    _check_order(series, k)
    if window is None:
        window = 4.0 * np.pi / max(k, 1)
    x = np.linspace(window / samples, window, samples)
    return float(np.max(partial_sum(series, k, x, method="direct")))


def deviations_at(series: FourierSeries, f: TestFunction, x: float, ks: Iterable[int]) -> np.ndarray:
    """S_k f(x) - f(x) from the coefficient route for several k."""
    ks = np.asarray(list(ks), dtype=int)
    table = partial_sums_table(series, [x], int(ks.max()))
    return table[ks, 0] - eval_wrapped(f, x)
