"""
Built-in corpus of 2*pi-periodic test functions.

Every entry is a closed form on [-pi, pi) together with its catalogued singular
points and, where one exists, the closed form of its Fourier coefficients.
At a catalogued jump the periodic extension returns the midpoint of the
one-sided limits.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np
from scipy import special

from schemas.corpus_schemas import (
    MajorantSpec,
    PointClass,
    PointKind,
    SingularPoint,
    TestFunction,
)
from utils.errors import PreconditionError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi
LOCATION_TOL = 1e-12
CUSP_ALPHAS = (0.25, 0.5, 0.75)

# Eight points per function: regular points plus every catalogued singularity
REGULAR_POINTS = [-2.5, -1.3, 0.4, 1.0, np.pi / 2, 2.2]


def reduce_angle(x):
    """Reduce x modulo 2*pi into [-pi, pi)."""
    y = np.mod(np.asarray(x, dtype=float) + np.pi, TWO_PI) - np.pi
    # np.mod can round up to exactly 2*pi for tiny negative arguments
    return np.where(y >= np.pi, y - TWO_PI, y)


def circular_distance(x, y):
    return np.abs(reduce_angle(np.asarray(x, dtype=float) - np.asarray(y, dtype=float)))


def eval_wrapped(f: TestFunction, x):
    """
    Evaluate the periodic extension of f.

    At a catalogued jump the value is the midpoint of the one-sided limits, so the sawtooth
    gives 0 at +-pi rather than -pi. This is the value the Fourier series converges to and
    keeps phi_x(0+) = 0 at every jump.

    Args:
        f: Corpus function
        x: Scalar or array of finite reals

    Returns:
        float for scalar input, ndarray otherwise
    """
    y = reduce_angle(x)
    values = np.asarray(f.eval(y), dtype=float) * np.ones_like(y)
    for sp in f.jump_points:
        at_jump = circular_distance(y, sp.location) <= LOCATION_TOL
        values = np.where(at_jump, sp.point_class.midpoint, values)
    if np.ndim(x) == 0:
        return float(values)
    return values


def classify_point(f: TestFunction, x: float) -> PointClass:
    for sp in f.singular_points:
        if circular_distance(x, sp.location) <= LOCATION_TOL:
            return sp.point_class
    if f.trig_degree is not None:
        return PointClass(kind=PointKind.TRIG_POLYNOMIAL)
    return PointClass(kind=PointKind.SMOOTH)


def local_holder_exponent(f: TestFunction, x: float) -> float:
    """
    Hoelder exponent of t -> phi_x(t) at t = 0.

    At a jump with the midpoint convention phi_x vanishes linearly, so jumps count as regular.
    """
    point_class = classify_point(f, x)
    if point_class.kind == PointKind.HOLDER_CUSP:
        return float(point_class.alpha)
    if point_class.kind == PointKind.UNCLASSIFIED:
        return 0.0
    return float(f.smoothness_alpha or 1.0)


# ==================== Closed forms ====================

def _cosine_only(k, degree: int, amplitude: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    k = np.asarray(k)
    a = np.where(k == degree, amplitude, 0.0)
    if degree == 0:
        a = np.where(k == 0, 2.0 * amplitude, 0.0)
    return a.astype(float), np.zeros(k.shape, dtype=float)


def _square_wave_coeffs(k) -> Tuple[np.ndarray, np.ndarray]:
    k = np.asarray(k)
    safe_k = np.where(k == 0, 1, k)
    b = np.where(k % 2 == 1, 4.0 / (np.pi * safe_k), 0.0)
    return np.zeros(k.shape, dtype=float), b


def _sawtooth_coeffs(k) -> Tuple[np.ndarray, np.ndarray]:
    k = np.asarray(k)
    safe_k = np.where(k == 0, 1, k)
    b = np.where(k == 0, 0.0, 2.0 * (-1.0) ** (safe_k + 1) / safe_k)
    return np.zeros(k.shape, dtype=float), b


def cusp_coefficients(alpha: float, k) -> np.ndarray:
    """
    Cosine coefficients of |sin(x/2)|**alpha.

    a_k = 2 Gamma(alpha+1) / (2**alpha Gamma(alpha/2+1+k) Gamma(alpha/2+1-k)).
    For k >= 1 the reflection formula turns the second gamma into
    -sin(pi*alpha/2) Gamma(k-alpha/2) / pi, evaluated in log form.
    """
    k = np.asarray(k, dtype=float)
    lead = 2.0 * special.gamma(alpha + 1.0) / 2.0 ** alpha
    a0 = lead * special.rgamma(alpha / 2.0 + 1.0) ** 2
    safe_k = np.where(k == 0, 1.0, k)
    tail = -lead * np.sin(np.pi * alpha / 2.0) / np.pi * np.exp(
        special.gammaln(safe_k - alpha / 2.0) - special.gammaln(safe_k + alpha / 2.0 + 1.0)
    )
    return np.where(k == 0, a0, tail)


# ==================== Corpus ====================

def _jump(location: float, left: float, right: float) -> SingularPoint:
    return SingularPoint(
        location=location,
        point_class=PointClass(kind=PointKind.JUMP, left_limit=left, right_limit=right),
    )


def _cusp(alpha: float) -> TestFunction:
    return TestFunction(
        name=f"cusp{alpha:g}",
        description=f"|sin(x/2)|^{alpha:g}, Hoelder cusp at 0",
        eval=lambda y: np.abs(np.sin(np.asarray(y, dtype=float) / 2.0)) ** alpha,
        analytic_coeffs=lambda k: (cusp_coefficients(alpha, k), np.zeros(np.shape(k))),
        singular_points=[
            SingularPoint(location=0.0, point_class=PointClass(kind=PointKind.HOLDER_CUSP, alpha=alpha))
        ],
        majorant=MajorantSpec(),
        smoothness_alpha=1.0,
        sup_norm=1.0,
        designated_points=[0.0, *REGULAR_POINTS, -np.pi],
    )


def _square_wave(y):
    y = np.asarray(y, dtype=float)
    return np.where(y > 0.0, 1.0, np.where(y < 0.0, -1.0, 0.0))


def _build_corpus() -> List[TestFunction]:
    regular_and_ends = [0.0, *REGULAR_POINTS, -np.pi]
    corpus = [
        TestFunction(
            name="one",
            description="constant 1",
            eval=lambda y: np.ones_like(np.asarray(y, dtype=float)),
            analytic_coeffs=lambda k: _cosine_only(k, 0),
            majorant=MajorantSpec(),
            smoothness_alpha=1.0,
            trig_degree=0,
            sup_norm=1.0,
            designated_points=regular_and_ends,
        ),
        TestFunction(
            name="cos3",
            description="cos(3x)",
            eval=lambda y: np.cos(3.0 * np.asarray(y, dtype=float)),
            analytic_coeffs=lambda k: _cosine_only(k, 3),
            majorant=MajorantSpec(),
            smoothness_alpha=1.0,
            trig_degree=3,
            sup_norm=1.0,
            designated_points=regular_and_ends,
        ),
        TestFunction(
            name="cos",
            description="cos(x)",
            eval=lambda y: np.cos(np.asarray(y, dtype=float)),
            analytic_coeffs=lambda k: _cosine_only(k, 1),
            majorant=MajorantSpec(),
            smoothness_alpha=1.0,
            trig_degree=1,
            sup_norm=1.0,
            designated_points=regular_and_ends,
        ),
        TestFunction(
            name="squarewave",
            description="sgn(sin x)",
            eval=_square_wave,
            analytic_coeffs=_square_wave_coeffs,
            singular_points=[_jump(0.0, -1.0, 1.0), _jump(-np.pi, 1.0, -1.0)],
            majorant=MajorantSpec(),
            smoothness_alpha=1.0,
            sup_norm=1.0,
            is_continuous=False,
            designated_points=regular_and_ends,
        ),
        TestFunction(
            name="sawtooth",
            description="x on (-pi, pi), 0 at +-pi",
            # raw eval gives -pi at the wrapped end; eval_wrapped replaces it with the midpoint
            eval=lambda y: np.asarray(y, dtype=float),
            analytic_coeffs=_sawtooth_coeffs,
            singular_points=[_jump(-np.pi, np.pi, -np.pi)],
            majorant=MajorantSpec(),
            smoothness_alpha=1.0,
            sup_norm=float(np.pi),
            is_continuous=False,
            designated_points=regular_and_ends,
        ),
    ]
    corpus.extend(_cusp(alpha) for alpha in CUSP_ALPHAS)
    return corpus


@lru_cache(maxsize=1)
def _corpus_index() -> Dict[str, TestFunction]:
    corpus = _build_corpus()
    logger.debug(f"Corpus loaded: {[f.name for f in corpus]}")
    return {f.name: f for f in corpus}


def builtin_corpus() -> List[TestFunction]:
    """
    The built-in test functions, built once per process.

    Majorants are not validated here. Each is calibrated per (x, s, quadrature) on first use by
    analysis.majorants, which checks domination of G_{1,s}, monotonicity and subadditivity on
    the dyadic grid; doing that for every designated point at load would cost thousands of
    quadratures for commands that never touch a majorant.
    """
    return list(_corpus_index().values())


def get_function(name: str) -> TestFunction:
    index = _corpus_index()
    if name not in index:
        raise PreconditionError(f"unknown function '{name}', known: {', '.join(index)}")
    return index[name]


def corpus_names() -> List[str]:
    return list(_corpus_index())
