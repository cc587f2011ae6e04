"""
Pointwise majorants w_x(delta) = C * delta**e of modulus-of-continuity type.

Calibrated lazily per (function, x, s, quadrature) against G_x f(delta)_{1,s} on the
standard dyadic grid pi * 2**-j and cached; corpus objects stay immutable.
"""
import logging
import threading
from typing import Dict, Optional, Tuple

import numpy as np

from analysis.characteristics import DEFAULT_QUAD, gabisonia
from analysis.corpus import local_holder_exponent
from schemas.corpus_schemas import MajorantReport, MajorantSpec, TestFunction
from schemas.fourier_schemas import QuadratureSpec
from utils.errors import PreconditionError

logger = logging.getLogger(__name__)

DOMINATION_TOL = 1e-12

_cache: Dict[Tuple, Tuple[float, float]] = {}
_cache_lock = threading.Lock()


def _spec(f: TestFunction) -> MajorantSpec:
    if f.majorant is None:
        raise PreconditionError(f"{f.name} has no majorant")
    return f.majorant


def _grid(spec: MajorantSpec) -> np.ndarray:
    return np.pi * 2.0 ** -np.asarray(spec.grid_exponents, dtype=float)


def calibrate(
        f: TestFunction,
        x: float,
        s: Optional[float] = None,
        quad: QuadratureSpec = DEFAULT_QUAD
) -> Tuple[float, float]:
    """
    Constant and exponent of the majorant at x.

    Returns:
        tuple: (C, e) with e = min(local Hoelder exponent, 1 - 1/s); C = 0 when G vanishes on the grid
    """
    spec = _spec(f)
    s = spec.s if s is None else s
    if not s > 1.0:
        raise PreconditionError(f"{f.name}: majorant needs s > 1 (got {s})")
    key = (f.name, float(x), float(s), quad.cells, quad.points_per_cell)
    with _cache_lock:
        if key in _cache:
            return _cache[key]

    exponent = min(local_holder_exponent(f, x), 1.0 - 1.0 / s)
    deltas = _grid(spec)
    values = np.array([gabisonia(f, x, float(d), 1.0, s, quad) for d in deltas])
    constant = spec.safety * float(np.max(values / deltas ** exponent))
    logger.debug(f"Majorant for {f.name} at x={x}, s={s}: C={constant:.6g}, e={exponent:.4g}")

    with _cache_lock:
        _cache[key] = (constant, exponent)
    return constant, exponent


def majorant(
        f: TestFunction,
        x: float,
        delta,
        s: Optional[float] = None,
        quad: QuadratureSpec = DEFAULT_QUAD
):
    """w_x(delta); delta is capped at pi."""
    constant, exponent = calibrate(f, x, s, quad)
    capped = np.minimum(np.asarray(delta, dtype=float), np.pi)
    value = constant * capped ** exponent
    if np.ndim(value) == 0:
        return float(value)
    return value


def validate_majorant(
        f: TestFunction,
        x: float,
        s: Optional[float] = None,
        quad: QuadratureSpec = DEFAULT_QUAD
) -> MajorantReport:
    """Domination of G_{1,s}, monotonicity and subadditivity on the dyadic grid."""
    spec = _spec(f)
    s = spec.s if s is None else s
    constant, exponent = calibrate(f, x, s, quad)
    deltas = np.sort(_grid(spec))
    bound = constant * deltas ** exponent
    values = np.array([gabisonia(f, x, float(d), 1.0, s, quad) for d in deltas])

    dominates = bool(np.all(values <= bound * (1.0 + DOMINATION_TOL) + DOMINATION_TOL))
    nondecreasing = bool(np.all(np.diff(bound) >= 0.0))
    pairs = [(a, b) for a in deltas for b in deltas if a <= b and a + b <= np.pi]
    subadditive = all(
        majorant(f, x, a + b, s, quad) <= majorant(f, x, a, s, quad) + majorant(f, x, b, s, quad) + DOMINATION_TOL
        for a, b in pairs
    )
    if not (dominates and subadditive):
        logger.warning(f"Majorant of {f.name} at x={x} failed validation")
    return MajorantReport(
        function=f.name,
        x=x,
        s=s,
        constant=constant,
        exponent=exponent,
        dominates=dominates,
        nondecreasing=nondecreasing,
        subadditive=subadditive,
    )
