"""
Pointwise and norm characteristics built on phi_x(t) = f(x+t) + f(x-t) - 2f(x).

All t-integrals go through the block quadrature in analysis.quadrature, split at the
points where phi_x inherits a singularity of f (t = +-|x - s| modulo 2*pi).
"""
import logging
import math
from typing import Callable, Iterable, List, Optional, Sequence

import numpy as np

from analysis.corpus import eval_wrapped, reduce_angle
from analysis.quadrature import block_integrals, integrate
from schemas.characteristic_schemas import CharKind, CharParams, CharacteristicValue
from schemas.corpus_schemas import TestFunction
from schemas.fourier_schemas import QuadratureSpec
from utils.errors import PreconditionError
from utils.settings import QUAD_CELLS, QUAD_POINTS

logger = logging.getLogger(__name__)

DEFAULT_QUAD = QuadratureSpec(cells=QUAD_CELLS, points_per_cell=QUAD_POINTS)
DEFAULT_NORM_QUAD = QuadratureSpec(cells=256, points_per_cell=4)

FLOOR_GUARD = 1e-12
RANGE_TOL = 1e-12
SUP_GRID_SIZE = 13
OMEGA_STEPS = 64
PHI_ROUNDOFF = 64 * np.finfo(float).eps


def phi_x(f: TestFunction, x, t):
    """Symmetric second difference; broadcasts over x and t."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    value = eval_wrapped(f, x + t) + eval_wrapped(f, x - t) - 2.0 * eval_wrapped(f, x)
    if np.ndim(value) == 0:
        return float(value)
    return value


def phi_breakpoints(f: TestFunction, x: float, lo: float, hi: float) -> List[float]:
    """All t in [lo, hi] with x + t or x - t on a singular point of f."""
    points = set()
    for s in f.singular_locations:
        d = abs(float(reduce_angle(s - x)))
        for base in (d, -d):
            n_lo = math.ceil((lo - base) / (2.0 * np.pi))
            n_hi = math.floor((hi - base) / (2.0 * np.pi))
            points.update(base + 2.0 * np.pi * n for n in range(n_lo, n_hi + 1))
    return sorted(points)


def x_breakpoints(f: TestFunction, offsets: Iterable[float] = (0.0,)) -> List[float]:
    """Points s + o and s - o in [-pi, pi] for every singular point s."""
    points = set()
    for s in f.singular_locations:
        for o in offsets:
            for candidate in (s + o, s - o):
                y = float(reduce_angle(candidate))
                points.add(y)
                if abs(y + np.pi) <= RANGE_TOL:
                    points.add(float(np.pi))
    return sorted(points)


# ==================== Preconditions ====================

def _check_delta(delta: float) -> None:
    if not 0.0 < delta <= np.pi * (1.0 + RANGE_TOL):
        raise PreconditionError(f"requires 0 < delta <= pi (got {delta})")


def _check_p(p: float) -> None:
    if not (1.0 <= p < math.inf):
        raise PreconditionError(f"integral characteristics require finite p >= 1 (got {p})")


def _check_ps(p: float, s: float) -> None:
    _check_p(p)
    if not s > p:
        raise PreconditionError(f"requires s > p (got p={p}, s={s})")


def _check_window(delta: float, gamma: float) -> None:
    if not delta > 0.0:
        raise PreconditionError(f"requires delta > 0 (got {delta})")
    if not gamma >= 0.0:
        raise PreconditionError(f"requires gamma >= 0 (got {gamma})")
    if gamma + delta > np.pi * (1.0 + RANGE_TOL):
        raise PreconditionError(f"requires gamma + delta <= pi (got gamma={gamma}, delta={delta})")


def _abs_power(f: TestFunction, x: float, p: float) -> Callable[[np.ndarray], np.ndarray]:
    return lambda t: np.abs(phi_x(f, x, t)) ** p


def _window_integral(f, x, lo, hi, p, quad) -> float:
    return integrate(_abs_power(f, x, p), lo, hi, quad, phi_breakpoints(f, x, lo, hi))


# ==================== Pointwise characteristics ====================

def w_char(f: TestFunction, x: float, delta: float, p: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """w_x f(delta)_p = {(1/delta) int_0^delta |phi_x|^p}^{1/p}."""
    _check_delta(delta)
    _check_p(p)
    return (_window_integral(f, x, 0.0, delta, p, quad) / delta) ** (1.0 / p)


def gabisonia_terms(
        f: TestFunction,
        x: float,
        delta: float,
        p: float,
        s: float,
        quad: QuadratureSpec = DEFAULT_QUAD
) -> np.ndarray:
    """Cell terms ((1/(k delta)) int_{(k-1)delta}^{k delta} |phi_x|^p)^{s/p}, k = 1..floor(pi/delta)."""
    _check_delta(delta)
    _check_ps(p, s)
    cell_count = max(1, math.floor(np.pi / delta + FLOOR_GUARD))
    edges = delta * np.arange(cell_count + 1)
    integrals = block_integrals(_abs_power(f, x, p), edges, quad, phi_breakpoints(f, x, 0.0, edges[-1]))
    k = np.arange(1, cell_count + 1)
    return (np.maximum(integrals, 0.0) / (k * delta)) ** (s / p)


def gabisonia(f: TestFunction, x: float, delta: float, p: float, s: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """G_x f(delta)_{p,s}."""
    return float(np.sum(gabisonia_terms(f, x, delta, p, s, quad)) ** (1.0 / s))


def dyadic_grid(top: float, size: int = SUP_GRID_SIZE) -> np.ndarray:
    return top * 2.0 ** -np.arange(size)


def gabisonia_sup(
        f: TestFunction,
        x: float,
        gamma: float,
        p: float,
        s: float,
        grid: Optional[Sequence[float]] = None,
        quad: QuadratureSpec = DEFAULT_QUAD
) -> float:
    """
    G°_x f(gamma)_{p,s} as the max of G over a delta grid in (0, gamma].

    A lower bound for the true supremum; the default grid is gamma * 2**-j, j = 0..12.
    """
    _check_delta(gamma)
    deltas = dyadic_grid(gamma) if grid is None else np.asarray(grid, dtype=float)
    if deltas.size == 0:
        raise PreconditionError("delta grid is empty")
    if np.any(deltas <= 0.0) or np.any(deltas > gamma * (1.0 + RANGE_TOL)):
        raise PreconditionError(f"delta grid must lie in (0, gamma] (gamma={gamma})")
    return max(gabisonia(f, x, float(d), p, s, quad) for d in deltas)


def big_phi(f: TestFunction, x: float, delta: float, gamma: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Phi_x f(delta, gamma) = (1/delta) int_gamma^{gamma+delta} phi_x (signed)."""
    _check_window(delta, gamma)
    lo, hi = gamma, gamma + delta
    return integrate(lambda t: phi_x(f, x, t), lo, hi, quad, phi_breakpoints(f, x, lo, hi)) / delta


def big_w(f: TestFunction, x: float, delta: float, gamma: float, p: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """W_x f(delta, gamma)_p = {(1/delta) int_gamma^{gamma+delta} |phi_x|^p}^{1/p}."""
    _check_window(delta, gamma)
    _check_p(p)
    return (_window_integral(f, x, gamma, gamma + delta, p, quad) / delta) ** (1.0 / p)


def psi(f: TestFunction, x: float, delta: float, gamma: float, p: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Psi_x f(delta, gamma)_p; normalized by 1/gamma, with 0 < delta <= gamma."""
    _check_window(delta, gamma)
    _check_p(p)
    if delta > gamma:
        raise PreconditionError(f"requires delta <= gamma (got delta={delta}, gamma={gamma})")
    return (_window_integral(f, x, gamma, gamma + delta, p, quad) / gamma) ** (1.0 / p)


def lemma1_functional(
        f: TestFunction,
        x: float,
        lam: float,
        beta: float,
        p: float,
        quad: QuadratureSpec = DEFAULT_QUAD
) -> float:
    """{lam^beta int_lam^pi t^-(beta+1) |phi_x|^p dt}^{1/beta}."""
    if not 0.0 < lam <= np.pi:
        raise PreconditionError(f"requires 0 < lambda <= pi (got {lam})")
    if not beta > 0.0:
        raise PreconditionError(f"requires beta > 0 (got {beta})")
    _check_p(p)
    integral = integrate(
        lambda t: t ** -(beta + 1.0) * np.abs(phi_x(f, x, t)) ** p,
        lam, np.pi, quad, phi_breakpoints(f, x, lam, np.pi),
    )
    # phi_x zero up to roundoff; the 1/beta power would lift that noise above the degenerate floor
    if integral <= (PHI_ROUNDOFF * f.sup_norm) ** p * lam ** -beta / beta:
        return 0.0
    return (lam ** beta * integral) ** (1.0 / beta)


def shift_difference(
        f: TestFunction,
        x: float,
        delta: float,
        gamma: float,
        p: float,
        sign: int = 1,
        quad: QuadratureSpec = DEFAULT_QUAD
) -> float:
    """{(1/delta) int_0^delta |phi_x(t + sign*gamma) - phi_x(t)|^p dt}^{1/p}."""
    _check_delta(delta)
    _check_p(p)
    if sign not in (1, -1):
        raise PreconditionError(f"sign must be +1 or -1 (got {sign})")
    if gamma < 0.0:
        raise PreconditionError(f"requires gamma >= 0 (got {gamma})")
    shift = sign * gamma
    shifted = [b - shift for b in phi_breakpoints(f, x, shift, delta + shift)]
    breakpoints = sorted(set(phi_breakpoints(f, x, 0.0, delta)) | set(shifted))
    integral = integrate(
        lambda t: np.abs(phi_x(f, x, t + shift) - phi_x(f, x, t)) ** p,
        0.0, delta, quad, breakpoints,
    )
    return (integral / delta) ** (1.0 / p)


# ==================== Norms ====================

def default_x_grid(cells: int = 256) -> np.ndarray:
    return np.linspace(-np.pi, np.pi, cells + 1)


def lp_norm(
        g: Callable[[np.ndarray], np.ndarray],
        p: float,
        x_grid: Optional[np.ndarray] = None,
        points_per_cell: int = 4,
        breakpoints: Iterable[float] = ()
) -> float:
    """
    X^p norm over Q = [-pi, pi] of a vectorized function g.

    For finite p, x_grid holds cell edges (each cell gets points_per_cell Gauss nodes,
    split at breakpoints); for p = inf the norm is the max of |g| over x_grid.
    """
    if p < 1.0:
        raise PreconditionError(f"requires p >= 1 (got {p})")
    if p == math.inf:
        points = default_x_grid()[:-1] if x_grid is None else np.asarray(x_grid, dtype=float)
        return float(np.max(np.abs(g(points))))
    edges = default_x_grid() if x_grid is None else np.asarray(x_grid, dtype=float)
    spec = QuadratureSpec(cells=edges.size - 1, points_per_cell=points_per_cell)
    integral = float(np.sum(block_integrals(lambda xs: np.abs(g(xs)) ** p, edges, spec, breakpoints)))
    return max(integral, 0.0) ** (1.0 / p)


def _norm_grid(quad: QuadratureSpec, p: float) -> np.ndarray:
    grid = default_x_grid(quad.cells)
    return grid[:-1] if p == math.inf else grid


def _h_grid(delta: float, h_grid: Optional[Sequence[float]]) -> np.ndarray:
    if h_grid is None:
        return delta * np.arange(1, OMEGA_STEPS + 1) / OMEGA_STEPS
    hs = np.asarray(h_grid, dtype=float)
    if hs.size == 0 or np.any(hs <= 0.0) or np.any(hs > delta * (1.0 + RANGE_TOL)):
        raise PreconditionError(f"h grid must be a nonempty subset of (0, delta] (delta={delta})")
    return hs


def modulus_of_continuity(
        f: TestFunction,
        delta: float,
        p: float,
        x_grid: Optional[np.ndarray] = None,
        h_grid: Optional[Sequence[float]] = None,
        quad: QuadratureSpec = DEFAULT_NORM_QUAD
) -> float:
    """
    omega_{X^p} f(delta) = max over h in h_grid of ||phi_.(h)||_{X^p}.

    Args:
        f: Corpus function
        delta: Shift bound
        p: Norm exponent in [1, inf]; inf means the sup norm over x_grid
        x_grid: x points (p = inf) or x cell edges (finite p); defaults from quad.cells
        h_grid: Shifts in (0, delta]; defaults to delta * j / 64, j = 1..64
        quad: Resolution of the x discretization
    """
    if not delta > 0.0:
        raise PreconditionError(f"requires delta > 0 (got {delta})")
    hs = _h_grid(delta, h_grid)
    grid = _norm_grid(quad, p) if x_grid is None else np.asarray(x_grid, dtype=float)
    if grid.size == 0:
        raise PreconditionError("x grid is empty")

    if p == math.inf:
        values = np.abs(phi_x(f, grid[:, None], hs[None, :]))
        return float(np.max(values))

    norms = [
        lp_norm(lambda xs, h=h: phi_x(f, xs, h), p, grid, quad.points_per_cell, x_breakpoints(f, (0.0, h)))
        for h in hs
    ]
    return float(max(norms))


def first_difference_modulus(
        f: TestFunction,
        delta: float,
        p: float,
        x_grid: Optional[np.ndarray] = None,
        h_grid: Optional[Sequence[float]] = None,
        quad: QuadratureSpec = DEFAULT_NORM_QUAD
) -> float:
    """max over h in h_grid of ||f(. + h) - f||_{X^p}."""
    if not delta > 0.0:
        raise PreconditionError(f"requires delta > 0 (got {delta})")
    hs = _h_grid(delta, h_grid)
    grid = _norm_grid(quad, p) if x_grid is None else np.asarray(x_grid, dtype=float)

    def difference(xs, h):
        return eval_wrapped(f, xs + h) - eval_wrapped(f, xs)

    if p == math.inf:
        return float(np.max(np.abs(difference(grid[:, None], hs[None, :]))))
    norms = [
        lp_norm(lambda xs, h=h: difference(xs, h), p, grid, quad.points_per_cell, x_breakpoints(f, (0.0, h)))
        for h in hs
    ]
    return float(max(norms))


def characteristic_norm(
        f: TestFunction,
        pointwise: Callable[[float], float],
        p: float,
        quad: QuadratureSpec = DEFAULT_NORM_QUAD,
        offsets: Iterable[float] = (0.0,)
) -> float:
    """X^p norm in x of a pointwise characteristic, x cells split at s and s +- offsets."""

    def values(xs: np.ndarray) -> np.ndarray:
        return np.array([pointwise(float(x)) for x in np.ravel(xs)]).reshape(np.shape(xs))

    return lp_norm(values, p, _norm_grid(quad, p), quad.points_per_cell, x_breakpoints(f, offsets))


# ==================== Tables ====================

def characteristic_table(
        f: TestFunction,
        x: float,
        p: float,
        s: float,
        delta_exponents: Sequence[int] = tuple(range(8)),
        quad: QuadratureSpec = DEFAULT_QUAD
) -> List[CharacteristicValue]:
    """All pointwise characteristics at x over the dyadic deltas pi * 2**-j."""
    rows: List[CharacteristicValue] = []
    for j in delta_exponents:
        delta = float(np.pi * 2.0 ** -j)
        base = CharParams(x=x, delta=delta, p=p)
        rows.append(CharacteristicValue(kind=CharKind.W, params=base, value=w_char(f, x, delta, p, quad)))
        rows.append(CharacteristicValue(
            kind=CharKind.GABISONIA,
            params=base.model_copy(update={"s": s}),
            value=gabisonia(f, x, delta, p, s, quad),
        ))
        rows.append(CharacteristicValue(
            kind=CharKind.GABISONIA_SUP,
            params=CharParams(x=x, delta=delta, gamma=delta, p=p, s=s),
            value=gabisonia_sup(f, x, delta, p, s, quad=quad),
        ))
        if 2.0 * delta <= np.pi * (1.0 + RANGE_TOL):
            windowed = CharParams(x=x, delta=delta, gamma=delta, p=p)
            rows.append(CharacteristicValue(kind=CharKind.BIG_PHI, params=windowed, value=big_phi(f, x, delta, delta, quad)))
            rows.append(CharacteristicValue(kind=CharKind.BIG_W, params=windowed, value=big_w(f, x, delta, delta, p, quad)))
            rows.append(CharacteristicValue(kind=CharKind.PSI, params=windowed, value=psi(f, x, delta, delta, p, quad)))
        rows.append(CharacteristicValue(
            kind=CharKind.OMEGA_NORM,
            params=base,
            value=modulus_of_continuity(f, delta, p),
        ))
    logger.debug(f"Characteristic table for {f.name} at x={x}: {len(rows)} values")
    return rows
