"""
Strong means of Fourier partial sums and the function classes Phi and Lambda_tau(N_m).
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from analysis.corpus import eval_wrapped
from analysis.fourier import partial_sums_table
from schemas.corpus_schemas import TestFunction
from schemas.fourier_schemas import FourierSeries
from schemas.means_schemas import (
    GrowthFunction,
    HLambdaResult,
    IndexSequence,
    LambdaClassReport,
    LambdaScheme,
    PhiClassReport,
)
from utils.errors import PreconditionError, TruncationError
from utils.settings import LAMBDA_CLASS_BOUND

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-10
TAIL_CHUNK = 4096
TAIL_MAX_INDEX = 10 ** 8
PHI_DECADE_GROWTH = 1.05


# ==================== Index sequences ====================

def arithmetic(r: int) -> IndexSequence:
    return IndexSequence(indices=list(range(r + 1)), label=f"arith:{r}")


def lacunary(r: int) -> IndexSequence:
    return IndexSequence(indices=[2 ** nu for nu in range(r + 1)], label=f"lacunary:{r}")


def shifted(k0: int, r: int) -> IndexSequence:
    return IndexSequence(indices=list(range(k0, k0 + r + 1)), label=f"shifted:{k0},{r}")


def parse_indices(spec: str) -> IndexSequence:
    """
    Parse an index family.

    Accepted forms: arith:r, lacunary:r, shifted:k0,r or an explicit comma list.
    """
    spec = spec.strip()
    try:
        family, _, arguments = spec.partition(":")
        if family == "arith":
            return arithmetic(int(arguments))
        if family == "lacunary":
            return lacunary(int(arguments))
        if family == "shifted":
            k0, r = (int(v) for v in arguments.split(","))
            return shifted(k0, r)
        if not arguments:
            return IndexSequence(indices=[int(v) for v in spec.split(",")], label=spec)
    except ValueError as e:
        raise PreconditionError(f"invalid index spec '{spec}': {e}") from e
    raise PreconditionError(f"unknown index family '{family}'")


# ==================== Strong means ====================

def partial_sum_deviations(f: TestFunction, series: FourierSeries, x, ks) -> np.ndarray:
    """S_k f(x) - f(x) for k in ks (rows) and every x (columns)."""
    ks = np.asarray(ks, dtype=int)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    table = partial_sums_table(series, x, int(ks.max()))
    return table[ks, :] - eval_wrapped(f, x)[None, :]


def strong_mean_hq(f: TestFunction, series: FourierSeries, x, idx: IndexSequence, q: float):
    """
    H^q_{k0,kr} f(x) = {(1/(r+1)) sum_nu |S_{k_nu} f(x) - f(x)|^q}^{1/q}.

    Accepts a scalar x or an array of points.
    """
    if not q > 0.0:
        raise PreconditionError(f"requires q > 0 (got {q})")
    if idx.kr > series.degree:
        raise PreconditionError(f"index {idx.kr} exceeds series degree {series.degree}")
    deviations = partial_sum_deviations(f, series, x, idx.as_array())
    values = np.mean(np.abs(deviations) ** q, axis=0) ** (1.0 / q)
    if np.ndim(x) == 0:
        return float(values[0])
    return values


def certified_tail(
        scheme: LambdaScheme,
        u: float,
        start: int,
        phi: GrowthFunction,
        sup_norm: float
) -> float:
    """
    Bound on sum_{nu >= start} lambda_nu(u) phi(|S_nu f - f|).

    Uses |S_nu f - f| <= (4 + log(nu + 1)) * sup|f| and closes the sum with a geometric
    remainder once consecutive terms shrink by a fixed ratio below 1.
    """
    total = 0.0
    nu_start = start
    while nu_start < TAIL_MAX_INDEX:
        nu = np.arange(nu_start, nu_start + TAIL_CHUNK)
        terms = scheme(nu, u) * phi((4.0 + np.log(nu + 1.0)) * sup_norm)
        total += float(np.sum(terms))
        last = float(terms[-1])
        if last == 0.0:
            return total
        tail = terms[TAIL_CHUNK // 2:]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = float(np.max(tail[1:] / tail[:-1]))
        if ratio < 1.0:
            remainder = last * ratio / (1.0 - ratio)
            if remainder <= 1e-3 * max(total, TAIL_TOLERANCE):
                return total + remainder
        nu_start += TAIL_CHUNK
    return math.inf


def _h_lambda_values(f, series, x, scheme, phi, u):
    bound = scheme.support_bound(u)
    tail = 0.0
    if bound is None:
        n = series.degree
        tail = certified_tail(scheme, u, n + 1, phi, f.sup_norm)
        if tail > TAIL_TOLERANCE:
            raise TruncationError(
                f"{scheme.name}: tail beyond degree {n} bounded by {tail:.3g} > {TAIL_TOLERANCE} at u={u}"
            )
    else:
        n = int(bound)
        if n > series.degree:
            raise TruncationError(f"{scheme.name}: support {n} exceeds series degree {series.degree} at u={u}")
    nu = np.arange(n + 1)
    weights = scheme(nu, u)
    deviations = partial_sum_deviations(f, series, x, nu)
    values = np.sum(weights[:, None] * phi(np.abs(deviations)), axis=0)
    return values, n, tail


def h_lambda_phi(
        f: TestFunction,
        series: FourierSeries,
        x: float,
        scheme: LambdaScheme,
        phi: GrowthFunction,
        u: float
) -> HLambdaResult:
    """H^{lambda phi}_u f(x) with the truncation index and certified tail bound."""
    values, n, tail = _h_lambda_values(f, series, x, scheme, phi, u)
    return HLambdaResult(value=float(values[0]), truncation_index=n, tail_bound=tail)


def h_lambda_phi_values(f, series, xs: np.ndarray, scheme: LambdaScheme, phi: GrowthFunction, u: float) -> np.ndarray:
    """Vectorized H^{lambda phi}_u f over many points (for norms in x)."""
    values, _, _ = _h_lambda_values(f, series, xs, scheme, phi, u)
    return values


# ==================== Schemes ====================

def dyadic_blocks(M: int) -> List[int]:
    """N_0 = 0, N_m = 2**m for m = 1..M."""
    return [0] + [2 ** m for m in range(1, M + 1)]


def _block_weights(blocks: Sequence[int], m: int):
    lo = (blocks[m - 2] if m >= 2 else -1) + 1
    hi = blocks[m]
    return lo, hi, 1.0 / (hi + 1)


def theorem3_scheme(m: int, blocks: Sequence[int]) -> LambdaScheme:
    """lambda_nu = 1/(N_m + 1) on nu = N_{m-2}+1 .. N_m, zero elsewhere; u is ignored."""
    if not 1 <= m < len(blocks):
        raise PreconditionError(f"block index m must lie in 1..{len(blocks) - 1} (got {m})")
    lo, hi, weight = _block_weights(blocks, m)

    def weights(nu, u):
        return np.where((nu >= lo) & (nu <= hi), weight, 0.0)

    return LambdaScheme(name=f"theorem3[m={m}]", weights=weights, blocks=list(blocks), support_bound=lambda u: hi)


def block_scheme(blocks: Sequence[int]) -> LambdaScheme:
    """The Theorem-3 weights as one family with parameter u = m."""
    blocks = list(blocks)

    def weights(nu, u):
        lo, hi, weight = _block_weights(blocks, int(u))
        return np.where((nu >= lo) & (nu <= hi), weight, 0.0)

    return LambdaScheme(name="block", weights=weights, blocks=blocks, support_bound=lambda u: blocks[int(u)])


def cesaro_scheme(blocks: Sequence[int]) -> LambdaScheme:
    """lambda_nu(u) = 1/(u + 1) for nu <= u."""

    def weights(nu, u):
        return np.where(nu <= u, 1.0 / (u + 1.0), 0.0)

    return LambdaScheme(name="cesaro", weights=weights, blocks=list(blocks), support_bound=lambda u: int(u))


def abel_scheme(blocks: Sequence[int]) -> LambdaScheme:
    """lambda_nu(u) = (1/u)(1 - 1/u)**nu for u > 1; infinite support."""

    def weights(nu, u):
        if not u > 1.0:
            raise PreconditionError(f"abel weights require u > 1 (got {u})")
        return np.exp(nu * np.log1p(-1.0 / u)) / u

    return LambdaScheme(name="abel", weights=weights, blocks=list(blocks), support_bound=lambda u: None)


SCHEMES = {"block": block_scheme, "cesaro": cesaro_scheme, "abel": abel_scheme}


def get_scheme(name: str, blocks: Sequence[int]) -> LambdaScheme:
    if name not in SCHEMES:
        raise PreconditionError(f"unknown scheme '{name}', known: {', '.join(SCHEMES)}")
    return SCHEMES[name](blocks)


# ==================== Growth functions ====================

def identity_growth() -> GrowthFunction:
    return GrowthFunction(name="identity", phi=lambda u: u, doubling_constant=2.0)


def power_growth(q: float) -> GrowthFunction:
    return GrowthFunction(name=f"power{q:g}", phi=lambda u: u ** q, doubling_constant=2.0 ** q)


def exp_square_growth() -> GrowthFunction:
    return GrowthFunction(name="expsquare", phi=lambda u: np.expm1(u ** 2))


def get_growth(name: str) -> GrowthFunction:
    if name == "identity":
        return identity_growth()
    if name == "expsquare":
        return exp_square_growth()
    if name.startswith("power"):
        try:
            return power_growth(float(name[len("power"):]))
        except ValueError as e:
            raise PreconditionError(f"invalid growth function '{name}'") from e
    raise PreconditionError(f"unknown growth function '{name}'")


# ==================== Class checks ====================

def default_phi_grid() -> np.ndarray:
    return np.concatenate([np.geomspace(1e-4, 1.0, 81)[:-1], np.geomspace(1.0, 1e3, 61)])


def _edge_decades(values: np.ndarray, u: np.ndarray, toward_zero: bool) -> Tuple[float, float]:
    """sup of values on the outermost grid decade and on the decade next to it."""
    if toward_zero:
        edge = u[0]
        outer, inner = values[u < 10.0 * edge], values[(u >= 10.0 * edge) & (u < 100.0 * edge)]
    else:
        edge = u[-1]
        outer, inner = values[u > edge / 10.0], values[(u > edge / 100.0) & (u <= edge / 10.0)]
    if outer.size == 0 or inner.size == 0:
        raise PreconditionError("u_grid must span two decades inside (0, 1) and two above 1")
    return float(np.max(outer)), float(np.max(inner))


def phi_class_check(phi: GrowthFunction, u_grid: Optional[np.ndarray] = None) -> PhiClassReport:
    """
    Empirical membership in Phi.

    Checks phi(0) = 0 and monotonicity on the grid, then that phi(2u)/phi(u) near 0 and
    log(phi(u))/u on the tail stay bounded: the sup over the outermost grid decade may not
    exceed the sup over the decade before it. Overflow counts against membership.
    """
    u = np.sort(default_phi_grid() if u_grid is None else np.asarray(u_grid, dtype=float))
    if not (np.any((u > 0.0) & (u < 1.0)) and np.any(u >= 1.0)):
        raise PreconditionError("u_grid must cover (0, 1) and a tail above 1")
    reasons: List[str] = []
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if abs(float(phi(0.0))) > 1e-14:
            reasons.append("phi(0) != 0")

        values = phi(u)
        finite = np.isfinite(values)
        if np.any(np.diff(values[finite]) < -1e-12 * np.maximum(1.0, np.abs(values[finite][1:]))):
            reasons.append("phi is not nondecreasing on the grid")

        small = u[(u > 0.0) & (u < 1.0)]
        base = phi(small)
        ratios = phi(2.0 * small) / base
        if np.all(base > 0.0) and np.all(np.isfinite(ratios)):
            doubling = float(np.max(ratios))
            outer, inner = _edge_decades(ratios, small, toward_zero=True)
            if outer > PHI_DECADE_GROWTH * inner:
                reasons.append(f"phi(2u)/phi(u) grows toward 0 ({inner:.3g} to {outer:.3g} over the last decade)")
        else:
            doubling = math.inf
            reasons.append("phi(2u)/phi(u) is not finite near 0")

        tail = u[u >= 1.0]
        tail_values = phi(tail)
        if np.all(np.isfinite(tail_values)) and np.all(tail_values > 0.0):
            slopes = np.log(tail_values) / tail
            slope = float(np.max(slopes))
            outer, inner = _edge_decades(slopes, tail, toward_zero=False)
            if outer > PHI_DECADE_GROWTH * max(inner, 0.0) and outer > 0.0:
                reasons.append(f"log phi(u)/u grows on the tail ({inner:.3g} to {outer:.3g} over the last decade)")
        else:
            slope = math.inf
            reasons.append("log phi(u)/u is not finite on the tail")

    return PhiClassReport(member=not reasons, doubling_constant=doubling, growth_slope=slope, reasons=reasons)


def lambda_class_check(
        scheme: LambdaScheme,
        tau: float,
        m_range: Sequence[int],
        u: Optional[float] = None,
        bound: float = LAMBDA_CLASS_BOUND
) -> LambdaClassReport:
    """
    Power-mean condition of Lambda_tau(N_m) on the blocks in m_range.

    R_m = ((1/N_m) sum lambda^tau)^{1/tau} / ((1/N_m) sum lambda) over nu = N_{m-2}+1..N_m.
    With u = None each block is read at its own parameter u = m (the Theorem-3 family).
    """
    if not tau > 1.0:
        raise PreconditionError(f"requires tau > 1 (got {tau})")
    ratios = {}
    for m in m_range:
        if m < 1:
            raise PreconditionError(f"block index m must be >= 1 (got {m})")
        nu = scheme.block_range(m)
        n_m = scheme.block(m)
        weights = scheme(nu, float(m) if u is None else u)
        mean = float(np.sum(weights)) / n_m
        if mean <= 0.0:
            return LambdaClassReport(
                member=False,
                worst_ratio=math.inf,
                ratios=ratios,
                reason=f"block m={m} has all-zero weights",
            )
        power_mean = (float(np.sum(weights ** tau)) / n_m) ** (1.0 / tau)
        ratios[int(m)] = power_mean / mean
    worst = max(ratios.values()) if ratios else 0.0
    member = worst <= bound
    reason = None if member else f"worst ratio {worst:.3g} exceeds {bound:g}"
    return LambdaClassReport(member=member, worst_ratio=worst, ratios=ratios, reason=reason)
