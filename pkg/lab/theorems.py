"""
Bounded-ratio checks for the strong-summability estimates.

Every right-hand side is taken with constant 1; the pointwise theorems (T1, T3, T5)
use the calibrated majorant w_x, the norm theorems (T2, T4, T6) the computed modulus
omega_{X^p} f. PM is the power-mean reduction H^{q'} <= H^q for q' <= q.
"""
import logging
import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from analysis.characteristics import default_x_grid, lp_norm, modulus_of_continuity, x_breakpoints
from analysis.corpus import get_function
from analysis.fourier import series_for
from analysis.majorants import majorant
from analysis.strong_means import (
    dyadic_blocks,
    get_growth,
    get_scheme,
    h_lambda_phi,
    h_lambda_phi_values,
    lambda_class_check,
    parse_indices,
    phi_class_check,
    strong_mean_hq,
    theorem3_scheme,
)
from lab.reports import InequalityCheck, run_check
from lab.sweeps import config, functions, points_for, require
from schemas.fourier_schemas import QuadratureSpec
from schemas.lab_schemas import Configuration, Evaluation, RatioReport, SkippedConfiguration, SweepSpec
from schemas.means_schemas import LambdaScheme
from utils.errors import PreconditionError

logger = logging.getLogger(__name__)

OUTER_BLOCKS = 20
OUTER_CUTOFF = 1e-12
ABEL_DEGREE_FACTOR = 40


# ==================== Hypotheses ====================

def _q_pairs(inequality_id: str, sweep: SweepSpec) -> List[Tuple[float, float, bool]]:
    """(q, q', flagged) with 1/s + 1/q = 1; q < 2 only as flagged non-theorem rows."""
    pairs = []
    for q, qp in sweep.q_pairs:
        require(q > 1.0, inequality_id, "q > 1 so that s = q/(q - 1) is finite", {"q": q})
        require(0.0 < qp <= q, inequality_id, "0 < q' <= q", {"q": q, "q'": qp})
        flagged = q < 2.0
        if flagged:
            require(sweep.include_non_theorem, inequality_id, "q >= 2", {"q": q})
        pairs.append((q, qp, flagged))
    return pairs


def _growth_functions(inequality_id: str, sweep: SweepSpec):
    growths = []
    for name in sweep.growth_functions:
        phi = get_growth(name)
        report = phi_class_check(phi)
        require(report.member, inequality_id, "phi in the class Phi", {"phi": name, "reasons": report.reasons})
        growths.append(phi)
    return growths


def _no_majorant(f) -> SkippedConfiguration:
    return SkippedConfiguration(function=f.name, reason="no majorant w_x")


def _log_factor(kr: int, r: int) -> float:
    return 1.0 + math.log((kr + 1.0) / (r + 0.5))


def block_delta(blocks: List[int], m: int, shift: int = 1) -> float:
    """pi / (N_{m-2} + shift) with N_{-1} = -1, capped at pi."""
    base = blocks[m - 2] if m >= 2 else -1
    denominator = base + shift
    if denominator <= 0:
        return float(np.pi)
    return float(min(np.pi, np.pi / denominator))


def _norm_of(f, values, pt: float, nquad: QuadratureSpec) -> float:
    grid = default_x_grid(nquad.cells)
    if pt == math.inf:
        grid = grid[:-1]
    return lp_norm(values, pt, grid, nquad.points_per_cell, x_breakpoints(f))


# ==================== T1 / T2 / PM ====================

def _build_t1(sweep: SweepSpec):
    pairs = _q_pairs("T1", sweep)
    families = [parse_indices(spec) for spec in sweep.index_families]
    configurations, skipped = [], []
    for f in functions(sweep):
        if f.majorant is None:
            skipped.append(_no_majorant(f))
            continue
        configurations.extend(
            config("T1", f, x, flagged=flagged, q=q, qp=qp, s=q / (q - 1.0), indices=idx.label)
            for x in points_for(f, sweep)
            for idx in families
            for q, qp, flagged in pairs
        )
    return configurations, skipped


def _eval_t1(c: Configuration, quad: QuadratureSpec, nquad: QuadratureSpec) -> Evaluation:
    f, P = get_function(c.function), c.params
    idx = parse_indices(P["indices"])
    series = series_for(f, idx.kr, quad)
    lhs = strong_mean_hq(f, series, c.x, idx, P["qp"])
    rhs = majorant(f, c.x, np.pi / (idx.k0 + 1), P["s"], quad) * _log_factor(idx.kr, idx.r)
    return Evaluation(lhs=lhs, rhs=rhs)


def _build_t2(sweep: SweepSpec):
    pairs = _q_pairs("T2", sweep)
    families = [parse_indices(spec) for spec in sweep.index_families]
    configurations, skipped = [], []
    for f in functions(sweep):
        for pt in sweep.norm_exponents:
            if pt == math.inf and not f.is_continuous:
                skipped.append(SkippedConfiguration(function=f.name, params={"pt": pt}, reason="f ∉ C"))
                continue
            configurations.extend(
                config("T2", f, None, flagged=flagged, q=q, qp=qp, pt=pt, indices=idx.label)
                for idx in families
                for q, qp, flagged in pairs
            )
    return configurations, skipped


def _eval_t2(c: Configuration, quad: QuadratureSpec, nquad: QuadratureSpec) -> Evaluation:
    f, P = get_function(c.function), c.params
    idx = parse_indices(P["indices"])
    series = series_for(f, idx.kr, quad)
    lhs = _norm_of(f, lambda xs: strong_mean_hq(f, series, xs, idx, P["qp"]), P["pt"], nquad)
    rhs = modulus_of_continuity(f, np.pi / (idx.k0 + 1), P["pt"], quad=nquad) * _log_factor(idx.kr, idx.r)
    return Evaluation(lhs=lhs, rhs=rhs)


def _build_pm(sweep: SweepSpec):
    for q, qp in sweep.q_pairs:
        require(0.0 < qp <= q, "PM", "0 < q' <= q", {"q": q, "q'": qp})
    families = [parse_indices(spec) for spec in sweep.index_families]
    configurations = [
        config("PM", f, x, q=q, qp=qp, indices=idx.label)
        for f in functions(sweep)
        for x in points_for(f, sweep)
        for idx in families
        for q, qp in sweep.q_pairs
    ]
    return configurations, []


def _eval_pm(c: Configuration, quad: QuadratureSpec, nquad: QuadratureSpec) -> Evaluation:
    f, P = get_function(c.function), c.params
    idx = parse_indices(P["indices"])
    series = series_for(f, idx.kr, quad)
    return Evaluation(
        lhs=strong_mean_hq(f, series, c.x, idx, P["qp"]),
        rhs=strong_mean_hq(f, series, c.x, idx, P["q"]),
    )


# ==================== T3 / T4 ====================

def _build_t3(sweep: SweepSpec):
    growths = _growth_functions("T3", sweep)
    configurations, skipped = [], []
    for f in functions(sweep):
        if f.majorant is None:
            skipped.append(_no_majorant(f))
            continue
        configurations.extend(
            config("T3", f, x, growth=phi.name, m=m, blocks=sweep.block_count)
            for x in points_for(f, sweep)
            for phi in growths
            for m in range(1, sweep.block_count + 1)
        )
    return configurations, skipped


def _eval_t3(c: Configuration, quad: QuadratureSpec, nquad: QuadratureSpec) -> Evaluation:
    f, P = get_function(c.function), c.params
    phi, m = get_growth(P["growth"]), int(P["m"])
    blocks = dyadic_blocks(int(P["blocks"]))
    series = series_for(f, blocks[m], quad)
    lhs = h_lambda_phi(f, series, c.x, theorem3_scheme(m, blocks), phi, float(m)).value
    rhs = float(phi(majorant(f, c.x, block_delta(blocks, m), quad=quad)))
    secondary = float(phi(majorant(f, c.x, block_delta(blocks, m, shift=2), quad=quad)))
    return Evaluation(lhs=lhs, rhs=rhs, secondary_rhs=secondary)


def _build_t4(sweep: SweepSpec):
    growths = _growth_functions("T4", sweep)
    configurations, skipped = [], []
    for f in functions(sweep):
        for pt in sweep.norm_exponents:
            if pt == math.inf and not f.is_continuous:
                skipped.append(SkippedConfiguration(function=f.name, params={"pt": pt}, reason="f ∉ C"))
                continue
            configurations.extend(
                config("T4", f, None, growth=phi.name, m=m, blocks=sweep.block_count, pt=pt)
                for phi in growths
                for m in range(1, sweep.block_count + 1)
            )
    return configurations, skipped


def _eval_t4(c: Configuration, quad: QuadratureSpec, nquad: QuadratureSpec) -> Evaluation:
    f, P = get_function(c.function), c.params
    phi, m, pt = get_growth(P["growth"]), int(P["m"]), P["pt"]
    blocks = dyadic_blocks(int(P["blocks"]))
    series = series_for(f, blocks[m], quad)
    scheme = theorem3_scheme(m, blocks)
    lhs = _norm_of(f, lambda xs: h_lambda_phi_values(f, series, xs, scheme, phi, float(m)), pt, nquad)
    rhs = float(phi(modulus_of_continuity(f, block_delta(blocks, m), pt, quad=nquad)))
    secondary = float(phi(modulus_of_continuity(f, block_delta(blocks, m, shift=2), pt, quad=nquad)))
    return Evaluation(lhs=lhs, rhs=rhs, secondary_rhs=secondary)


# ==================== T5 / T6 ====================

def scheme_degree(scheme: LambdaScheme, u: float) -> int:
    bound = scheme.support_bound(u)
    if bound is None:
        return int(math.ceil(ABEL_DEGREE_FACTOR * u))
    return int(bound)


def lambda_blocks(scheme: LambdaScheme, u: float) -> List[int]:
    """Blocks on which Lambda_tau membership is read at parameter u."""
    if scheme.name == "block":
        return list(range(1, int(u) + 1))
    top = scheme_degree(scheme, u)
    return [m for m in range(1, len(scheme.blocks)) if scheme.block(m) <= top]


def _schemes(inequality_id: str, sweep: SweepSpec, skipped: List[SkippedConfiguration]):
    """(scheme name, u, tau) triples whose scheme passes the Lambda_tau(N_m) check."""
    for tau in sweep.tau_grid:
        require(tau > 1.0, inequality_id, "tau > 1", {"tau": tau})
    accepted = []
    blocks = dyadic_blocks(OUTER_BLOCKS)
    for name, u_values in sorted(sweep.scheme_u_values.items()):
        scheme = get_scheme(name, blocks)
        for u in u_values:
            if name == "block":
                require(1 <= u <= OUTER_BLOCKS, inequality_id, f"block parameter u = m in 1..{OUTER_BLOCKS}", {"u": u})
            elif name == "abel":
                require(u > 1.0, inequality_id, "abel parameter u > 1", {"u": u})
            else:
                require(u >= 0.0, inequality_id, "cesaro parameter u >= 0", {"u": u})
            for tau in sweep.tau_grid:
                report = lambda_class_check(
                    scheme, tau, lambda_blocks(scheme, u), u=None if name == "block" else u
                )
                if report.member:
                    accepted.append((name, float(u), float(tau)))
                else:
                    skipped.append(SkippedConfiguration(
                        function="*", params={"scheme": name, "u": u, "tau": tau},
                        reason=f"scheme not in Lambda_tau: {report.reason}",
                    ))
    return accepted


def outer_sum(scheme: LambdaScheme, u: float, bound_at) -> float:
    """
    sum_m sum_{nu = N_{m-2}+1}^{N_m} lambda_nu(u) * bound_at(m).

    Stops once bound_at(m) < 1e-12 or m = 20.
    """
    total = 0.0
    for m in range(1, OUTER_BLOCKS + 1):
        bound = bound_at(m)
        mass = float(np.sum(scheme(scheme.block_range(m), u)))
        total += mass * bound
        if bound < OUTER_CUTOFF:
            logger.debug(f"{scheme.name}: outer sum truncated at m={m}")
            break
    return total


def _build_t5(sweep: SweepSpec):
    growths = _growth_functions("T5", sweep)
    skipped: List[SkippedConfiguration] = []
    schemes = _schemes("T5", sweep, skipped)
    configurations = []
    for f in functions(sweep):
        if f.majorant is None:
            skipped.append(_no_majorant(f))
            continue
        configurations.extend(
            config("T5", f, x, growth=phi.name, scheme=name, u=u, tau=tau)
            for x in points_for(f, sweep)
            for phi in growths
            for name, u, tau in schemes
        )
    return configurations, skipped


def _eval_t5(c: Configuration, quad: QuadratureSpec, nquad: QuadratureSpec) -> Evaluation:
    f, P = get_function(c.function), c.params
    phi, u = get_growth(P["growth"]), P["u"]
    blocks = dyadic_blocks(OUTER_BLOCKS)
    scheme = get_scheme(P["scheme"], blocks)
    series = series_for(f, scheme_degree(scheme, u), quad)
    lhs = h_lambda_phi(f, series, c.x, scheme, phi, u).value
    rhs = outer_sum(scheme, u, lambda m: float(phi(majorant(f, c.x, block_delta(blocks, m), quad=quad))))
    secondary = outer_sum(scheme, u, lambda m: float(phi(majorant(f, c.x, block_delta(blocks, m, 2), quad=quad))))
    return Evaluation(lhs=lhs, rhs=rhs, secondary_rhs=secondary)


def _build_t6(sweep: SweepSpec):
    growths = _growth_functions("T6", sweep)
    skipped: List[SkippedConfiguration] = []
    schemes = _schemes("T6", sweep, skipped)
    configurations = []
    for f in functions(sweep):
        for pt in sweep.norm_exponents:
            if pt == math.inf and not f.is_continuous:
                skipped.append(SkippedConfiguration(function=f.name, params={"pt": pt}, reason="f ∉ C"))
                continue
            configurations.extend(
                config("T6", f, None, growth=phi.name, scheme=name, u=u, tau=tau, pt=pt)
                for phi in growths
                for name, u, tau in schemes
            )
    return configurations, skipped


def _eval_t6(c: Configuration, quad: QuadratureSpec, nquad: QuadratureSpec) -> Evaluation:
    f, P = get_function(c.function), c.params
    phi, u, pt = get_growth(P["growth"]), P["u"], P["pt"]
    blocks = dyadic_blocks(OUTER_BLOCKS)
    scheme = get_scheme(P["scheme"], blocks)
    series = series_for(f, scheme_degree(scheme, u), quad)
    lhs = _norm_of(f, lambda xs: h_lambda_phi_values(f, series, xs, scheme, phi, u), pt, nquad)
    omegas = {}

    def bound_at(m: int) -> float:
        if m not in omegas:
            omegas[m] = modulus_of_continuity(f, block_delta(blocks, m), pt, quad=nquad)
        return float(phi(omegas[m]))

    return Evaluation(lhs=lhs, rhs=outer_sum(scheme, u, bound_at))


THEOREM_CHECKS: Dict[str, InequalityCheck] = {
    "T1": InequalityCheck(
        inequality_id="T1",
        description="H^{q'}_{k0,kr} f(x) << w_x(pi/(k0+1)) (1 + log((kr+1)/(r+1/2)))",
        build=_build_t1,
        evaluate=_eval_t1,
    ),
    "T2": InequalityCheck(
        inequality_id="T2",
        description="||H^{q'}_{k0,kr} f||_{X^p} << omega_{X^p} f(pi/(k0+1)) (1 + log((kr+1)/(r+1/2)))",
        build=_build_t2,
        evaluate=_eval_t2,
    ),
    "T3": InequalityCheck(
        inequality_id="T3",
        description="H^{lambda phi}_m f(x) << phi(w_x(pi/(N_{m-2}+1)))",
        build=_build_t3,
        evaluate=_eval_t3,
    ),
    "T4": InequalityCheck(
        inequality_id="T4",
        description="||H^{lambda phi}_m f||_{X^p} << phi(omega_{X^p} f(pi/(N_{m-2}+1)))",
        build=_build_t4,
        evaluate=_eval_t4,
    ),
    "T5": InequalityCheck(
        inequality_id="T5",
        description="H^{lambda phi}_u f(x) << sum_m sum_nu lambda_nu(u) phi(w_x(pi/(N_{m-2}+1)))",
        build=_build_t5,
        evaluate=_eval_t5,
    ),
    "T6": InequalityCheck(
        inequality_id="T6",
        description="||H^{lambda phi}_u f||_{X^p} << sum_m sum_nu lambda_nu(u) phi(omega_{X^p} f(pi/(N_{m-2}+1)))",
        build=_build_t6,
        evaluate=_eval_t6,
    ),
    "PM": InequalityCheck(
        inequality_id="PM",
        description="H^{q'}_{k0,kr} f(x) <= H^q_{k0,kr} f(x) for q' <= q",
        build=_build_pm,
        evaluate=_eval_pm,
        constant=lambda c: 1.0,
        slack=1e-12,
    ),
}


def verify_theorem(
        inequality_id: str,
        sweep: SweepSpec,
        threads: Optional[int] = None,
        constant_scale: float = 1.0
) -> RatioReport:
    if inequality_id not in THEOREM_CHECKS:
        raise PreconditionError(f"unknown theorem check '{inequality_id}' (known: {', '.join(THEOREM_CHECKS)})")
    return run_check(THEOREM_CHECKS[inequality_id], sweep, threads, constant_scale)
