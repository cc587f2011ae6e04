"""
Elementary inequalities between the pointwise characteristics.

E1: w_x f(delta)_p <= G_x f(delta)_{p,s}
E2: w_x f(delta)_p <= omega_C f(delta) for continuous f
E3: ||G_. f(delta)_{p,s}||_{X^pt} << omega_{X^pt} f(|log(pi/delta)| / (pi/delta)^{1/p-1/s})
E4: ||w_. f(delta)_p||_{X^pt} <= omega_{X^pt} f(delta)
"""
import math
from typing import Dict, Optional

import numpy as np

from analysis.characteristics import (
    characteristic_norm,
    default_x_grid,
    gabisonia,
    modulus_of_continuity,
    w_char,
)
from analysis.corpus import get_function
from lab.reports import InequalityCheck, run_check
from lab.sweeps import config, dyadic, functions, points_for, require
from schemas.fourier_schemas import QuadratureSpec
from schemas.lab_schemas import Configuration, Evaluation, RatioReport, SkippedConfiguration, SweepSpec
from utils.errors import PreconditionError


def _not_continuous(f, **params) -> SkippedConfiguration:
    return SkippedConfiguration(function=f.name, params=params, reason="f ∉ C")


def _check_norm_triples(inequality_id: str, sweep: SweepSpec) -> None:
    for p, s, pt in sweep.norm_triples:
        require(pt >= s > p >= 1.0, inequality_id, "p~ >= s > p >= 1", {"p": p, "s": s, "p~": pt})


# ==================== E1 ====================

def _build_e1(sweep: SweepSpec):
    for p, s in sweep.ps_pairs:
        require(s > p >= 1.0, "E1", "s > p >= 1", {"p": p, "s": s})
    configurations = [
        config("E1", f, x, p=p, s=s, delta=delta)
        for f in functions(sweep)
        for x in points_for(f, sweep)
        for p, s in sweep.ps_pairs
        for delta in dyadic(sweep.delta_exponents)
    ]
    return configurations, []


def _eval_e1(c: Configuration, quad: QuadratureSpec, nquad: QuadratureSpec) -> Evaluation:
    f, P = get_function(c.function), c.params
    return Evaluation(
        lhs=w_char(f, c.x, P["delta"], P["p"], quad),
        rhs=gabisonia(f, c.x, P["delta"], P["p"], P["s"], quad),
    )


# ==================== E2 ====================

def _build_e2(sweep: SweepSpec):
    for p in sweep.p_grid:
        require(p >= 1.0, "E2", "p >= 1", {"p": p})
    configurations, skipped = [], []
    for f in functions(sweep):
        if not f.is_continuous:
            skipped.append(_not_continuous(f))
            continue
        configurations.extend(
            config("E2", f, x, p=p, delta=delta)
            for x in points_for(f, sweep)
            for p in sweep.p_grid
            for delta in dyadic(sweep.delta_exponents)
        )
    return configurations, skipped


def _eval_e2(c: Configuration, quad: QuadratureSpec, nquad: QuadratureSpec) -> Evaluation:
    f, P = get_function(c.function), c.params
    x_grid = np.append(default_x_grid(nquad.cells)[:-1], c.x)
    return Evaluation(
        lhs=w_char(f, c.x, P["delta"], P["p"], quad),
        rhs=modulus_of_continuity(f, P["delta"], math.inf, x_grid=x_grid),
    )


# ==================== E3 / E4 ====================

def _build_norm(inequality_id: str):
    def build(sweep: SweepSpec):
        _check_norm_triples(inequality_id, sweep)
        for j in sweep.norm_delta_exponents:
            require(j >= 1, inequality_id, "delta <= pi/2", {"delta_exponent": j})
        configurations, skipped = [], []
        for f in functions(sweep):
            for p, s, pt in sweep.norm_triples:
                if pt == math.inf and not f.is_continuous:
                    skipped.append(_not_continuous(f, p=p, s=s, pt=pt))
                    continue
                configurations.extend(
                    config(inequality_id, f, None, p=p, s=s, pt=pt, delta=delta)
                    for delta in dyadic(sweep.norm_delta_exponents)
                )
        return configurations, skipped

    return build


def e3_argument(delta: float, p: float, s: float) -> float:
    ratio = np.pi / delta
    return abs(math.log(ratio)) / ratio ** (1.0 / p - 1.0 / s)


def _eval_e3(c: Configuration, quad: QuadratureSpec, nquad: QuadratureSpec) -> Evaluation:
    f, P = get_function(c.function), c.params
    delta, p, s, pt = P["delta"], P["p"], P["s"], P["pt"]
    lhs = characteristic_norm(f, lambda y: gabisonia(f, y, delta, p, s, quad), pt, nquad)
    rhs = modulus_of_continuity(f, e3_argument(delta, p, s), pt, quad=nquad)
    return Evaluation(lhs=lhs, rhs=rhs)


def _eval_e4(c: Configuration, quad: QuadratureSpec, nquad: QuadratureSpec) -> Evaluation:
    f, P = get_function(c.function), c.params
    delta, p, pt = P["delta"], P["p"], P["pt"]
    lhs = characteristic_norm(f, lambda y: w_char(f, y, delta, p, quad), pt, nquad, offsets=(0.0, delta))
    rhs = modulus_of_continuity(f, delta, pt, quad=nquad)
    return Evaluation(lhs=lhs, rhs=rhs)


ELEMENTARY_CHECKS: Dict[str, InequalityCheck] = {
    "E1": InequalityCheck(
        inequality_id="E1",
        description="w_x f(delta)_p <= G_x f(delta)_{p,s}",
        build=_build_e1,
        evaluate=_eval_e1,
        constant=lambda c: 1.0,
        relative_slack=1e-12,
    ),
    "E2": InequalityCheck(
        inequality_id="E2",
        description="w_x f(delta)_p <= omega_C f(delta)",
        build=_build_e2,
        evaluate=_eval_e2,
        constant=lambda c: 1.0,
        slack=1e-9,
    ),
    "E3": InequalityCheck(
        inequality_id="E3",
        description="||G_. f(delta)_{p,s}||_{X^p~} << omega_{X^p~} f(|log(pi/delta)| (delta/pi)^{1/p-1/s})",
        build=_build_norm("E3"),
        evaluate=_eval_e3,
    ),
    "E4": InequalityCheck(
        inequality_id="E4",
        description="||w_. f(delta)_p||_{X^p~} <= omega_{X^p~} f(delta)",
        build=_build_norm("E4"),
        evaluate=_eval_e4,
        constant=lambda c: 1.0,
        slack=1e-6,
    ),
}


def verify_elementary(
        inequality_id: str,
        sweep: SweepSpec,
        threads: Optional[int] = None,
        constant_scale: float = 1.0
) -> RatioReport:
    if inequality_id not in ELEMENTARY_CHECKS:
        raise PreconditionError(f"unknown elementary inequality '{inequality_id}' (known: {', '.join(ELEMENTARY_CHECKS)})")
    return run_check(ELEMENTARY_CHECKS[inequality_id], sweep, threads, constant_scale)
