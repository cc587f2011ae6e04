"""
Checks for the auxiliary lemmas on phi_x and its averages.

Literal constants: L2 2^{1/p-1/s}, L3 2^{1/p}+4^{1/p}, L4a 1, L5 2, L5b 2.
Bounded ratios: L1, L4b, L6, L7.
"""
import math
from typing import Dict, Optional

import numpy as np

from analysis.characteristics import (
    big_phi,
    big_w,
    characteristic_norm,
    first_difference_modulus,
    gabisonia,
    lemma1_functional,
    modulus_of_continuity,
    psi,
    shift_difference,
    w_char,
)
from analysis.corpus import get_function
from lab.reports import InequalityCheck, run_check
from lab.sweeps import config, dyadic, functions, points_for, require
from schemas.fourier_schemas import QuadratureSpec
from schemas.lab_schemas import Configuration, Evaluation, RatioReport, SkippedConfiguration, SweepSpec
from utils.errors import PreconditionError

WINDOW_TOL = 1e-12


def _check_ps(inequality_id: str, sweep: SweepSpec) -> None:
    for p, s in sweep.ps_pairs:
        require(s > p >= 1.0, inequality_id, "s > p >= 1", {"p": p, "s": s})


def _check_p(inequality_id: str, sweep: SweepSpec) -> None:
    for p in sweep.p_grid:
        require(1.0 <= p < math.inf, inequality_id, "finite p >= 1", {"p": p})


def _check_half_range(inequality_id: str, exponents) -> None:
    for j in exponents:
        require(j >= 1, inequality_id, "delta <= pi/2", {"delta_exponent": j})


def _check_ratios(inequality_id: str, sweep: SweepSpec) -> None:
    for rho in sweep.gamma_ratios:
        require(0.0 < rho <= 1.0, inequality_id, "0 < gamma <= delta", {"gamma_ratio": rho})


def _check_multipliers(inequality_id: str, sweep: SweepSpec) -> None:
    for c in sweep.gamma_multipliers:
        require(c >= 1.0, inequality_id, "delta <= gamma", {"gamma_multiplier": c})


def _windows(inequality_id: str, f, deltas, multipliers, skipped) -> list:
    """(delta, gamma = c*delta) pairs with gamma + delta <= pi; the rest are recorded as skipped."""
    windows = []
    for delta in deltas:
        for c in multipliers:
            gamma = c * delta
            if gamma + delta > np.pi * (1.0 + WINDOW_TOL):
                skipped.append(SkippedConfiguration(
                    function=f.name, params={"delta": delta, "gamma": gamma}, reason="gamma + delta > pi",
                ))
                continue
            windows.append((delta, gamma))
    return windows


def _function(c: Configuration):
    return get_function(c.function), c.params


# ==================== L1 ====================

def _build_l1(sweep: SweepSpec):
    for p, s, beta in sweep.lemma1_triples:
        require(s > p >= 1.0 and beta > 0.0 and s * (1.0 - beta) < p, "L1",
                "s > p >= 1, beta > 0 and s(1 - beta) < p", {"p": p, "s": s, "beta": beta})
    configurations = [
        config("L1", f, x, p=p, s=s, beta=beta, delta=lam)
        for f in functions(sweep)
        for x in points_for(f, sweep)
        for p, s, beta in sweep.lemma1_triples
        for lam in dyadic(sweep.delta_exponents)
    ]
    return configurations, []


def _eval_l1(c, quad, nquad) -> Evaluation:
    f, P = _function(c)
    return Evaluation(
        lhs=lemma1_functional(f, c.x, P["delta"], P["beta"], P["p"], quad),
        rhs=gabisonia(f, c.x, P["delta"], P["p"], P["s"], quad),
    )


# ==================== L2 ====================

def _build_l2(sweep: SweepSpec):
    _check_ps("L2", sweep)
    _check_half_range("L2", sweep.delta_exponents)
    configurations = [
        config("L2", f, x, p=p, s=s, delta=lam)
        for f in functions(sweep)
        for x in points_for(f, sweep)
        for p, s in sweep.ps_pairs
        for lam in dyadic(sweep.delta_exponents)
    ]
    return configurations, []


def _eval_l2(c, quad, nquad) -> Evaluation:
    f, P = _function(c)
    return Evaluation(
        lhs=gabisonia(f, c.x, 2.0 * P["delta"], P["p"], P["s"], quad),
        rhs=gabisonia(f, c.x, P["delta"], P["p"], P["s"], quad),
    )


# ==================== L3 / L4 ====================

def _build_shifted(inequality_id: str, signs=(1,)):
    def build(sweep: SweepSpec):
        _check_p(inequality_id, sweep)
        _check_half_range(inequality_id, sweep.delta_exponents)
        _check_ratios(inequality_id, sweep)
        configurations = [
            config(inequality_id, f, x, p=p, delta=delta, gamma=rho * delta, sign=sign)
            for f in functions(sweep)
            for x in points_for(f, sweep)
            for p in sweep.p_grid
            for delta in dyadic(sweep.delta_exponents)
            for rho in sweep.gamma_ratios
            for sign in signs
        ]
        return configurations, []

    return build


def _eval_l3(c, quad, nquad) -> Evaluation:
    f, P = _function(c)
    return Evaluation(
        lhs=shift_difference(f, c.x, P["delta"], P["gamma"], P["p"], int(P["sign"]), quad),
        rhs=w_char(f, c.x, 2.0 * P["delta"], P["p"], quad),
    )


def _eval_l4a(c, quad, nquad) -> Evaluation:
    f, P = _function(c)
    return Evaluation(
        lhs=abs(big_phi(f, c.x, P["delta"], P["gamma"], quad)),
        rhs=big_w(f, c.x, P["delta"], P["gamma"], P["p"], quad),
    )


def _eval_l4b(c, quad, nquad) -> Evaluation:
    f, P = _function(c)
    return Evaluation(
        lhs=big_w(f, c.x, P["delta"], P["gamma"], P["p"], quad),
        rhs=w_char(f, c.x, 2.0 * P["delta"], P["p"], quad),
    )


# ==================== L5 ====================

def _build_l5(inequality_id: str, signs=(1,)):
    def build(sweep: SweepSpec):
        _check_p(inequality_id, sweep)
        _check_half_range(inequality_id, sweep.norm_delta_exponents)
        _check_ratios(inequality_id, sweep)
        configurations = [
            config(inequality_id, f, None, p=p, delta=delta, gamma=rho * delta, sign=sign)
            for f in functions(sweep)
            for p in sweep.p_grid
            for delta in dyadic(sweep.norm_delta_exponents)
            for rho in sweep.gamma_ratios
            for sign in signs
        ]
        return configurations, []

    return build


def _eval_l5(c, quad, nquad) -> Evaluation:
    f, P = _function(c)
    delta, gamma, p = P["delta"], P["gamma"], P["p"]
    lhs = characteristic_norm(
        f, lambda y: big_w(f, y, delta, gamma, p, quad), p, nquad, offsets=(0.0, gamma, gamma + delta)
    )
    return Evaluation(lhs=lhs, rhs=modulus_of_continuity(f, delta + gamma, p, quad=nquad))


def _eval_l5b(c, quad, nquad) -> Evaluation:
    f, P = _function(c)
    delta, gamma, p, sign = P["delta"], P["gamma"], P["p"], int(P["sign"])
    lhs = characteristic_norm(
        f,
        lambda y: shift_difference(f, y, delta, gamma, p, sign, quad),
        p,
        nquad,
        offsets=(0.0, gamma, delta, delta + gamma, abs(delta - gamma)),
    )
    return Evaluation(lhs=lhs, rhs=first_difference_modulus(f, gamma, p, quad=nquad))


# ==================== L6 / L7 ====================

def _build_l6(sweep: SweepSpec):
    _check_ps("L6", sweep)
    _check_multipliers("L6", sweep)
    configurations, skipped = [], []
    for f in functions(sweep):
        windows = _windows("L6", f, dyadic(sweep.delta_exponents), sweep.gamma_multipliers, skipped)
        configurations.extend(
            config("L6", f, x, p=p, s=s, delta=delta, gamma=gamma)
            for x in points_for(f, sweep)
            for p, s in sweep.ps_pairs
            for delta, gamma in windows
        )
    return configurations, skipped


def _eval_l6(c, quad, nquad) -> Evaluation:
    f, P = _function(c)
    return Evaluation(
        lhs=psi(f, c.x, P["delta"], P["gamma"], P["p"], quad),
        rhs=gabisonia(f, c.x, P["delta"], P["p"], P["s"], quad),
    )


def _build_l7(sweep: SweepSpec):
    _check_p("L7", sweep)
    _check_multipliers("L7", sweep)
    configurations, skipped = [], []
    for f in functions(sweep):
        windows = _windows("L7", f, dyadic(sweep.norm_delta_exponents), sweep.gamma_multipliers, skipped)
        configurations.extend(
            config("L7", f, None, p=p, delta=delta, gamma=gamma)
            for p in sweep.p_grid
            for delta, gamma in windows
        )
    return configurations, skipped


def _eval_l7(c, quad, nquad) -> Evaluation:
    f, P = _function(c)
    delta, gamma, p = P["delta"], P["gamma"], P["p"]
    lhs = characteristic_norm(
        f, lambda y: psi(f, y, delta, gamma, 1.0, quad), p, nquad, offsets=(0.0, gamma, gamma + delta)
    )
    return Evaluation(lhs=lhs, rhs=modulus_of_continuity(f, delta, p, quad=nquad))


LEMMA_CHECKS: Dict[str, InequalityCheck] = {
    "L1": InequalityCheck(
        inequality_id="L1",
        description="{lam^beta int_lam^pi t^-(beta+1) |phi_x|^p}^{1/beta} << G_x f(lam)_{p,s}",
        build=_build_l1,
        evaluate=_eval_l1,
    ),
    "L2": InequalityCheck(
        inequality_id="L2",
        description="G_x f(2 lam)_{p,s} <= 2^{1/p-1/s} G_x f(lam)_{p,s}",
        build=_build_l2,
        evaluate=_eval_l2,
        constant=lambda c: 2.0 ** (1.0 / c.params["p"] - 1.0 / c.params["s"]),
        slack=1e-9,
    ),
    "L3": InequalityCheck(
        inequality_id="L3",
        description="{(1/delta) int_0^delta |phi_x(t +- gamma) - phi_x(t)|^p}^{1/p} <= (2^{1/p} + 4^{1/p}) w_x f(2 delta)_p",
        build=_build_shifted("L3", signs=(1, -1)),
        evaluate=_eval_l3,
        constant=lambda c: 2.0 ** (1.0 / c.params["p"]) + 4.0 ** (1.0 / c.params["p"]),
        slack=1e-9,
    ),
    "L4a": InequalityCheck(
        inequality_id="L4a",
        description="|Phi_x f(delta, gamma)| <= W_x f(delta, gamma)_p",
        build=_build_shifted("L4a"),
        evaluate=_eval_l4a,
        constant=lambda c: 1.0,
        slack=1e-10,
    ),
    "L4b": InequalityCheck(
        inequality_id="L4b",
        description="W_x f(delta, gamma)_p << w_x f(2 delta)_p",
        build=_build_shifted("L4b"),
        evaluate=_eval_l4b,
    ),
    "L5": InequalityCheck(
        inequality_id="L5",
        description="||W_. f(delta, gamma)_p||_{L^p} <= 2 omega_{L^p} f(delta + gamma)",
        build=_build_l5("L5"),
        evaluate=_eval_l5,
        constant=lambda c: 2.0,
        slack=1e-6,
    ),
    "L5b": InequalityCheck(
        inequality_id="L5b",
        description="||{(1/delta) int_0^delta |phi_.(t) - phi_.(t +- gamma)|^p}^{1/p}||_{L^p} <= 2 omega1_{L^p} f(gamma)",
        build=_build_l5("L5b", signs=(1, -1)),
        evaluate=_eval_l5b,
        constant=lambda c: 2.0,
        slack=1e-6,
    ),
    "L6": InequalityCheck(
        inequality_id="L6",
        description="Psi_x f(delta, gamma)_p << G_x f(delta)_{p,s}",
        build=_build_l6,
        evaluate=_eval_l6,
    ),
    "L7": InequalityCheck(
        inequality_id="L7",
        description="||Psi_. f(delta, gamma)_1||_{L^p} << omega_{L^p} f(delta)",
        build=_build_l7,
        evaluate=_eval_l7,
    ),
}

LEMMA_GROUPS = {"L4": ["L4a", "L4b"], "L5": ["L5", "L5b"]}


def verify_lemma(
        inequality_id: str,
        sweep: SweepSpec,
        threads: Optional[int] = None,
        constant_scale: float = 1.0
) -> RatioReport:
    if inequality_id not in LEMMA_CHECKS:
        raise PreconditionError(f"unknown lemma check '{inequality_id}'")
    return run_check(LEMMA_CHECKS[inequality_id], sweep, threads, constant_scale)
