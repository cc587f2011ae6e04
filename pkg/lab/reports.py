"""
Turning per-configuration evaluations into RatioReports.

A check is literal when the inequality carries an explicit constant, and bounded
otherwise. Literal checks must hold at every configuration and refinement level;
bounded checks must have a finite sup ratio that is stable under refinement.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from lab.sweeps import norm_spec, quad_spec, subsample
from lab.workers import parallel_map
from schemas.fourier_schemas import QuadratureSpec
from schemas.lab_schemas import (
    Configuration,
    ConfigurationResult,
    Evaluation,
    RatioReport,
    SkippedConfiguration,
    SweepSpec,
    Verdict,
)
from utils.errors import PreconditionError
from utils.settings import DRIFT_THRESHOLD

logger = logging.getLogger(__name__)

DEGENERATE_RHS = 1e-12
DEGENERATE_LHS = 1e-10
# Sup ratios below this are rounding noise; their relative drift carries no information
DRIFT_FLOOR = 1e-8
MIN_NONDEGENERATE = 10

Builder = Callable[[SweepSpec], Tuple[List[Configuration], List[SkippedConfiguration]]]
Evaluator = Callable[[Configuration, QuadratureSpec, QuadratureSpec], Evaluation]


@dataclass(frozen=True)
class InequalityCheck:
    inequality_id: str
    description: str
    build: Builder
    evaluate: Evaluator
    constant: Optional[Callable[[Configuration], float]] = None
    slack: float = 0.0
    relative_slack: float = 0.0

    @property
    def literal(self) -> bool:
        return self.constant is not None


def _result(
        check: InequalityCheck,
        configuration: Configuration,
        evaluation: Evaluation,
        constant_scale: float
) -> ConfigurationResult:
    lhs, rhs = evaluation.lhs, evaluation.rhs
    degenerate = rhs <= DEGENERATE_RHS
    ratio = None
    if degenerate:
        passed = lhs <= DEGENERATE_LHS
    else:
        ratio = lhs / rhs
        if check.literal:
            bound = check.constant(configuration) * constant_scale * rhs
            passed = lhs <= bound + check.slack + check.relative_slack * abs(bound)
        else:
            passed = math.isfinite(ratio)
    return ConfigurationResult(
        key=configuration.key,
        function=configuration.function,
        x=configuration.x,
        params=configuration.params,
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        secondary_rhs=evaluation.secondary_rhs,
        degenerate=degenerate,
        passed=passed,
        flagged=configuration.flagged,
    )


def sup_ratio(results: List[ConfigurationResult]) -> float:
    ratios = [r.ratio for r in results if r.ratio is not None and not r.flagged]
    return max(ratios) if ratios else 0.0


def refinement_drift(sups: List[float]) -> float:
    """|sup_L - sup_{L-1}| / sup_L between the two highest levels."""
    finest, previous = sups[-1], sups[-2]
    if finest <= DRIFT_FLOOR:
        return 0.0
    return abs(finest - previous) / finest


def loglog_slope(results: List[ConfigurationResult]) -> Optional[float]:
    rows = [r for r in results if r.ratio is not None and r.lhs > 0.0 and not r.flagged]
    rhs = np.array([r.rhs for r in rows])
    if np.unique(rhs).size < 2:
        return None
    lhs = np.array([r.lhs for r in rows])
    return float(np.polyfit(np.log(rhs), np.log(lhs), 1)[0])


def _verdict(check: InequalityCheck, levels: List[List[ConfigurationResult]], drift: float) -> Tuple[Verdict, Optional[str]]:
    failures = [r for level in levels for r in level if not r.passed and not r.flagged]
    finest = [r for r in levels[-1] if not r.flagged]
    if failures:
        worst = failures[0]
        return Verdict.FAIL, f"{len(failures)} failing rows, first {worst.key} (lhs={worst.lhs:.6g}, rhs={worst.rhs:.6g})"
    if finest and all(r.degenerate for r in finest):
        return Verdict.DEGENERATE_PASS, None
    if check.literal:
        return Verdict.LITERAL_PASS, None
    if drift >= DRIFT_THRESHOLD:
        return Verdict.FAIL, f"refinement drift {drift:.3g} >= {DRIFT_THRESHOLD:g}"
    return Verdict.BOUNDED_RATIO, None


def run_check(
        check: InequalityCheck,
        sweep: SweepSpec,
        threads: Optional[int] = None,
        constant_scale: float = 1.0
) -> RatioReport:
    """
    Evaluate a check over its sweep at every refinement level.

    Hypothesis violations surface from check.build before anything is computed.
    """
    configurations, skipped = check.build(sweep)
    configurations = sorted(subsample(configurations, sweep), key=lambda c: c.key)
    literal_constant = None
    if check.literal and configurations:
        literal_constant = max(check.constant(c) for c in configurations) * constant_scale

    if not configurations:
        logger.info(f"{check.inequality_id}: no applicable configuration ({len(skipped)} skipped)")
        return RatioReport(
            inequality_id=check.inequality_id,
            description=check.description,
            skipped=skipped,
            verdict=Verdict.SKIPPED,
            reason="no applicable configuration",
        )

    levels: List[List[ConfigurationResult]] = []
    for level in range(sweep.refinement_levels):
        quad, nquad = quad_spec(sweep, level), norm_spec(sweep, level)
        evaluations = parallel_map(lambda c: check.evaluate(c, quad, nquad), configurations, threads)
        results = [_result(check, c, e, constant_scale) for c, e in zip(configurations, evaluations)]
        levels.append(results)
        logger.debug(f"{check.inequality_id}: level {level} ({quad.cells} cells) sup_ratio={sup_ratio(results):.6g}")

    sups = [sup_ratio(results) for results in levels]
    drift = refinement_drift(sups)
    verdict, reason = _verdict(check, levels, drift)
    report = RatioReport(
        inequality_id=check.inequality_id,
        description=check.description,
        literal_constant=literal_constant,
        slack=check.slack,
        configurations=levels[-1],
        skipped=skipped,
        sup_ratio=sups[-1],
        sup_ratio_by_level=sups,
        refinement_drift=drift,
        slope=loglog_slope(levels[-1]),
        verdict=verdict,
        reason=reason,
    )
    logger.info(
        f"{check.inequality_id}: {len(configurations)} configurations, "
        f"sup_ratio={report.sup_ratio:.6g}, drift={drift:.3g}, verdict={verdict.value}"
    )
    return report


def estimate_constant(report: RatioReport) -> float:
    """Empirical value of the hidden constant: the sup ratio over nondegenerate rows."""
    count = len(report.nondegenerate)
    if count < MIN_NONDEGENERATE:
        raise PreconditionError(
            f"{report.inequality_id}: needs at least {MIN_NONDEGENERATE} nondegenerate configurations (got {count})"
        )
    return report.sup_ratio
