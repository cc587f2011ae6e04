"""
Registry of every inequality check and the suite runner behind `sweep`.
"""
import logging
from typing import Dict, List, Optional, Protocol, Tuple

from lab.corollary import verify_corollary
from lab.elementary import ELEMENTARY_CHECKS
from lab.lemmas import LEMMA_CHECKS, LEMMA_GROUPS
from lab.reports import InequalityCheck, estimate_constant, run_check
from lab.theorems import THEOREM_CHECKS
from schemas.lab_schemas import CorollaryReport, RatioReport, SweepSpec, Verdict
from utils.errors import PreconditionError
from utils.settings import BASELINE_TOLERANCE

logger = logging.getLogger(__name__)

CHECKS: Dict[str, InequalityCheck] = {**ELEMENTARY_CHECKS, **LEMMA_CHECKS, **THEOREM_CHECKS}
GROUPS: Dict[str, List[str]] = dict(LEMMA_GROUPS)
SUITE_ORDER: List[str] = list(CHECKS)


class BaselineSource(Protocol):
    def get_baseline(self, inequality_id: str, sweep_name: str, sweep_hash: Optional[str] = None) -> Optional[float]:
        ...


def expand_ids(inequality_id: str) -> List[str]:
    """L4 and L5 stand for both of their halves; everything else maps to itself."""
    if inequality_id in GROUPS:
        return GROUPS[inequality_id]
    if inequality_id in CHECKS:
        return [inequality_id]
    raise PreconditionError(f"unknown inequality '{inequality_id}' (known: {', '.join(SUITE_ORDER)})")


def run_ids(
        ids: List[str],
        sweep: SweepSpec,
        threads: Optional[int] = None,
        constant_scale: float = 1.0
) -> List[RatioReport]:
    expanded = [i for inequality_id in ids for i in expand_ids(inequality_id)]
    return [run_check(CHECKS[i], sweep, threads, constant_scale) for i in expanded]


def run_suite(
        sweep: SweepSpec,
        threads: Optional[int] = None,
        constant_scale: float = 1.0
) -> Tuple[List[RatioReport], CorollaryReport]:
    """Every registered check in suite order, then the corollary decay check."""
    logger.info(f"Running the full suite on sweep '{sweep.name}' ({len(SUITE_ORDER)} checks + C1)")
    reports = run_ids(SUITE_ORDER, sweep, threads, constant_scale)
    return reports, verify_corollary(sweep, threads)


# ==================== Regression baseline ====================

def constant_estimates(reports: List[RatioReport]) -> Dict[str, float]:
    """estimate_constant for every BoundedRatio report that has enough nondegenerate rows."""
    estimates = {}
    for report in reports:
        if report.verdict != Verdict.BOUNDED_RATIO:
            continue
        try:
            estimates[report.inequality_id] = estimate_constant(report)
        except PreconditionError as e:
            logger.debug(f"No constant estimate: {e}")
    return estimates


def apply_baseline(
        reports: List[RatioReport],
        sweep_name: str,
        source: BaselineSource,
        sweep_hash: Optional[str] = None
) -> List[RatioReport]:
    """
    Compare constant estimates with the first recorded value for the same inequality and sweep.

    sweep_hash narrows the comparison to runs on the same resolved sweep (subsampling and
    resolution overrides change the estimate).

    A relative deviation above BASELINE_TOLERANCE turns the report into a Fail.
    """
    estimates = constant_estimates(reports)
    checked = []
    for report in reports:
        value = estimates.get(report.inequality_id)
        baseline = None
        if value is not None:
            try:
                baseline = source.get_baseline(report.inequality_id, sweep_name, sweep_hash)
            except Exception as e:
                logger.warning(f"Could not read baseline for {report.inequality_id}: {e}")
        if baseline is not None and baseline > 0.0:
            deviation = abs(value - baseline) / baseline
            if deviation > BASELINE_TOLERANCE:
                logger.warning(f"{report.inequality_id}: constant {value:.6g} deviates {deviation:.1%} from baseline {baseline:.6g}")
                report = report.model_copy(update={
                    "verdict": Verdict.FAIL,
                    "reason": f"baseline drift: {value:.6g} vs {baseline:.6g} ({deviation:.1%})",
                })
        checked.append(report)
    return checked


def exit_code(reports: List[RatioReport], corollary: Optional[CorollaryReport] = None) -> int:
    verdicts = [r.verdict for r in reports]
    if corollary is not None:
        verdicts.append(corollary.verdict)
    return 1 if any(v.is_failure for v in verdicts) else 0
