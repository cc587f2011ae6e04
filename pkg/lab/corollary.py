"""
Decay of the H^{lambda phi} means along a scheme parameter sequence.

At every Gabisonia point the means must fall below a tenth of their first value
over the swept range; jump points are reported without a verdict.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from analysis.corpus import classify_point
from analysis.fourier import series_for
from analysis.strong_means import dyadic_blocks, get_scheme, h_lambda_phi, identity_growth, partial_sum_deviations
from lab.sweeps import functions, points_for, quad_spec, require
from lab.theorems import scheme_degree
from lab.workers import parallel_map
from schemas.lab_schemas import CorollaryReport, DecayEntry, SweepSpec, Verdict
from schemas.means_schemas import LambdaScheme

logger = logging.getLogger(__name__)

DECAY_FACTOR = 0.1
ZERO_MEAN = 1e-10


def u_values(scheme_name: str, m_range: Tuple[int, int]) -> List[float]:
    """u = m for the block scheme, u = 2**m for the others."""
    lo, hi = m_range
    if scheme_name == "block":
        return [float(m) for m in range(lo, hi + 1)]
    return [float(2 ** m) for m in range(lo, hi + 1)]


def _check_vanishing_weights(scheme: LambdaScheme, us: List[float]) -> None:
    """lambda_nu(u) -> 0 read discretely: the largest weight must shrink along us."""
    peaks = []
    for u in us:
        bound = scheme.support_bound(u)
        nu = np.arange((bound if bound is not None else 0) + 1)
        peaks.append(float(np.max(scheme(nu, u))))
    require(
        all(b <= a for a, b in zip(peaks, peaks[1:])) and peaks[-1] < peaks[0],
        "C1",
        "lambda_nu(u) -> 0 along the swept u values",
        {"scheme": scheme.name, "peaks": [peaks[0], peaks[-1]]},
    )


def decay_slope(us: List[float], hs: List[float]) -> Optional[float]:
    """Least-squares slope of log H against log u over the positive values."""
    pairs = [(u, h) for u, h in zip(us, hs) if h > ZERO_MEAN]
    if len(pairs) < 2:
        return None
    u, h = np.array(pairs).T
    return float(np.polyfit(np.log(u), np.log(h), 1)[0])


def has_decayed(hs: List[float]) -> bool:
    if max(hs) <= ZERO_MEAN:
        return True
    return hs[-1] < DECAY_FACTOR * hs[0]


def decay_means(f, x: float, scheme: LambdaScheme, us: List[float], quad) -> List[float]:
    """H^{lambda phi}_u f(x) with phi(u) = u for every u, sharing one partial-sum table."""
    phi = identity_growth()
    if scheme.support_bound(us[-1]) is None:
        series = series_for(f, scheme_degree(scheme, us[-1]), quad)
        return [h_lambda_phi(f, series, x, scheme, phi, u).value for u in us]
    top = max(int(scheme.support_bound(u)) for u in us)
    series = series_for(f, top, quad)
    deviations = np.abs(partial_sum_deviations(f, series, x, np.arange(top + 1))[:, 0])
    return [float(np.sum(scheme(np.arange(top + 1), u) * phi(deviations))) for u in us]


def verify_corollary(sweep: SweepSpec, threads: Optional[int] = None) -> CorollaryReport:
    """
    Block means decay toward zero at Gabisonia points.

    converged iff every Gabisonia-point entry decays below DECAY_FACTOR times its first value
    (or vanishes throughout).
    """
    lo, hi = sweep.corollary_m_range
    blocks = dyadic_blocks(hi)
    quad = quad_spec(sweep)
    schemes = []
    for name in sweep.corollary_schemes:
        scheme = get_scheme(name, blocks)
        us = u_values(name, sweep.corollary_m_range)
        _check_vanishing_weights(scheme, us)
        schemes.append((scheme, us))

    jobs = [
        (f, x, scheme, us)
        for f in functions(sweep)
        for x in points_for(f, sweep)
        for scheme, us in schemes
    ]

    def run(job) -> DecayEntry:
        f, x, scheme, us = job
        point_class = classify_point(f, x)
        hs = decay_means(f, x, scheme, us, quad)
        return DecayEntry(
            function=f.name,
            x=x,
            point_kind=point_class.kind.value,
            gabisonia_point=point_class.is_gabisonia_point,
            scheme=scheme.name,
            u_values=us,
            h_values=hs,
            slope=decay_slope(us, hs),
            converged=has_decayed(hs),
        )

    entries = parallel_map(run, jobs, threads)
    entries.sort(key=lambda e: (e.function, e.x, e.scheme))
    judged = [e for e in entries if e.gabisonia_point]
    converged = all(e.converged for e in judged)
    if not judged:
        verdict = Verdict.SKIPPED
    elif not converged:
        verdict = Verdict.FAIL
    elif all(max(e.h_values) <= ZERO_MEAN for e in judged):
        verdict = Verdict.DEGENERATE_PASS
    else:
        verdict = Verdict.BOUNDED_RATIO
    for e in judged:
        if not e.converged:
            logger.warning(f"C1: {e.function} at x={e.x:g} ({e.scheme}) did not decay: {e.h_values[0]:.3g} -> {e.h_values[-1]:.3g}")
    logger.info(f"C1: {len(entries)} entries, {len(judged)} at Gabisonia points, verdict={verdict.value}")
    return CorollaryReport(entries=entries, converged=converged, verdict=verdict)
