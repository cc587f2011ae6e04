"""
Execution of a resolved RunConfig: compute or verify, emit CSV and manifest, record the run.

Every subcommand (and `replay`) funnels through execute(), so a manifest's config
reproduces the run that wrote it.
"""
import logging
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import click
import numpy as np
import pandas as pd

from analysis.characteristics import characteristic_table
from analysis.corpus import eval_wrapped, get_function
from analysis.fourier import (
    coefficients_by_quadrature,
    compute_coefficients,
    kernel_deviations,
    partial_sums_table,
    series_for,
)
from analysis.strong_means import (
    dyadic_blocks,
    get_growth,
    get_scheme,
    h_lambda_phi,
    parse_indices,
    strong_mean_hq,
)
from database.db import db_manager
from lab.corollary import verify_corollary
from lab.runner import apply_baseline, constant_estimates, exit_code, run_ids, run_suite
from lab.sweeps import load_sweep, sweep_fingerprint, sweep_from_dict
from lab.theorems import scheme_degree
from schemas.fourier_schemas import QuadratureSpec
from schemas.lab_schemas import CorollaryReport, RatioReport, SweepSpec
from schemas.run_schemas import ReportSummary, RunConfig, RunManifest
from utils.csv_output import (
    check_output_path,
    corollary_frame,
    report_frame,
    write_frame,
    write_manifest,
)
from utils.config import parse_config
from utils.errors import ConfigError, StrongSumError
from utils.settings import QUAD_CELLS, QUAD_POINTS, RECORD_RUNS, TOOL_NAME, TOOL_VERSION

logger = logging.getLogger(__name__)

Outcome = Tuple[Optional[pd.DataFrame], List[RatioReport], Optional[CorollaryReport]]


def get_ledger():
    return db_manager


def _quad(config: RunConfig) -> QuadratureSpec:
    return QuadratureSpec(
        cells=config.quad_cells or QUAD_CELLS,
        points_per_cell=config.quad_points or QUAD_POINTS,
    )


def _require(value, key: str, subcommand: str):
    if value is None:
        raise ConfigError(key, f"required by {subcommand}")
    return value


# ==================== Compute subcommands ====================

def run_coeffs(config: RunConfig) -> Outcome:
    f = get_function(_require(config.function, "function", "coeffs"))
    N = _require(config.degree, "degree", "coeffs")
    if config.method == "fft":
        series = compute_coefficients(f, N, config.samples or max(4 * N, 2 * N + 2))
    elif config.method == "quadrature":
        series = coefficients_by_quadrature(f, N, _quad(config))
    else:
        if f.analytic_coeffs is None:
            raise ConfigError("method", f"{f.name} has no closed-form coefficients")
        series = series_for(f, N)
    k = np.arange(N + 1)
    frame = pd.DataFrame({
        "k": k,
        "a_k": np.concatenate([[series.a0], series.a]),
        "b_k": np.concatenate([[0.0], series.b]),
    })
    if f.analytic_coeffs is not None:
        exact_a, exact_b = f.analytic_coeffs(k)
        frame["analytic_a_k"] = np.asarray(exact_a, dtype=float)
        frame["analytic_b_k"] = np.asarray(exact_b, dtype=float)
    return frame, [], None


def run_partial_sums(config: RunConfig) -> Outcome:
    f = get_function(_require(config.function, "function", "partial-sums"))
    N = _require(config.degree, "degree", "partial-sums")
    series = series_for(f, N, _quad(config))
    x = np.asarray(sorted(config.x), dtype=float)
    table = partial_sums_table(series, x, N)
    ks = np.arange(N + 1)
    rows = []
    for j, xj in enumerate(x):
        kernel = kernel_deviations(f, ks, float(xj), _quad(config))
        target = eval_wrapped(f, float(xj))
        rows.extend(
            {"k": int(k), "x": float(xj), "partial_sum": table[k, j], "deviation": table[k, j] - target,
             "kernel_deviation": kernel[k]}
            for k in ks
        )
    return pd.DataFrame(rows, columns=["k", "x", "partial_sum", "deviation", "kernel_deviation"]), [], None


def run_chars(config: RunConfig) -> Outcome:
    f = get_function(_require(config.function, "function", "chars"))
    rows = []
    for x in sorted(config.x):
        for value in characteristic_table(f, x, config.p, config.s, config.delta_exponents, _quad(config)):
            P = value.params
            rows.append({"kind": value.kind.value, "x": P.x, "delta": P.delta, "gamma": P.gamma,
                         "p": P.p, "s": P.s, "value": value.value})
    return pd.DataFrame(rows, columns=["kind", "x", "delta", "gamma", "p", "s", "value"]), [], None


def run_means(config: RunConfig) -> Outcome:
    f = get_function(_require(config.function, "function", "means"))
    x = np.asarray(sorted(config.x), dtype=float)
    if config.scheme is not None:
        u = _require(config.u, "u", "means --scheme")
        scheme = get_scheme(config.scheme, dyadic_blocks(20))
        phi = get_growth(config.growth)
        series = series_for(f, scheme_degree(scheme, u), _quad(config))
        results = [h_lambda_phi(f, series, float(xj), scheme, phi, u) for xj in x]
        frame = pd.DataFrame({
            "function": f.name, "x": x, "scheme": scheme.name, "u": u, "growth": phi.name,
            "H": [r.value for r in results],
            "truncation_index": [r.truncation_index for r in results],
            "tail_bound": [r.tail_bound for r in results],
        })
        return frame, [], None
    idx = parse_indices(_require(config.indices, "indices", "means"))
    series = series_for(f, idx.kr, _quad(config))
    values = strong_mean_hq(f, series, x, idx, config.q)
    frame = pd.DataFrame({"function": f.name, "x": x, "indices": idx.label, "q": config.q, "H": values})
    return frame, [], None


# ==================== Verify subcommands ====================

def resolve_sweep(config: RunConfig) -> SweepSpec:
    sweep = load_sweep(config.sweep)
    overrides = {
        key: getattr(config, key)
        for key in ("seed", "subsample", "quad_cells", "quad_points")
        if getattr(config, key) is not None
    }
    if config.include_non_theorem:
        overrides["include_non_theorem"] = True
    if overrides:
        sweep = sweep_from_dict({**sweep.model_dump(), **overrides})
    return sweep


def uses_sweep(config: RunConfig) -> bool:
    return config.subcommand.startswith(("verify", "sweep"))


def run_verify(config: RunConfig) -> Outcome:
    target = _require(config.target, "target", config.subcommand)
    prefixes = {"verify-elementary": ("E",), "verify-lemma": ("L",), "verify-theorem": ("T", "PM")}
    if not target.startswith(prefixes[config.subcommand]):
        raise ConfigError("target", f"{config.subcommand} does not verify '{target}'")
    reports = run_ids([target], resolve_sweep(config), config.threads, config.constant_scale)
    return None, reports, None


def run_corollary(config: RunConfig) -> Outcome:
    report = verify_corollary(resolve_sweep(config), config.threads)
    return None, [], report


def run_sweep(config: RunConfig) -> Outcome:
    reports, corollary = run_suite(resolve_sweep(config), config.threads, config.constant_scale)
    return None, reports, corollary


RUNNERS: Dict[str, Callable[[RunConfig], Outcome]] = {
    "coeffs": run_coeffs,
    "partial-sums": run_partial_sums,
    "chars": run_chars,
    "means": run_means,
    "verify-elementary": run_verify,
    "verify-lemma": run_verify,
    "verify-theorem": run_verify,
    "verify-corollary": run_corollary,
    "sweep": run_sweep,
}


# ==================== Execution ====================

def summarize(reports: List[RatioReport], corollary: Optional[CorollaryReport]) -> List[ReportSummary]:
    summaries = [
        ReportSummary(
            inequality_id=r.inequality_id,
            verdict=r.verdict.value,
            sup_ratio=r.sup_ratio,
            refinement_drift=r.refinement_drift,
            literal_constant=r.literal_constant,
            configurations=len(r.configurations),
            reason=r.reason,
        )
        for r in reports
    ]
    if corollary is not None:
        summaries.append(ReportSummary(inequality_id="C1", verdict=corollary.verdict.value,
                                       configurations=len(corollary.entries)))
    return summaries


def _record(
        config: RunConfig,
        code: int,
        elapsed: float,
        out: Optional[Path],
        reports: List[RatioReport],
        sweep_hash: Optional[str]
) -> None:
    estimates = constant_estimates(reports)
    results = [
        {
            "inequality_id": r.inequality_id,
            "verdict": r.verdict.value,
            "sup_ratio": r.sup_ratio,
            "refinement_drift": r.refinement_drift,
            "configuration_count": len(r.configurations),
            "constant_estimate": estimates.get(r.inequality_id),
        }
        for r in reports
    ]
    try:
        ledger = get_ledger()
        ledger.init_db()
        run_id = ledger.save_run(
            subcommand=config.subcommand,
            config=config.model_dump(mode="json"),
            exit_code=code,
            execution_time=elapsed,
            target=config.target or config.function,
            sweep_name=config.sweep if uses_sweep(config) else None,
            sweep_hash=sweep_hash,
            output_path=str(out) if out else None,
            results=results,
        )
        logger.info(f"Recorded run {run_id}")
    except Exception as e:
        logger.warning(f"Could not record run in the ledger: {e}")


def verification_frame(reports: List[RatioReport], corollary: Optional[CorollaryReport]) -> pd.DataFrame:
    frames = [report_frame(reports)] if reports else []
    if corollary is not None:
        frames.append(corollary_frame(corollary))
    if not frames:
        return report_frame([])
    if len(frames) == 1:
        return frames[0]
    return pd.concat(frames, ignore_index=True, sort=False)


def execute(config: RunConfig, echo: Callable[[str], None] = print) -> int:
    """
    Run a resolved config and return the exit code (0 pass, 1 any Fail).

    ConfigError, HypothesisViolation and PreconditionError propagate to the caller.
    Without an output path the CSV goes to echo and no manifest is written.
    """
    out = check_output_path(config.out)
    record = config.record and RECORD_RUNS
    start = time.perf_counter()
    frame, reports, corollary = RUNNERS[config.subcommand](config)
    sweep_hash = sweep_fingerprint(resolve_sweep(config)) if uses_sweep(config) else None

    if record and reports:
        try:
            ledger = get_ledger()
            ledger.init_db()
            reports = apply_baseline(reports, config.sweep, ledger, sweep_hash)
        except Exception as e:
            logger.warning(f"Baseline comparison skipped: {e}")
    if frame is None:
        frame = verification_frame(reports, corollary)

    code = exit_code(reports, corollary)
    text = write_frame(frame, out)
    if out is None:
        echo(text.rstrip("\n"))
    else:
        manifest = RunManifest(
            tool=TOOL_NAME,
            version=TOOL_VERSION,
            config=config.model_dump(mode="json"),
            output=out.name,
            exit_code=code,
            reports=summarize(reports, corollary),
        )
        write_manifest(manifest, out)

    elapsed = time.perf_counter() - start
    if record:
        _record(config, code, elapsed, out, reports, sweep_hash)
    logger.info(f"{config.subcommand} finished in {elapsed:.2f}s with exit code {code}")
    return code


def run_cli(flags: dict, config_file: Optional[Path] = None) -> int:
    """
    Resolve flags (plus an optional config file) and execute; errors become exit code 2.
    """
    try:
        config = parse_config(flags, config_file)
        return execute(config, echo=click.echo)
    except StrongSumError as e:
        logger.error(str(e))
        click.echo(f"Error: {e}", err=True)
        return 2
