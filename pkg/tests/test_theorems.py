import numpy as np
import pytest

from analysis.strong_means import abel_scheme, block_scheme, cesaro_scheme, dyadic_blocks
from lab.theorems import (
    THEOREM_CHECKS,
    block_delta,
    lambda_blocks,
    outer_sum,
    scheme_degree,
    verify_theorem,
)
from schemas.lab_schemas import Verdict
from utils.errors import HypothesisViolation, PreconditionError


def test_power_mean_reduction(make_sweep):
    report = verify_theorem("PM", make_sweep())
    assert report.verdict == Verdict.LITERAL_PASS
    assert report.sup_ratio == pytest.approx(1.0)


def test_power_mean_fails_under_scaled_constant(make_sweep):
    report = verify_theorem("PM", make_sweep(), constant_scale=0.5)
    assert report.verdict == Verdict.FAIL


def test_t1_configurations(make_sweep):
    configurations, skipped = THEOREM_CHECKS["T1"].build(make_sweep())
    # 2 functions x 2 points x 2 index families x 2 (q, q') pairs
    assert len(configurations) == 16
    assert not skipped
    assert {c.params["s"] for c in configurations} == {2.0}
    assert not any(c.flagged for c in configurations)


def test_t1_requires_q_at_least_two(make_sweep):
    with pytest.raises(HypothesisViolation, match="q >= 2"):
        THEOREM_CHECKS["T1"].build(make_sweep(q_pairs=[[1.5, 1.5]]))
    configurations, _ = THEOREM_CHECKS["T1"].build(make_sweep(q_pairs=[[1.5, 1.5]], include_non_theorem=True))
    assert configurations and all(c.flagged for c in configurations)


def test_t1_accepts_large_q(make_sweep, coarse_quad, norm_quad):
    configurations, _ = THEOREM_CHECKS["T1"].build(make_sweep(q_pairs=[[4, 4], [6, 3]]))
    assert sorted({c.params["s"] for c in configurations}) == pytest.approx([1.2, 4.0 / 3.0])
    cos_row = next(c for c in configurations if c.function == "cos" and c.x == 1.0)
    evaluation = THEOREM_CHECKS["T1"].evaluate(cos_row, coarse_quad, norm_quad)
    assert evaluation.rhs > 0.0
    assert np.isfinite(evaluation.lhs)


def test_t2_skips_sup_norm_for_jumps(make_sweep):
    sweep = make_sweep(functions=["squarewave"], norm_exponents=["inf", 2])
    configurations, skipped = THEOREM_CHECKS["T2"].build(sweep)
    assert [s.reason for s in skipped] == ["f ∉ C"]
    assert {c.params["pt"] for c in configurations} == {2.0}


def test_growth_must_be_in_phi(make_sweep):
    with pytest.raises(HypothesisViolation, match="class Phi"):
        THEOREM_CHECKS["T3"].build(make_sweep(growth_functions=["expsquare"]))


def test_block_delta():
    blocks = dyadic_blocks(4)
    assert block_delta(blocks, 1) == pytest.approx(np.pi)
    assert block_delta(blocks, 2) == pytest.approx(np.pi)
    assert block_delta(blocks, 3) == pytest.approx(np.pi / 3)
    assert block_delta(blocks, 4) == pytest.approx(np.pi / 5)
    assert block_delta(blocks, 1, shift=2) == pytest.approx(np.pi)
    assert block_delta(blocks, 3, shift=2) == pytest.approx(np.pi / 4)


def test_block_means_bounded(make_sweep):
    report = verify_theorem("T3", make_sweep(functions=["cos"]))
    assert report.verdict == Verdict.BOUNDED_RATIO
    assert len(report.configurations) == 2 * 3
    assert all(c.secondary_rhs <= c.rhs * (1 + 1e-12) for c in report.configurations)


def test_scheme_degree_and_blocks():
    blocks = dyadic_blocks(20)
    assert scheme_degree(block_scheme(blocks), 3) == 8
    assert scheme_degree(cesaro_scheme(blocks), 8) == 8
    assert scheme_degree(abel_scheme(blocks), 2.5) == 100
    assert lambda_blocks(block_scheme(blocks), 3) == [1, 2, 3]
    assert lambda_blocks(cesaro_scheme(blocks), 8) == [1, 2, 3]


def test_outer_sum_counts_overlapping_blocks():
    scheme = block_scheme(dyadic_blocks(20))
    # weights 1/9 on nu = 3..8, each nu lies in two blocks
    assert outer_sum(scheme, 3, lambda m: 1.0) == pytest.approx(12.0 / 9.0)
    assert outer_sum(scheme, 3, lambda m: 0.0) == 0.0


def test_scheme_configurations(make_sweep):
    configurations, skipped = THEOREM_CHECKS["T5"].build(make_sweep(functions=["cos"], points=[1.0]))
    assert not skipped
    assert sorted((c.params["scheme"], c.params["u"]) for c in configurations) == [
        ("block", 2.0), ("block", 3.0), ("cesaro", 8.0),
    ]


def test_scheme_parameters_checked(make_sweep):
    with pytest.raises(HypothesisViolation):
        THEOREM_CHECKS["T6"].build(make_sweep(scheme_u_values={"abel": [1.0]}))
    with pytest.raises(HypothesisViolation):
        THEOREM_CHECKS["T5"].build(make_sweep(tau_grid=[1.0]))


def test_unknown_theorem(make_sweep):
    with pytest.raises(PreconditionError):
        verify_theorem("T7", make_sweep())
