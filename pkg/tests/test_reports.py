import pytest

from lab.reports import InequalityCheck, estimate_constant, loglog_slope, refinement_drift, run_check
from schemas.lab_schemas import Configuration, Evaluation, Verdict
from utils.errors import PreconditionError


def _configurations(values, flagged=()):
    return [
        Configuration(inequality_id="X", function="cos", x=0.0, params={"i": i, "lhs": lhs, "rhs": rhs},
                      flagged=i in flagged)
        for i, (lhs, rhs) in enumerate(values)
    ]


def _check(values, constant=None, flagged=(), evaluate=None, **kwargs):
    return InequalityCheck(
        inequality_id="X",
        description="synthetic",
        build=lambda sweep: (_configurations(values, flagged), []),
        evaluate=evaluate or (lambda c, quad, nquad: Evaluation(lhs=c.params["lhs"], rhs=c.params["rhs"])),
        constant=constant,
        **kwargs,
    )


def test_literal_pass(make_sweep):
    report = run_check(_check([(0.5, 1.0), (1.0, 1.0)], constant=lambda c: 1.0), make_sweep())
    assert report.verdict == Verdict.LITERAL_PASS
    assert report.literal_constant == 1.0
    assert report.sup_ratio == 1.0
    assert report.sup_ratio_by_level == [1.0, 1.0]


def test_constant_scale_forces_failure(make_sweep):
    report = run_check(_check([(0.5, 1.0), (1.0, 1.0)], constant=lambda c: 1.0), make_sweep(), constant_scale=0.5)
    assert report.verdict == Verdict.FAIL
    assert report.literal_constant == 0.5
    assert report.reason.startswith("2 failing rows")


def test_slack_absorbs_rounding(make_sweep):
    check = _check([(1.0 + 1e-13, 1.0)], constant=lambda c: 1.0, slack=1e-12)
    assert run_check(check, make_sweep()).verdict == Verdict.LITERAL_PASS


def test_degenerate_rows(make_sweep):
    report = run_check(_check([(0.0, 0.0), (1e-11, 1e-13)]), make_sweep())
    assert report.verdict == Verdict.DEGENERATE_PASS
    assert all(c.degenerate and c.ratio is None for c in report.configurations)
    assert run_check(_check([(1.0, 0.0)]), make_sweep()).verdict == Verdict.FAIL


def test_flagged_rows_do_not_decide(make_sweep):
    check = _check([(0.5, 1.0), (5.0, 1.0)], constant=lambda c: 1.0, flagged=(1,))
    report = run_check(check, make_sweep())
    assert report.verdict == Verdict.LITERAL_PASS
    assert report.sup_ratio == 0.5
    assert [c.flagged for c in report.configurations] == [False, True]


def test_bounded_ratio(make_sweep):
    report = run_check(_check([(3.0, 1.0), (1.0, 2.0)]), make_sweep())
    assert report.verdict == Verdict.BOUNDED_RATIO
    assert report.literal_constant is None
    assert report.sup_ratio == 3.0
    assert report.refinement_drift == 0.0


def test_drift_fails_bounded_checks(make_sweep):
    growing = _check([(1.0, 1.0)], evaluate=lambda c, quad, nquad: Evaluation(lhs=quad.cells / 64.0, rhs=1.0))
    report = run_check(growing, make_sweep())
    assert report.sup_ratio_by_level == [1.0, 2.0]
    assert report.refinement_drift == pytest.approx(0.5)
    assert report.verdict == Verdict.FAIL
    assert "refinement drift" in report.reason


def test_no_configurations(make_sweep):
    report = run_check(_check([]), make_sweep())
    assert report.verdict == Verdict.SKIPPED
    assert report.reason == "no applicable configuration"


def test_refinement_drift():
    assert refinement_drift([1.0, 2.0]) == 0.5
    assert refinement_drift([3.0, 1.0, 1.0]) == 0.0
    assert refinement_drift([1.0, 1e-9]) == 0.0


def test_loglog_slope(make_sweep):
    report = run_check(_check([(r ** 2, r) for r in (1.0, 2.0, 4.0)]), make_sweep())
    assert report.slope == pytest.approx(2.0)
    assert loglog_slope(report.configurations[:1]) is None


def test_estimate_constant(make_sweep):
    many = run_check(_check([(float(i), 1.0) for i in range(1, 13)]), make_sweep())
    assert estimate_constant(many) == 12.0
    few = run_check(_check([(1.0, 1.0)] * 3), make_sweep())
    with pytest.raises(PreconditionError, match="at least 10"):
        estimate_constant(few)
