import math

import numpy as np
import pytest

from lab.elementary import ELEMENTARY_CHECKS, e3_argument, verify_elementary
from schemas.lab_schemas import Verdict
from utils.errors import HypothesisViolation, PreconditionError


def test_w_below_gabisonia(make_sweep):
    report = verify_elementary("E1", make_sweep())
    assert report.verdict == Verdict.LITERAL_PASS
    assert len(report.configurations) == 2 * 2 * 1 * 2
    one_rows = [c for c in report.configurations if c.function == "one"]
    assert all(c.degenerate for c in one_rows)


def test_w_below_uniform_modulus(make_sweep):
    report = verify_elementary("E2", make_sweep(functions=["cos", "squarewave"]))
    assert report.verdict == Verdict.LITERAL_PASS
    assert [s.function for s in report.skipped] == ["squarewave"]
    assert report.skipped[0].reason == "f ∉ C"


def test_norm_triples_checked(make_sweep):
    with pytest.raises(HypothesisViolation) as excinfo:
        ELEMENTARY_CHECKS["E3"].build(make_sweep(norm_triples=[[2, 1.5, 2]]))
    assert excinfo.value.inequality_id == "E3"
    with pytest.raises(HypothesisViolation):
        ELEMENTARY_CHECKS["E4"].build(make_sweep(norm_delta_exponents=[0, 1]))


def test_sup_norm_skips_discontinuous(make_sweep):
    sweep = make_sweep(functions=["squarewave", "cos"], norm_triples=[[1, 2, "inf"], [1, 2, 2]])
    configurations, skipped = ELEMENTARY_CHECKS["E4"].build(sweep)
    assert len(skipped) == 1
    assert skipped[0].params["pt"] == math.inf
    assert len(configurations) == 3
    assert all(c.x is None for c in configurations)


def test_e3_argument():
    assert e3_argument(np.pi / 2, 1.0, 2.0) == pytest.approx(math.log(2.0) / math.sqrt(2.0))


def test_unknown_elementary():
    with pytest.raises(PreconditionError):
        verify_elementary("E9", None)
