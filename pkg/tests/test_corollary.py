import logging

import numpy as np
import pytest

from lab.corollary import _check_vanishing_weights, decay_slope, has_decayed, u_values, verify_corollary
from schemas.lab_schemas import Verdict
from schemas.means_schemas import LambdaScheme
from utils.errors import HypothesisViolation


def test_u_values():
    assert u_values("block", (4, 6)) == [4.0, 5.0, 6.0]
    assert u_values("cesaro", (2, 4)) == [4.0, 8.0, 16.0]


def test_decay_helpers():
    assert has_decayed([1.0, 0.5, 0.05])
    assert not has_decayed([1.0, 0.5, 0.2])
    assert has_decayed([0.0, 1e-12])
    assert decay_slope([1.0, 2.0, 4.0], [1.0, 0.5, 0.25]) == pytest.approx(-1.0)
    assert decay_slope([1.0, 2.0], [0.0, 0.0]) is None


def test_trig_polynomials_are_degenerate(make_sweep):
    report = verify_corollary(make_sweep(functions=["one", "cos"]))
    assert report.verdict == Verdict.DEGENERATE_PASS
    assert report.converged
    assert len(report.entries) == 4


def test_block_means_decay_at_smooth_points(make_sweep):
    report = verify_corollary(make_sweep(functions=["squarewave"], corollary_schemes=["block", "cesaro"]))
    assert report.verdict == Verdict.BOUNDED_RATIO
    jump = [e for e in report.entries if e.x == 0.0]
    assert jump and not any(e.gabisonia_point for e in jump)
    smooth = [e for e in report.entries if e.x == 1.0]
    assert all(e.converged and e.slope < 0.0 for e in smooth)
    assert [e.scheme for e in smooth] == ["block", "cesaro"]


def test_slow_cusp_fails(make_sweep, caplog):
    with caplog.at_level(logging.WARNING):
        report = verify_corollary(make_sweep(functions=["cusp0.25"], points=[0.0]))
    assert report.verdict == Verdict.FAIL
    assert not report.converged
    assert "did not decay" in caplog.text


def test_no_gabisonia_points_is_skipped(make_sweep):
    report = verify_corollary(make_sweep(functions=["squarewave"], points=[0.0]))
    assert report.verdict == Verdict.SKIPPED


def test_weights_must_vanish():
    flat = LambdaScheme(
        name="flat",
        weights=lambda nu, u: np.ones(np.shape(nu)),
        blocks=[0, 2, 4],
        support_bound=lambda u: 4,
    )
    with pytest.raises(HypothesisViolation) as excinfo:
        _check_vanishing_weights(flat, [1.0, 2.0])
    assert excinfo.value.inequality_id == "C1"
