import json
import math

import numpy as np
import pytest

from analysis.corpus import get_function
from lab.sweeps import (
    dyadic,
    load_sweep,
    points_for,
    quad_spec,
    require,
    subsample,
    sweep_fingerprint,
    sweep_from_dict,
)
from schemas.lab_schemas import Configuration
from utils.errors import ConfigError, HypothesisViolation


def test_presets():
    small = load_sweep("small")
    assert small.name == "small"
    assert small.functions == ["one", "cos", "squarewave", "cusp0.5"]
    assert load_sweep("default").name == "default"


def test_sweep_file(tmp_path):
    path = tmp_path / "mine.json"
    path.write_text(json.dumps({"functions": ["cos"], "norm_exponents": ["inf", 2]}))
    sweep = load_sweep(str(path))
    assert sweep.name == "mine"
    assert sweep.norm_exponents == [math.inf, 2.0]


def test_unknown_sweep():
    with pytest.raises(ConfigError) as excinfo:
        load_sweep("enormous")
    assert excinfo.value.key == "sweep"


@pytest.mark.parametrize(
    "data, key",
    [
        ({"functions": ["triangle"]}, "functions"),
        ({"functions": ["cos"], "bogus": 1}, "bogus"),
        ({"functions": ["cos"], "quad_points": 5}, "sweep"),
    ],
)
def test_invalid_sweeps(data, key):
    with pytest.raises(ConfigError) as excinfo:
        sweep_from_dict(data)
    assert excinfo.value.key == key


def test_corollary_range_must_increase():
    with pytest.raises(ConfigError):
        sweep_from_dict({"functions": ["cos"], "corollary_m_range": [5, 5]})


def test_refinement_doubles_cells(make_sweep):
    sweep = make_sweep()
    assert quad_spec(sweep, 0).cells == 64
    assert quad_spec(sweep, 1).cells == 128


def test_points_default_to_designated(make_sweep):
    f = get_function("cusp0.5")
    assert points_for(f, make_sweep(points=None)) == f.designated_points
    assert points_for(f, make_sweep()) == [0.0, 1.0]


def test_dyadic():
    assert dyadic([0, 1, 3]) == pytest.approx([np.pi, np.pi / 2, np.pi / 8])


def test_require():
    require(True, "L2", "never raised")
    with pytest.raises(HypothesisViolation) as excinfo:
        require(False, "L2", "s > p >= 1", {"p": 2, "s": 1})
    assert excinfo.value.inequality_id == "L2"
    assert "s > p >= 1" in str(excinfo.value)


def test_subsample_is_reproducible(make_sweep):
    configurations = [
        Configuration(inequality_id="E1", function="cos", x=0.0, params={"i": i}) for i in range(20)
    ]
    sweep = make_sweep(subsample=5, seed=7)
    first = subsample(configurations, sweep)
    assert first == subsample(configurations, sweep)
    assert len(first) == 5
    positions = [configurations.index(c) for c in first]
    assert positions == sorted(positions)
    assert subsample(configurations, make_sweep()) == configurations


def test_fingerprint_tracks_overrides():
    small = load_sweep("small")
    assert sweep_fingerprint(small) == sweep_fingerprint(load_sweep("small"))
    for override in ({"subsample": 12}, {"seed": 1}, {"quad_cells": 256}):
        changed = sweep_from_dict({**small.model_dump(), **override})
        assert sweep_fingerprint(changed) != sweep_fingerprint(small)
