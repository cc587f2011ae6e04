"""
Sweep loading and the shared helpers used by the configuration builders.
"""
import hashlib
import json
import logging
import math
from pathlib import Path
from typing import Iterable, List, Optional

import numpy as np
from pydantic import ValidationError

from analysis.corpus import get_function
from schemas.corpus_schemas import TestFunction
from schemas.fourier_schemas import QuadratureSpec
from schemas.lab_schemas import Configuration, SweepSpec
from utils.errors import ConfigError, HypothesisViolation
from utils.helpers.read_json import load_json_file, load_sweep_presets

logger = logging.getLogger(__name__)


def load_sweep(name_or_path: str) -> SweepSpec:
    """
    Resolve a sweep by preset name or JSON file path.

    Raises:
        ConfigError: unknown preset, unreadable file or invalid keys
    """
    presets = load_sweep_presets()
    if name_or_path in presets:
        data = dict(presets[name_or_path])
        data.setdefault("name", name_or_path)
    else:
        path = Path(name_or_path)
        if not path.is_file():
            raise ConfigError("sweep", f"unknown preset or missing file '{name_or_path}' (presets: {', '.join(presets)})")
        try:
            data = load_json_file(path)
        except ValueError as e:
            raise ConfigError("sweep", f"invalid JSON in {path}: {e}") from e
        data.setdefault("name", path.stem)
    return sweep_from_dict(data)


def sweep_fingerprint(sweep: SweepSpec) -> str:
    """Digest of the resolved sweep, overrides included; baselines only compare runs that share it."""
    payload = json.dumps(sweep.model_dump(mode="json"), sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def sweep_from_dict(data: dict) -> SweepSpec:
    try:
        sweep = SweepSpec(**data)
    except ValidationError as e:
        error = e.errors()[0]
        key = ".".join(str(part) for part in error["loc"]) or "sweep"
        raise ConfigError(key, error["msg"]) from e
    for name in sweep.functions:
        try:
            get_function(name)
        except ValueError as e:
            raise ConfigError("functions", str(e)) from e
    return sweep


# ==================== Resolution ====================

def quad_spec(sweep: SweepSpec, level: int = 0) -> QuadratureSpec:
    return QuadratureSpec(cells=sweep.quad_cells, points_per_cell=sweep.quad_points).refined(level)


def norm_spec(sweep: SweepSpec, level: int = 0) -> QuadratureSpec:
    return QuadratureSpec(cells=sweep.norm_cells, points_per_cell=sweep.norm_points).refined(level)


# ==================== Builders ====================

def functions(sweep: SweepSpec) -> List[TestFunction]:
    return [get_function(name) for name in sweep.functions]


def points_for(f: TestFunction, sweep: SweepSpec) -> List[float]:
    return list(sweep.points) if sweep.points is not None else list(f.designated_points)


def dyadic(exponents: Iterable[int]) -> List[float]:
    return [float(np.pi * 2.0 ** -j) for j in exponents]


def require(condition: bool, inequality_id: str, constraint: str, configuration=None) -> None:
    """Raise HypothesisViolation before any computation when a sweep tuple breaks a hypothesis."""
    if not condition:
        raise HypothesisViolation(inequality_id, constraint, configuration)


def config(inequality_id: str, f: TestFunction, x: Optional[float], flagged: bool = False, **params) -> Configuration:
    return Configuration(inequality_id=inequality_id, function=f.name, x=x, params=params, flagged=flagged)


def subsample(configurations: List[Configuration], sweep: SweepSpec) -> List[Configuration]:
    """Reproducible reduced run: draw sweep.subsample configurations with default_rng(seed)."""
    if sweep.subsample is None or sweep.subsample >= len(configurations):
        return configurations
    rng = np.random.default_rng(sweep.seed)
    chosen = np.sort(rng.choice(len(configurations), size=sweep.subsample, replace=False))
    logger.info(f"Subsampled {sweep.subsample} of {len(configurations)} configurations (seed={sweep.seed})")
    return [configurations[i] for i in chosen]


def is_sup_norm(p: float) -> bool:
    return p == math.inf
