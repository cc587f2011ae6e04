import pytest

from database.db import DatabaseManager
from lab.sweeps import sweep_from_dict
from schemas.fourier_schemas import QuadratureSpec


@pytest.fixture
def coarse_quad():
    return QuadratureSpec(cells=64, points_per_cell=8)


@pytest.fixture
def norm_quad():
    return QuadratureSpec(cells=32, points_per_cell=4)


@pytest.fixture
def ledger(tmp_path):
    manager = DatabaseManager(f"sqlite:///{tmp_path / 'ledger.db'}")
    manager.init_db()
    return manager


@pytest.fixture
def make_sweep():
    """A cheap sweep: two points, coarse quadrature, overridable per test."""

    def build(**overrides):
        data = {
            "name": "test",
            "functions": ["one", "cos"],
            "points": [0.0, 1.0],
            "index_families": ["arith:4", "lacunary:3"],
            "ps_pairs": [[1, 2]],
            "p_grid": [1],
            "lemma1_triples": [[1, 2, 1]],
            "norm_triples": [[1, 2, 2]],
            "norm_exponents": [2],
            "q_pairs": [[2, 2], [2, 1]],
            "delta_exponents": [1, 2],
            "norm_delta_exponents": [1],
            "gamma_ratios": [1, 0.5],
            "gamma_multipliers": [1],
            "block_count": 3,
            "growth_functions": ["identity"],
            "scheme_u_values": {"block": [2, 3], "cesaro": [8]},
            "corollary_m_range": [4, 10],
            "corollary_schemes": ["block"],
            "quad_cells": 64,
            "norm_cells": 16,
        }
        data.update(overrides)
        return sweep_from_dict(data)

    return build
