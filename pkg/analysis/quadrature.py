"""
Composite Gauss-Legendre quadrature on piecewise smooth integrands.

Integration ranges are cut into blocks (one block for a plain integral, the cells
(k-1)*delta..k*delta for the Gabisonia characteristic). Each block is subdivided
uniformly, cells are split at the known breakpoints of the integrand and graded
geometrically toward them, and per-block integrals are recovered with reduceat.
"""
import math
from functools import lru_cache
from typing import Callable, Iterable, Tuple

import numpy as np

from schemas.fourier_schemas import QuadratureSpec

GRADING_RATIO = 0.5
GRADING_LEVELS = 40


@lru_cache(maxsize=None)
def gauss_legendre_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def refine_edges(
        edges: np.ndarray,
        subdivisions: int,
        breakpoints: Iterable[float] = ()
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Subdivide blocks and split them at breakpoints.

    Args:
        edges: Sorted block edges e_0 < e_1 < ... < e_B
        subdivisions: Uniform cells per block
        breakpoints: Points where the integrand is not smooth

    Returns:
        tuple: (fine cell edges, index of the first fine cell of every block)
    """
    edges = np.asarray(edges, dtype=float)
    widths = np.diff(edges)
    fractions = np.arange(subdivisions) / subdivisions
    fine = (edges[:-1, None] + widths[:, None] * fractions[None, :]).ravel()
    fine = np.append(fine, edges[-1])

    lo, hi = edges[0], edges[-1]
    points = np.asarray([b for b in breakpoints if lo <= b <= hi], dtype=float)
    if points.size:
        step = (hi - lo) / (fine.size - 1)
        offsets = step * GRADING_RATIO ** np.arange(1, GRADING_LEVELS + 1)
        graded = (points[:, None] + np.concatenate([-offsets, offsets])[None, :]).ravel()
        extra = np.concatenate([points, graded])
        extra = extra[(extra > lo) & (extra < hi)]
        fine = np.union1d(fine, extra)

    starts = np.searchsorted(fine, edges[:-1])
    return fine, starts


def composite_nodes(fine_edges: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Flattened nodes and weights of the composite rule over the given cells."""
    nodes, weights = gauss_legendre_rule(order)
    a, b = fine_edges[:-1], fine_edges[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    t = mid[:, None] + half[:, None] * nodes[None, :]
    w = half[:, None] * weights[None, :]
    return t.ravel(), w.ravel()


def composite_rule(
        a: float,
        b: float,
        quad: QuadratureSpec,
        breakpoints: Iterable[float] = ()
) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for a single interval [a, b]."""
    fine, _ = refine_edges(np.array([a, b]), quad.cells, breakpoints)
    return composite_nodes(fine, quad.points_per_cell)


def block_integrals(
        func: Callable[[np.ndarray], np.ndarray],
        edges: np.ndarray,
        quad: QuadratureSpec,
        breakpoints: Iterable[float] = ()
) -> np.ndarray:
    """
    Integrals of func over every block [e_i, e_{i+1}].

    At least quad.cells cells cover the whole range; func receives a flat array of nodes.
    """
    edges = np.asarray(edges, dtype=float)
    n_blocks = edges.size - 1
    subdivisions = max(1, math.ceil(quad.cells / n_blocks))
    fine, starts = refine_edges(edges, subdivisions, breakpoints)
    t, w = composite_nodes(fine, quad.points_per_cell)
    values = np.asarray(func(t), dtype=float)
    cells = (values * w).reshape(fine.size - 1, quad.points_per_cell).sum(axis=1)
    return np.add.reduceat(cells, starts)


def integrate(
        func: Callable[[np.ndarray], np.ndarray],
        a: float,
        b: float,
        quad: QuadratureSpec,
        breakpoints: Iterable[float] = ()
) -> float:
    if b <= a:
        return 0.0
    return float(block_integrals(func, np.array([a, b]), quad, breakpoints)[0])
