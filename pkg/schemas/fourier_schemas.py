from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class FourierSeries(BaseModel):
    """Truncated trigonometric Fourier series a0/2 + sum_{k<=N} (a_k cos kx + b_k sin kx)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a0: float
    a: np.ndarray = Field(..., description="Cosine coefficients a_1..a_N")
    b: np.ndarray = Field(..., description="Sine coefficients b_1..b_N")

    @model_validator(mode="after")
    def _check_lengths(self) -> "FourierSeries":
        if self.a.ndim != 1 or self.b.ndim != 1 or self.a.shape != self.b.shape:
            raise ValueError("cosine and sine coefficient vectors must have equal length N >= 0")
        return self

    @property
    def degree(self) -> int:
        return int(self.a.shape[0])

    def truncated(self, degree: int) -> "FourierSeries":
        return FourierSeries(a0=self.a0, a=self.a[:degree].copy(), b=self.b[:degree].copy())

    def combine(self, alpha: float, other: "FourierSeries", beta: float) -> "FourierSeries":
        """Coefficients of alpha*f + beta*g (both series truncated to the common degree)."""
        n = min(self.degree, other.degree)
        return FourierSeries(
            a0=alpha * self.a0 + beta * other.a0,
            a=alpha * self.a[:n] + beta * other.a[:n],
            b=alpha * self.b[:n] + beta * other.b[:n],
        )


class QuadratureSpec(BaseModel):
    """Composite Gauss-Legendre resolution: cells over one integration range, nodes per cell."""
    model_config = ConfigDict(frozen=True)

    cells: int = Field(512, ge=1)
    points_per_cell: Literal[4, 8, 16] = 8

    def refined(self, level: int) -> "QuadratureSpec":
        return QuadratureSpec(cells=self.cells * 2 ** level, points_per_cell=self.points_per_cell)
