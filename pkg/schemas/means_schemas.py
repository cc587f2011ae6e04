"""
Pydantic schemas for strong means: index sequences, growth functions and lambda schemes.
"""
from typing import Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class IndexSequence(BaseModel):
    """Strictly increasing 0 <= k_0 < k_1 < ... < k_r with k_r >= r."""
    model_config = ConfigDict(frozen=True)

    indices: List[int] = Field(..., min_length=1)
    label: str = ""

    @model_validator(mode="after")
    def _check_indices(self) -> "IndexSequence":
        ks = self.indices
        if ks[0] < 0:
            raise ValueError("indices must be nonnegative")
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise ValueError("indices must be strictly increasing")
        if ks[-1] < len(ks) - 1:
            raise ValueError("requires k_r >= r")
        return self

    @property
    def r(self) -> int:
        return len(self.indices) - 1

    @property
    def k0(self) -> int:
        return self.indices[0]

    @property
    def kr(self) -> int:
        return self.indices[-1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=int)


class GrowthFunction(BaseModel):
    """A candidate member of the class Phi: phi(0) = 0, nondecreasing, doubling near 0, log phi(u) = O(u)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    phi: Callable[[np.ndarray], np.ndarray]
    doubling_constant: Optional[float] = Field(None, gt=0.0, description="Empirical K with phi(2u) <= K phi(u)")

    def __call__(self, u):
        return self.phi(np.asarray(u, dtype=float))


class LambdaScheme(BaseModel):
    """
    Weights lambda_nu(u) >= 0 with block structure N_0 = 0 < N_1 < ... (N_{-1} = -1).

    support_bound(u) is the largest nu with nonzero weight, or None for infinite support;
    infinite-support schemes are truncated with a certified tail.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    weights: Callable[[np.ndarray, float], np.ndarray]
    blocks: List[int] = Field(..., min_length=2)
    support_bound: Callable[[float], Optional[int]]

    @field_validator("blocks")
    @classmethod
    def _check_blocks(cls, blocks: List[int]) -> List[int]:
        if blocks[0] != 0:
            raise ValueError("blocks start at N_0 = 0")
        if any(b <= a for a, b in zip(blocks, blocks[1:])):
            raise ValueError("blocks must be strictly increasing")
        return blocks

    def block(self, m: int) -> int:
        """N_m with the convention N_{-1} = -1."""
        if m == -1:
            return -1
        return self.blocks[m]

    def block_range(self, m: int) -> np.ndarray:
        """nu = N_{m-2}+1, ..., N_m."""
        return np.arange(self.block(m - 2) + 1, self.block(m) + 1)

    def __call__(self, nu, u: float) -> np.ndarray:
        return np.asarray(self.weights(np.asarray(nu, dtype=int), u), dtype=float)


class HLambdaResult(BaseModel):
    value: float
    truncation_index: int
    tail_bound: float = 0.0


class PhiClassReport(BaseModel):
    member: bool
    doubling_constant: float
    growth_slope: float
    reasons: List[str] = Field(default_factory=list)


class LambdaClassReport(BaseModel):
    member: bool
    worst_ratio: float
    ratios: Dict[int, float] = Field(default_factory=dict)
    reason: Optional[str] = None
