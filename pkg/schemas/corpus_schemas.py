"""
Pydantic schemas for the built-in corpus of 2*pi-periodic test functions.
"""
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class PointKind(str, Enum):
    TRIG_POLYNOMIAL = "TrigPolynomialEverywhere"
    SMOOTH = "SmoothPoint"
    HOLDER_CUSP = "HolderCusp"
    JUMP = "JumpPoint"
    UNCLASSIFIED = "Unclassified"


class PointClass(BaseModel):
    """Local regularity of a function at one point (Lebesgue / Gabisonia point hints)."""
    model_config = ConfigDict(frozen=True)

    kind: PointKind
    alpha: Optional[float] = Field(None, description="Hoelder exponent, HolderCusp only")
    left_limit: Optional[float] = Field(None, description="f(x-0), JumpPoint only")
    right_limit: Optional[float] = Field(None, description="f(x+0), JumpPoint only")

    @model_validator(mode="after")
    def _check_payload(self) -> "PointClass":
        if self.kind == PointKind.JUMP and (self.left_limit is None or self.right_limit is None):
            raise ValueError("JumpPoint carries both one-sided limits")
        if self.kind == PointKind.HOLDER_CUSP and (self.alpha is None or not 0.0 < self.alpha <= 1.0):
            raise ValueError("HolderCusp carries alpha in (0, 1]")
        return self

    @property
    def is_gabisonia_point(self) -> bool:
        return self.kind in (PointKind.TRIG_POLYNOMIAL, PointKind.SMOOTH, PointKind.HOLDER_CUSP)

    @property
    def midpoint(self) -> Optional[float]:
        if self.kind != PointKind.JUMP:
            return None
        return 0.5 * (self.left_limit + self.right_limit)


class SingularPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    location: float = Field(..., ge=-np.pi, le=np.pi, description="Location in [-pi, pi]")
    point_class: PointClass


class MajorantSpec(BaseModel):
    """
    Declares how the pointwise majorant w_x(delta) = C * delta**e is calibrated.

    e = min(local Hoelder exponent, 1 - 1/s); C = safety * sup G_x f(delta)_{1,s} / delta**e
    over the dyadic grid delta_j = pi * 2**-j, j in grid_exponents.
    """
    model_config = ConfigDict(frozen=True)

    s: float = Field(1.5, gt=1.0, description="Default s of G_{1,s}; other s are calibrated on demand")
    safety: float = Field(1.05, ge=1.0)
    grid_exponents: Tuple[int, ...] = tuple(range(15))


class MajorantReport(BaseModel):
    """Calibration of w_x(delta) = constant * delta**exponent at one point, checked on the grid."""
    function: str
    x: float
    s: float
    constant: float
    exponent: float
    dominates: bool
    nondecreasing: bool
    subadditive: bool

    @property
    def valid(self) -> bool:
        return self.dominates and self.nondecreasing and self.subadditive


class TestFunction(BaseModel):
    """A closed-form 2*pi-periodic real function with analytic reference data."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = Field(..., description="Identifier used on the command line")
    description: str = ""
    eval: Callable[[np.ndarray], np.ndarray] = Field(..., description="Closed form on [-pi, pi), vectorized")
    analytic_coeffs: Optional[Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]] = Field(
        None, description="k -> (a_k, b_k); k = 0 gives a_0"
    )
    singular_points: List[SingularPoint] = Field(default_factory=list)
    majorant: Optional[MajorantSpec] = None
    smoothness_alpha: Optional[float] = Field(None, gt=0.0, description="Hoelder exponent at regular points")
    trig_degree: Optional[int] = Field(None, ge=0, description="Degree when f is a trig polynomial")
    sup_norm: float = Field(..., ge=0.0, description="Certified bound on |f|")
    is_continuous: bool = True
    designated_points: List[float] = Field(default_factory=list)

    # pytest would otherwise try to collect this class
    __test__ = False

    @property
    def jump_points(self) -> List[SingularPoint]:
        return [sp for sp in self.singular_points if sp.point_class.kind == PointKind.JUMP]

    @property
    def singular_locations(self) -> List[float]:
        return [sp.location for sp in self.singular_points]
