import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class CharKind(str, Enum):
    W = "W"
    GABISONIA = "Gabisonia"
    GABISONIA_SUP = "GabisoniaSup"
    OMEGA_NORM = "OmegaNorm"
    BIG_PHI = "BigPhi"
    BIG_W = "BigW"
    PSI = "Psi"


class CharParams(BaseModel):
    """Parameters of a pointwise characteristic. Operation-specific orderings of delta/gamma are checked at call time."""
    model_config = ConfigDict(frozen=True)

    x: float = Field(0.0, description="Evaluation point")
    delta: float = Field(..., gt=0.0, le=math.pi)
    gamma: Optional[float] = Field(None, ge=0.0, le=math.pi)
    p: float = Field(1.0, ge=1.0, description="Integrability exponent; inf only for sup-style values")
    s: Optional[float] = Field(None, description="Block-sum exponent, s > p where required")

    @model_validator(mode="after")
    def _check_s(self) -> "CharParams":
        if self.s is not None and not self.s > self.p:
            raise ValueError("requires s > p")
        return self


class CharacteristicValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: CharKind
    params: CharParams
    value: float

    @model_validator(mode="after")
    def _check_value(self) -> "CharacteristicValue":
        if not math.isfinite(self.value):
            raise ValueError("characteristic value must be finite")
        if self.kind != CharKind.BIG_PHI and self.value < 0.0:
            raise ValueError(f"{self.kind.value} is nonnegative")
        return self
