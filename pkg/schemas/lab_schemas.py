"""
Pydantic schemas for inequality sweeps and their reports.
"""
import math
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

ParamValue = Union[int, float, str]


class Verdict(str, Enum):
    LITERAL_PASS = "LiteralPass"
    BOUNDED_RATIO = "BoundedRatio"
    DEGENERATE_PASS = "DegeneratePass"
    SKIPPED = "Skipped"
    FAIL = "Fail"

    @property
    def is_failure(self) -> bool:
        return self == Verdict.FAIL


def _format_param(value: ParamValue) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _exponent(value: Union[float, str]) -> float:
    if isinstance(value, str):
        if value.lower() in ("inf", "infinity", "c"):
            return math.inf
        return float(value)
    return float(value)


class Configuration(BaseModel):
    """One point of a sweep: function, evaluation point and inequality parameters."""
    model_config = ConfigDict(frozen=True)

    inequality_id: str
    function: str
    x: Optional[float] = None
    params: Dict[str, ParamValue] = Field(default_factory=dict)
    flagged: bool = Field(False, description="Outside the theorem's hypotheses, reported separately")

    @property
    def key(self) -> str:
        x = "-" if self.x is None else f"{self.x:.17g}"
        params = ";".join(f"{k}={_format_param(self.params[k])}" for k in sorted(self.params))
        return f"{self.function}|{x}|{params}"


class Evaluation(BaseModel):
    lhs: float
    rhs: float
    secondary_rhs: Optional[float] = None


class ConfigurationResult(BaseModel):
    key: str
    function: str
    x: Optional[float] = None
    params: Dict[str, ParamValue] = Field(default_factory=dict)
    lhs: float
    rhs: float
    ratio: Optional[float] = Field(None, description="lhs/rhs; None when degenerate")
    secondary_rhs: Optional[float] = None
    degenerate: bool = False
    passed: bool = True
    flagged: bool = False


class SkippedConfiguration(BaseModel):
    function: str
    x: Optional[float] = None
    params: Dict[str, ParamValue] = Field(default_factory=dict)
    reason: str


class RatioReport(BaseModel):
    inequality_id: str
    description: str = ""
    literal_constant: Optional[float] = None
    slack: float = 0.0
    configurations: List[ConfigurationResult] = Field(default_factory=list)
    skipped: List[SkippedConfiguration] = Field(default_factory=list)
    sup_ratio: float = 0.0
    sup_ratio_by_level: List[float] = Field(default_factory=list)
    refinement_drift: float = 0.0
    slope: Optional[float] = Field(None, description="Slope of the log-log fit of lhs against rhs")
    verdict: Verdict
    reason: Optional[str] = None

    @property
    def nondegenerate(self) -> List[ConfigurationResult]:
        return [c for c in self.configurations if not c.degenerate and not c.flagged]


class DecayEntry(BaseModel):
    function: str
    x: float
    point_kind: str
    gabisonia_point: bool
    scheme: str
    u_values: List[float]
    h_values: List[float]
    slope: Optional[float] = None
    converged: bool


class CorollaryReport(BaseModel):
    entries: List[DecayEntry] = Field(default_factory=list)
    converged: bool
    verdict: Verdict


class SweepSpec(BaseModel):
    """
    Grids of one verification sweep.

    Parameter tuples are explicit so that every tuple can be checked against the
    hypotheses of the inequality it feeds; dyadic deltas are pi * 2**-j.
    """
    model_config = ConfigDict(extra="forbid")

    name: str = "custom"
    functions: List[str] = Field(..., min_length=1)
    points: Optional[List[float]] = Field(None, description="x values; None uses each function's designated points")
    index_families: List[str] = Field(default_factory=lambda: ["arith:16", "lacunary:8", "shifted:4,8"])

    ps_pairs: List[Tuple[float, float]] = Field(default_factory=lambda: [(1.0, 1.5), (1.0, 2.0), (2.0, 3.0)])
    p_grid: List[float] = Field(default_factory=lambda: [1.0, 2.0])
    lemma1_triples: List[Tuple[float, float, float]] = Field(
        default_factory=lambda: [(1.0, 1.5, 0.5), (1.0, 2.0, 1.0), (1.0, 2.0, 2.0)]
    )
    norm_triples: List[Tuple[float, float, Union[float, str]]] = Field(
        default_factory=lambda: [(1.0, 1.5, 2.0), (1.0, 2.0, "inf")]
    )
    norm_exponents: List[Union[float, str]] = Field(default_factory=lambda: [2.0, "inf"])
    q_pairs: List[Tuple[float, float]] = Field(default_factory=lambda: [(2.0, 2.0), (2.0, 1.0), (3.0, 3.0)])
    tau_grid: List[float] = Field(default_factory=lambda: [2.0])

    delta_exponents: List[int] = Field(default_factory=lambda: list(range(1, 9)))
    norm_delta_exponents: List[int] = Field(default_factory=lambda: [1, 2, 3, 4])
    gamma_ratios: List[float] = Field(default_factory=lambda: [1.0, 0.5, 0.25])
    gamma_multipliers: List[float] = Field(default_factory=lambda: [1.0, 2.0])

    block_count: int = Field(8, ge=2)
    growth_functions: List[str] = Field(default_factory=lambda: ["identity", "power2"])
    scheme_u_values: Dict[str, List[float]] = Field(
        default_factory=lambda: {"block": [2, 4, 6, 8], "cesaro": [8, 32, 128], "abel": [8, 32, 128]}
    )
    corollary_m_range: Tuple[int, int] = (4, 20)
    corollary_schemes: List[str] = Field(default_factory=lambda: ["block", "cesaro"])

    refinement_levels: int = Field(2, ge=2)
    quad_cells: int = Field(512, ge=1)
    quad_points: int = 8
    norm_cells: int = Field(64, ge=1)
    norm_points: int = 4

    include_non_theorem: bool = False
    subsample: Optional[int] = Field(None, ge=1)
    seed: int = 0

    @field_validator("norm_exponents")
    @classmethod
    def _parse_exponents(cls, values):
        return [_exponent(v) for v in values]

    @field_validator("norm_triples")
    @classmethod
    def _parse_triples(cls, values):
        return [(float(p), float(s), _exponent(pt)) for p, s, pt in values]

    @model_validator(mode="after")
    def _check_resolution(self) -> "SweepSpec":
        for points in (self.quad_points, self.norm_points):
            if points not in (4, 8, 16):
                raise ValueError("points per cell must be 4, 8 or 16")
        if self.corollary_m_range[0] >= self.corollary_m_range[1]:
            raise ValueError("corollary_m_range must be increasing")
        return self
