"""
Pydantic schemas for CLI runs: the resolved configuration and the emitted manifest.
"""
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

Subcommand = Literal[
    "coeffs",
    "partial-sums",
    "chars",
    "means",
    "verify-elementary",
    "verify-lemma",
    "verify-theorem",
    "verify-corollary",
    "sweep",
]


class RunConfig(BaseModel):
    """
    Fully resolved configuration of one CLI run.

    Flags override config-file values; the result is echoed into the manifest so that
    `replay` can reproduce the run.
    """
    model_config = ConfigDict(extra="forbid")

    subcommand: Subcommand
    target: Optional[str] = Field(None, description="Inequality id for verify-* runs")
    function: Optional[str] = Field(None, description="Corpus function for compute runs")

    # Compute parameters
    degree: Optional[int] = Field(None, ge=0)
    samples: Optional[int] = Field(None, ge=1, description="FFT sample count M")
    method: Literal["fft", "quadrature", "analytic"] = "fft"
    x: List[float] = Field(default_factory=lambda: [0.0])
    p: float = Field(1.0, ge=1.0)
    s: float = 2.0
    q: float = Field(2.0, gt=0.0)
    indices: Optional[str] = None
    scheme: Optional[str] = None
    u: Optional[float] = None
    growth: str = "identity"
    delta_exponents: List[int] = Field(default_factory=lambda: list(range(8)))

    # Sweep parameters
    sweep: str = "default"
    seed: Optional[int] = None
    subsample: Optional[int] = Field(None, ge=1)
    include_non_theorem: bool = False

    # Quadrature overrides
    quad_cells: Optional[int] = Field(None, ge=1)
    quad_points: Optional[Literal[4, 8, 16]] = None

    out: Optional[str] = None
    threads: Optional[int] = Field(None, ge=1)
    constant_scale: float = Field(1.0, gt=0.0, description="Multiplies literal constants; < 1 forces failures")
    record: bool = True

    @field_validator("s")
    @classmethod
    def _check_s(cls, s: float, info: ValidationInfo) -> float:
        p = info.data.get("p")
        if p is not None and not s > p:
            raise ValueError("requires s > p")
        return s


class ReportSummary(BaseModel):
    inequality_id: str
    verdict: str
    sup_ratio: Optional[float] = None
    refinement_drift: Optional[float] = None
    literal_constant: Optional[float] = None
    configurations: int = 0
    reason: Optional[str] = None


class RunManifest(BaseModel):
    """Written next to the CSV; carries no timestamps so that repeated runs are byte-identical."""
    tool: str
    version: str
    config: Dict
    output: str
    exit_code: int
    reports: List[ReportSummary] = Field(default_factory=list)
