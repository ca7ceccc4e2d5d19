"""
Configuration models for the penalise package.
"""
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class TiltSettings(BaseModel):
    """Choice of the tilting function φ turning 𝒲 into a finite measure."""
    model_config = ConfigDict(extra="forbid")

    kind: Literal["exponential", "indicator"] = Field(
        "exponential", description="exponential: φ(u)=e^{-rate·u}; indicator: φ=1 on (0, cutoff]"
    )
    rate: float = Field(1.0, gt=0, description="Rate of the exponential tilt")
    cutoff: float = Field(1.0, gt=0, description="Right end of the indicator tilt")


class ToleranceSettings(BaseModel):
    """Verdict gates and numerical tolerances used by the verification suite."""
    model_config = ConfigDict(extra="forbid")

    z_gate: float = Field(3.0, gt=0, description="|z| up to which a statistical check passes")
    warn_gate: float = Field(5.0, gt=0, description="|z| up to which a failed gate is only a warning")
    quadrature_rel_tol: float = Field(1e-8, gt=0, description="Relative tolerance of quadrature oracles")
    identity_tol: float = Field(1e-10, ge=0, description="Relative tolerance of the bridge identity")
    additivity_tol: float = Field(1e-12, ge=0, description="Relative tolerance of exact additivity checks")
    local_epsilon: float = Field(0.05, ge=0, description="ε of the local-convergence probability")
    local_threshold: float = Field(0.01, gt=0, description="Bound on the local-convergence probability at the finest level")
    limit_ratio_tolerance: float = Field(0.05, gt=0, description="Allowed |limit_ratio(400) − C_φ|")
    nonfinite_fraction: float = Field(1e-3, ge=0, description="Fraction of non-finite functional values that aborts an estimate")

    @model_validator(mode="after")
    def _gates_ordered(self) -> "ToleranceSettings":
        if self.warn_gate < self.z_gate:
            raise ValueError("warn_gate must be >= z_gate")
        return self


class SuiteConfig(BaseModel):
    """Sizes, seed and tilt shared by every check of a run."""
    model_config = ConfigDict(extra="forbid")

    n_paths: int = Field(100_000, gt=1, description="Monte Carlo paths per check")
    dt: float = Field(2.0 ** -10, gt=0, description="Grid spacing Δ for uniform grids")
    horizon: float = Field(16.0, gt=0, description="Sampling horizon H for tilted paths")
    seed: int = Field(20240917, ge=0, lt=2 ** 64, description="Root seed of all random streams")
    chunk_size: int = Field(4096, gt=1, description="Paths per Monte Carlo chunk")
    workers: Optional[int] = Field(None, gt=0, description="Concurrent checks (default: CPU count)")
    lambda_time: float = Field(1.0, gt=0, description="Time T of the absolute-continuity cross-check")
    tilt: TiltSettings = Field(default_factory=TiltSettings, description="Tilting function")
    tolerances: ToleranceSettings = Field(default_factory=ToleranceSettings, description="Verdict gates")


class RunConfig(BaseModel):
    """Fully resolved command-line run; echoed as resolved_config.json."""
    model_config = ConfigDict(extra="forbid")

    subcommand: Literal["simulate", "integrate", "verify", "table"] = Field(
        "verify", description="Subcommand to run"
    )
    out: str = Field("penalise-out", description="Output directory")
    suite: SuiteConfig = Field(default_factory=SuiteConfig, description="Suite settings")
    checks: Optional[List[str]] = Field(None, description="Subset of check ids (verify) or the table check")
    dump_paths: int = Field(0, ge=0, description="Full tilted paths written as CSV by simulate")
    integrand: List[Tuple[float, float]] = Field(
        default_factory=list, description="Step function as (t_k, c_k) pairs for integrate"
    )
    t_grid: List[float] = Field(default_factory=list, description="Times of the I_t trajectory")
    levels: List[float] = Field(default_factory=list, description="Refinement levels for table")

    @field_validator("t_grid", "levels")
    @classmethod
    def _non_negative(cls, values: List[float]) -> List[float]:
        if any(v < 0 for v in values):
            raise ValueError("values must be non-negative")
        return values
