"""
Report models for the penalise package.
"""
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from penalise.models.config import SuiteConfig

Verdict = Literal["pass", "warn", "fail"]
Relation = Literal["equality", "inequality", "tolerance", "critical"]


class Measurement(BaseModel):
    """One compared quantity inside a check."""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    quantity: str = Field(..., description="What was measured")
    relation: Relation = Field(..., description="How estimate and target are compared")
    target: float = Field(..., description="Oracle value or bound")
    estimate: float = Field(..., description="Measured value")
    stderr: float = Field(0.0, description="Standard error of the estimate (0 for deterministic)")
    allowance: float = Field(0.0, description="Extra slack, e.g. a grid-bias allowance or tolerance")
    z_score: float = Field(0.0, description="Standardised deviation used by the verdict")
    verdict: Verdict = Field(..., description="pass, warn or fail")


class CheckResult(BaseModel):
    """Outcome of one verification check; headline fields copy its worst measurement."""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    check_id: str = Field(..., description="Stable check identifier")
    kind: Literal["statistical", "deterministic"] = Field(..., description="Gating class")
    relation: Relation = Field(..., description="Relation of the headline measurement")
    target: float = Field(..., description="Headline target")
    estimate: float = Field(..., description="Headline estimate")
    stderr: float = Field(0.0, description="Headline standard error")
    z_score: float = Field(0.0, description="Headline z-score")
    allowance: float = Field(0.0, description="Headline allowance")
    verdict: Verdict = Field(..., description="Worst verdict over all measurements")
    provenance: str = Field(..., description="Where the tested identity comes from, then the identity")
    message: str = Field("", description="Summary or failure reason")
    n_paths: int = Field(0, ge=0, description="Monte Carlo paths per estimate (0 if none)")
    dt: Optional[float] = Field(None, description="Grid spacing used, when a grid was used")
    seed: int = Field(..., description="Root seed")
    details: List[Measurement] = Field(default_factory=list, description="All measurements")
    extra: Dict[str, Any] = Field(default_factory=dict, description="Recorded constants and rates")


class ReportHeader(BaseModel):
    """Run-level metadata written at the top of report.json."""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    package_version: str = Field(..., description="penalise version")
    gates: str = Field(..., description="Verdict gate documentation")
    truncation_mass: float = Field(..., description="μ_φ(u > H) removed by the horizon")
    config: SuiteConfig = Field(..., description="Suite configuration of the run")


class SuiteReport(BaseModel):
    """Everything written to report.json."""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    header: ReportHeader
    results: List[CheckResult] = Field(default_factory=list)
    exit_code: int = Field(0, description="0 iff no deterministic fail, no statistical fail and at most one statistical warn")


class ConvergenceRow(BaseModel):
    """One refinement level of a convergence table."""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    check_id: str
    level: float
    estimate: float
    stderr: float
    bias_proxy: float
