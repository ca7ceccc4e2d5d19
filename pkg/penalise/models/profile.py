"""
Integrand profile model for the penalise package.
"""
import math

from pydantic import BaseModel, ConfigDict, Field


class IntegrandProfile(BaseModel):
    """Weighted norms of a deterministic integrand; math.inf marks divergence."""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    name: str = Field("", description="Label of the integrand")
    l2_norm: float = Field(..., ge=0, description="‖f‖ in L²(ds)")
    l1_sqrt_norm: float = Field(..., ge=0, description="∫|f(s)| ds/√s")
    l1_one_plus_sqrt_norm: float = Field(..., ge=0, description="∫|f(s)| ds/(1+√s)")
    phi_norm: float = Field(..., ge=0, description="‖f‖_φ = ∫|f(s)| K_φ(s) ds")

    @property
    def in_l2(self) -> bool:
        return math.isfinite(self.l2_norm)

    @property
    def in_l1_sqrt(self) -> bool:
        return math.isfinite(self.l1_sqrt_norm)

    @property
    def in_l1_one_plus_sqrt(self) -> bool:
        return math.isfinite(self.l1_one_plus_sqrt_norm)

    @property
    def phi_finite(self) -> bool:
        return math.isfinite(self.phi_norm)

    @property
    def approximable(self) -> bool:
        """Whether step functions approximate f in both norms."""
        return self.in_l2 and self.in_l1_one_plus_sqrt
