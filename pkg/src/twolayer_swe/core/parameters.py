"""Physical and numerical constants of a two-layer run."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class EigenMethod(str, Enum):
    VELOCITY_DIFFERENCE = "velocity_difference"
    LINEARIZED_STATIC = "linearized_static"
    LINEARIZED_DYNAMIC = "linearized_dynamic"
    DIRECT = "direct"


class InundationMethod(str, Enum):
    ZERO_DEPTH_ESTIMATE = "zero_depth_estimate"
    SMALL_DEPTH_FILL = "small_depth_fill"


class Parameters(BaseModel):
    """Gravity, layer densities, dry tolerance, CFL target and solver choices."""
    model_config = ConfigDict(frozen=True, use_enum_values=False)

    g: float = Field(9.8, gt=0, description="Gravitational acceleration (m/s^2)")
    rho1: float = Field(0.95, gt=0, description="Top layer density")
    rho2: float = Field(1.0, gt=0, description="Bottom layer density")
    dry_tolerance: float = Field(1.0e-3, gt=0, description="Depth below which a layer is dry (m)")
    cfl_target: float = Field(0.9, gt=0, le=1.0, description="Courant number multiplier")
    eigen_method: EigenMethod = EigenMethod.LINEARIZED_DYNAMIC
    inundation_method: InundationMethod = InundationMethod.ZERO_DEPTH_ESTIMATE
    manning_n: Optional[float] = Field(None, ge=0, description="Manning coefficient (s/m^(1/3))")

    @model_validator(mode="after")
    def _check_stratification(self) -> "Parameters":
        if self.rho1 > self.rho2:
            raise ValueError(
                f"rho1={self.rho1} exceeds rho2={self.rho2}: an unstably stratified "
                "column is not hyperbolic"
            )
        return self

    @property
    def r(self) -> float:
        """Density ratio rho1/rho2."""
        return self.rho1 / self.rho2

    @property
    def reduced_gravity(self) -> float:
        return (1.0 - self.r) * self.g
