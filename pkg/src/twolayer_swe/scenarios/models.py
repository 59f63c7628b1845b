"""Scenario description models and their flat key-value form."""

from enum import Enum
from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from twolayer_swe.config.environment import SOLVER_CONFIG
from twolayer_swe.core.parameters import EigenMethod, InundationMethod, Parameters
from twolayer_swe.core.state import LinearizedBackground
from twolayer_swe.driver.grid import BoundaryCondition, BoundarySpec, Grid
from twolayer_swe.driver.limiters import Limiter


class BathymetryKind(str, Enum):
    FLAT = "flat"
    STEP = "step"
    SLOPE = "slope"
    GAUSSIAN_BUMP = "gaussian_bump"


class PerturbationKind(str, Enum):
    NONE = "none"
    SIMPLE_WAVE = "simple_wave"
    GAUSSIAN_INTERNAL = "gaussian_internal"
    SINE_SURFACE = "sine_surface"


class BathymetrySpec(BaseModel):
    """Bottom elevation families.

    flat: ``left`` everywhere. step: ``left`` below ``location``, ``right``
    from it on. slope: ``left`` up to ``location``, linear to ``right`` at
    ``location_end``. gaussian_bump: ``left + amplitude exp(-(x - center)^2 / width)``.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: BathymetryKind = BathymetryKind.FLAT
    left: float = -1.0
    right: float = -1.0
    location: float = 0.5
    location_end: float = 0.5
    amplitude: float = 0.0
    center: float = 0.0
    width: float = 1.0

    @model_validator(mode="after")
    def _check_shape(self) -> "BathymetrySpec":
        if self.kind is BathymetryKind.SLOPE and not self.location_end > self.location:
            raise ValueError("A slope needs location_end > location")
        if self.kind is BathymetryKind.GAUSSIAN_BUMP and not self.width > 0:
            raise ValueError("A gaussian bump needs a positive width")
        return self

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind is BathymetryKind.FLAT:
            return np.full_like(x, self.left)
        if self.kind is BathymetryKind.STEP:
            return np.where(x < self.location, self.left, self.right)
        if self.kind is BathymetryKind.SLOPE:
            slope = (self.right - self.left) / (self.location_end - self.location)
            ramp = self.left + slope * (x - self.location)
            return np.where(x < self.location, self.left, np.where(x >= self.location_end, self.right, ramp))
        return self.left + self.amplitude * np.exp(-((x - self.center) ** 2) / self.width)


class PerturbationSpec(BaseModel):
    """Departure from the ocean at rest.

    simple_wave: ``epsilon`` times eigenvector ``family`` (1-4) left of ``location``.
    gaussian_internal: internal surface raised by ``amplitude exp(-((x - location)/width)^2)``
    with the top surface kept flat.
    sine_surface: bottom layer thickened by ``epsilon sin(pi (x - x_mid)/(upper - x_mid))``
    on (``lower``, ``upper``), lifting both surfaces.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: PerturbationKind = PerturbationKind.NONE
    family: int = Field(3, ge=1, le=4)
    epsilon: float = 0.0
    amplitude: float = 0.0
    location: float = 0.0
    width: float = 1.0
    lower: float = 0.0
    upper: float = 0.0
    x_mid: float = 0.0


class ScenarioSpec(BaseModel):
    """Everything needed to set up and run one experiment."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    x_lo: float = 0.0
    x_hi: float = 1.0
    n_cells: int = Field(100, ge=4)
    bathymetry: BathymetrySpec = BathymetrySpec()
    eta1_hat: float = 0.0
    eta2_hat: float = -0.6
    perturbation: PerturbationSpec = PerturbationSpec()

    g: float = 9.8
    rho1: float = 0.95
    rho2: float = 1.0
    dry_tolerance: float = 1.0e-3
    cfl_target: float = 0.9
    manning_n: Optional[float] = None
    eigen_method: EigenMethod = EigenMethod.LINEARIZED_DYNAMIC
    inundation_method: InundationMethod = InundationMethod.ZERO_DEPTH_ESTIMATE
    limiter: Limiter = Field(default_factory=lambda: Limiter(SOLVER_CONFIG['limiter']))

    t_final: float = Field(1.0, gt=0)
    n_frames: int = Field(1, ge=1)
    lower_bc: BoundaryCondition = BoundaryCondition.EXTRAPOLATION
    upper_bc: BoundaryCondition = BoundaryCondition.EXTRAPOLATION

    @model_validator(mode="after")
    def _check_background(self) -> "ScenarioSpec":
        if self.eta2_hat > self.eta1_hat:
            raise ValueError(
                f"eta2_hat={self.eta2_hat} lies above eta1_hat={self.eta1_hat}"
            )
        return self

    def parameters(self) -> Parameters:
        return Parameters(
            g=self.g,
            rho1=self.rho1,
            rho2=self.rho2,
            dry_tolerance=self.dry_tolerance,
            cfl_target=self.cfl_target,
            eigen_method=self.eigen_method,
            inundation_method=self.inundation_method,
            manning_n=self.manning_n,
        )

    def grid(self) -> Grid:
        return Grid(x_lo=self.x_lo, x_hi=self.x_hi, n_cells=self.n_cells)

    def boundary(self) -> BoundarySpec:
        return BoundarySpec(lower=self.lower_bc, upper=self.upper_bc)

    def background(self) -> LinearizedBackground:
        return LinearizedBackground(eta1_hat=self.eta1_hat, eta2_hat=self.eta2_hat)

    def with_overrides(self, overrides: Dict[str, Any]) -> "ScenarioSpec":
        """Copy with flat (dotted) overrides applied and validated."""
        merged = to_flat(self)
        merged.update(overrides)
        return from_flat(merged)


def to_flat(spec: BaseModel) -> Dict[str, Any]:
    """Dotted-key dict of a (nested) model with enums as their values."""
    flat: Dict[str, Any] = {}

    def walk(prefix: str, value: Any):
        if isinstance(value, dict):
            for key, item in value.items():
                walk(f"{prefix}{key}.", item)
        else:
            flat[prefix[:-1]] = value

    walk("", spec.model_dump(mode="json"))
    return flat


def from_flat(flat: Dict[str, Any]) -> ScenarioSpec:
    """Inverse of ``to_flat``; raises ValueError (pydantic ValidationError) on bad keys or values."""
    nested: Dict[str, Any] = {}
    for key, value in flat.items():
        target = nested
        parts = key.split(".")
        for part in parts[:-1]:
            target = target.setdefault(part, {})
            if not isinstance(target, dict):
                raise ValueError(f"Key {key!r} nests under a non-section field")
        target[parts[-1]] = value
    return ScenarioSpec.model_validate(nested)
