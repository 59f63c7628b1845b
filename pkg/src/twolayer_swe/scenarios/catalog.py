"""Named experiment setups."""

from typing import Any, Callable, Dict, Optional

from twolayer_swe.common.errors import ConfigError
from twolayer_swe.config.logger_config import LoggerConfig as Logger
from twolayer_swe.core.parameters import EigenMethod
from twolayer_swe.driver.grid import BoundaryCondition
from twolayer_swe.scenarios.models import (
    BathymetryKind,
    BathymetrySpec,
    PerturbationKind,
    PerturbationSpec,
    ScenarioSpec,
)

SIMPLE_WAVE_EPSILON = {3: 0.1, 4: 0.04}
SIMPLE_WAVE_T_FINAL = {3: 0.5, 4: 0.2}


def _simple_wave(family: int, flat: bool) -> ScenarioSpec:
    if flat:
        bathymetry = BathymetrySpec(kind=BathymetryKind.FLAT, left=-1.0, right=-1.0)
    else:
        bathymetry = BathymetrySpec(kind=BathymetryKind.STEP, left=-1.0, right=-0.2, location=0.5)
    return ScenarioSpec(
        name=f"wave{family}{'-flat' if flat else ''}",
        x_lo=0.0,
        x_hi=1.0,
        n_cells=500,
        bathymetry=bathymetry,
        eta1_hat=0.0,
        eta2_hat=-0.6,
        perturbation=PerturbationSpec(kind=PerturbationKind.SIMPLE_WAVE, family=family,
                                      epsilon=SIMPLE_WAVE_EPSILON[family], location=0.45),
        t_final=SIMPLE_WAVE_T_FINAL[family],
    )


def _well_balanced(smooth: bool, dry: bool) -> ScenarioSpec:
    if smooth:
        bathymetry = BathymetrySpec(kind=BathymetryKind.GAUSSIAN_BUMP, left=-10.0, amplitude=5.0,
                                    center=5.0, width=2.5)
    else:
        bathymetry = BathymetrySpec(kind=BathymetryKind.STEP, left=-10.0, right=-5.0, location=5.0)
    return ScenarioSpec(
        name=f"wb-{'smooth' if smooth else 'jump'}-{'dry' if dry else 'wet'}",
        x_lo=0.0,
        x_hi=10.0,
        n_cells=100,
        bathymetry=bathymetry,
        eta1_hat=0.0,
        eta2_hat=-6.0 if dry else -4.0,
        t_final=10.0,
        eigen_method=EigenMethod.LINEARIZED_DYNAMIC,
    )


def _baroclinic_wetting() -> ScenarioSpec:
    return ScenarioSpec(
        name="baroclinic-wetting",
        x_lo=0.0,
        x_hi=1.0,
        n_cells=128,
        bathymetry=BathymetrySpec(kind=BathymetryKind.SLOPE, left=-1.0, right=-0.2,
                                  location=0.4, location_end=0.6),
        eta1_hat=0.0,
        eta2_hat=-0.6,
        perturbation=PerturbationSpec(kind=PerturbationKind.GAUSSIAN_INTERNAL, amplitude=0.2,
                                      location=0.2, width=0.01),
        manning_n=0.022,
        t_final=2.0,
        eigen_method=EigenMethod.LINEARIZED_DYNAMIC,
    )


def _ocean_shelf() -> ScenarioSpec:
    # coast (wall) at x = 0, open ocean at x = -400 km
    return ScenarioSpec(
        name="ocean-shelf",
        x_lo=-400.0e3,
        x_hi=0.0,
        n_cells=2000,
        bathymetry=BathymetrySpec(kind=BathymetryKind.STEP, left=-4000.0, right=-100.0, location=-30.0e3),
        eta1_hat=0.0,
        eta2_hat=-300.0,
        perturbation=PerturbationSpec(kind=PerturbationKind.SINE_SURFACE, epsilon=0.4,
                                      lower=-130.0e3, upper=-80.0e3, x_mid=-130.0e3),
        rho1=1025.0,
        rho2=1045.0,
        t_final=7200.0,
        n_frames=6,
        lower_bc=BoundaryCondition.EXTRAPOLATION,
        upper_bc=BoundaryCondition.WALL,
        eigen_method=EigenMethod.LINEARIZED_DYNAMIC,
    )


SCENARIOS: Dict[str, Callable[[], ScenarioSpec]] = {
    "wave3": lambda: _simple_wave(3, flat=False),
    "wave4": lambda: _simple_wave(4, flat=False),
    "wave3-flat": lambda: _simple_wave(3, flat=True),
    "wave4-flat": lambda: _simple_wave(4, flat=True),
    "wb-smooth-wet": lambda: _well_balanced(smooth=True, dry=False),
    "wb-smooth-dry": lambda: _well_balanced(smooth=True, dry=True),
    "wb-jump-wet": lambda: _well_balanced(smooth=False, dry=False),
    "wb-jump-dry": lambda: _well_balanced(smooth=False, dry=True),
    "baroclinic-wetting": _baroclinic_wetting,
    "ocean-shelf": _ocean_shelf,
}

WELL_BALANCED_SCENARIOS = ("wb-smooth-wet", "wb-smooth-dry", "wb-jump-wet", "wb-jump-dry")


def build_scenario(name: str, overrides: Optional[Dict[str, Any]] = None) -> ScenarioSpec:
    """Scenario ``name`` with its catalog defaults, then flat ``overrides`` applied."""
    if name not in SCENARIOS:
        raise ConfigError(f"Unknown scenario {name!r}. Available: {', '.join(SCENARIOS)}")
    spec = SCENARIOS[name]()
    if overrides:
        try:
            spec = spec.with_overrides(overrides)
        except ValueError as e:
            Logger.log("Invalid scenario overrides", level="ERROR", scenario=name, error=str(e))
            raise ConfigError(f"Invalid overrides for scenario {name!r}: {e}") from e
    return spec
