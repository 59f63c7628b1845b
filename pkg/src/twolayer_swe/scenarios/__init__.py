"""Experiment setups, error norms and convergence studies."""

from twolayer_swe.scenarios.catalog import SCENARIOS, WELL_BALANCED_SCENARIOS, build_scenario
from twolayer_swe.scenarios.error_norms import (
    ERROR_FIELDS,
    ErrorReport,
    FieldError,
    convergence_order,
    error_norms,
    fit_orders,
    restrict,
)
from twolayer_swe.scenarios.initial_conditions import (
    gaussian_internal_ic,
    initial_state,
    quiescent_cells,
    rest_state,
    simple_wave_ic,
    sine_surface_ic,
)
from twolayer_swe.scenarios.models import (
    BathymetryKind,
    BathymetrySpec,
    PerturbationKind,
    PerturbationSpec,
    ScenarioSpec,
    from_flat,
    to_flat,
)
from twolayer_swe.scenarios.scenario_service import (
    ConvergenceManager,
    ConvergenceReport,
    WellBalancedRow,
    run_scenario,
    run_well_balanced_suite,
)

__all__ = [
    "SCENARIOS",
    "WELL_BALANCED_SCENARIOS",
    "ERROR_FIELDS",
    "BathymetryKind",
    "BathymetrySpec",
    "ConvergenceManager",
    "ConvergenceReport",
    "ErrorReport",
    "FieldError",
    "PerturbationKind",
    "PerturbationSpec",
    "ScenarioSpec",
    "WellBalancedRow",
    "build_scenario",
    "convergence_order",
    "error_norms",
    "fit_orders",
    "from_flat",
    "gaussian_internal_ic",
    "initial_state",
    "quiescent_cells",
    "rest_state",
    "restrict",
    "run_scenario",
    "run_well_balanced_suite",
    "simple_wave_ic",
    "sine_surface_ic",
    "to_flat",
]
