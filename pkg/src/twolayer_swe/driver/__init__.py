"""Grid, boundary conditions and time stepping."""

from twolayer_swe.driver.grid import (
    N_GHOST,
    BoundaryCondition,
    BoundarySpec,
    Grid,
    fill_bathymetry_ghosts,
    fill_ghosts,
)
from twolayer_swe.driver.limiters import Limiter, correction_fluxes, limit, mc, minmod, wave_ratios
from twolayer_swe.driver.simulation_service import (
    RunResult,
    SimState,
    SimulationManager,
    compute_dt,
    output_times,
    step,
    total_mass,
)
from twolayer_swe.driver.source_terms import GuardResult, apply_friction, manning_factor, positivity_guard

__all__ = [
    "N_GHOST",
    "BoundaryCondition",
    "BoundarySpec",
    "Grid",
    "GuardResult",
    "Limiter",
    "RunResult",
    "SimState",
    "SimulationManager",
    "apply_friction",
    "compute_dt",
    "correction_fluxes",
    "fill_bathymetry_ghosts",
    "fill_ghosts",
    "limit",
    "manning_factor",
    "mc",
    "minmod",
    "output_times",
    "positivity_guard",
    "step",
    "total_mass",
    "wave_ratios",
]
