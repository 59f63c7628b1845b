"""Interface Riemann problems: dry-state classification, flux jumps and f-wave assembly."""

from twolayer_swe.riemann.dry_states import (
    INUNDATION_CONFIGS,
    WALL_CONFIGS,
    DryConfig,
    classify,
    wall_ghost,
)
from twolayer_swe.riemann.flux_jump import flux_jump
from twolayer_swe.riemann.fwave_service import FWaveSolver, RiemannSolution, solve_interface
from twolayer_swe.riemann.projection import conditioned_projection, fluctuations, project

__all__ = [
    "DryConfig",
    "FWaveSolver",
    "INUNDATION_CONFIGS",
    "RiemannSolution",
    "WALL_CONFIGS",
    "classify",
    "conditioned_projection",
    "flux_jump",
    "fluctuations",
    "project",
    "solve_interface",
    "wall_ghost",
]
