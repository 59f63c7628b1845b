"""Initial conditions built from an ocean at rest."""

import numpy as np

from twolayer_swe.common.errors import ConfigError
from twolayer_swe.core.parameters import Parameters
from twolayer_swe.core.state import CellState, LinearizedBackground, PrimitiveState, from_primitive
from twolayer_swe.driver.grid import BoundarySpec, Grid
from twolayer_swe.driver.simulation_service import SimState
from twolayer_swe.eigen.linearized import linearized_basis
from twolayer_swe.scenarios.models import PerturbationKind, ScenarioSpec


def quiescent_cells(background: LinearizedBackground, b: np.ndarray, p: Parameters) -> CellState:
    """Ocean at rest over bathymetry ``b``."""
    h1, h2 = background.depths(b)
    zero = np.zeros_like(h1)
    return from_primitive(PrimitiveState.from_depths(h1, h2, zero, zero, b, p), p)


def simple_wave_ic(family: int, epsilon: float, background: LinearizedBackground, p: Parameters,
                   grid: Grid, b: np.ndarray, location: float, bc: BoundarySpec) -> SimState:
    """Ocean at rest plus ``epsilon`` times eigenvector ``family`` left of ``location``.

    ``family`` counts the waves from the slowest (1) to the fastest (4); the
    eigenvector is that of the linearized system at the background depths.
    """
    if family not in (1, 2, 3, 4):
        raise ValueError(f"Wave family must be 1-4, got {family}")
    cells = quiescent_cells(background, b, p)
    q = cells.as_array()

    perturbed = grid.centers() < location
    if np.any(perturbed) and epsilon != 0.0:
        h1, h2 = background.depths(b[perturbed])
        basis = linearized_basis(h1, h2, p)
        q[:, perturbed] += epsilon * basis.R[:, family - 1]
    return SimState.from_interior(CellState.from_array(q, b), grid, bc)


def gaussian_internal_ic(amplitude: float, location: float, width: float,
                         background: LinearizedBackground, p: Parameters, grid: Grid,
                         b: np.ndarray, bc: BoundarySpec) -> SimState:
    """Internal surface raised by a Gaussian where the bottom layer exists; top surface flat."""
    h1, h2 = background.depths(b)
    bump = amplitude * np.exp(-(((grid.centers() - location) / width) ** 2))
    bump = np.where(h2 > 0, np.clip(bump, -h2, h1), 0.0)
    zero = np.zeros_like(h1)
    state = PrimitiveState.from_depths(h1 - bump, h2 + bump, zero, zero, b, p)
    return SimState.from_interior(from_primitive(state, p), grid, bc)


def sine_surface_ic(epsilon: float, lower: float, upper: float, x_mid: float,
                    background: LinearizedBackground, p: Parameters, grid: Grid,
                    b: np.ndarray, bc: BoundarySpec) -> SimState:
    """Bottom layer thickened by a half sine on (lower, upper), lifting both surfaces."""
    x = grid.centers()
    h1, h2 = background.depths(b)
    inside = (x > lower) & (x < upper)
    bump = np.where(inside, epsilon * np.sin(np.pi * (x - x_mid) / (upper - x_mid)), 0.0)
    zero = np.zeros_like(h1)
    state = PrimitiveState.from_depths(h1, h2 + bump, zero, zero, b, p)
    return SimState.from_interior(from_primitive(state, p), grid, bc)


def initial_state(spec: ScenarioSpec) -> SimState:
    """Initial SimState of a scenario; invalid depths raise ConfigError."""
    p = spec.parameters()
    grid = spec.grid()
    bc = spec.boundary()
    background = spec.background()
    b = spec.bathymetry.evaluate(grid.centers())
    pert = spec.perturbation

    try:
        if pert.kind is PerturbationKind.SIMPLE_WAVE:
            state = simple_wave_ic(pert.family, pert.epsilon, background, p, grid, b, pert.location, bc)
        elif pert.kind is PerturbationKind.GAUSSIAN_INTERNAL:
            state = gaussian_internal_ic(pert.amplitude, pert.location, pert.width,
                                         background, p, grid, b, bc)
        elif pert.kind is PerturbationKind.SINE_SURFACE:
            state = sine_surface_ic(pert.epsilon, pert.lower, pert.upper, pert.x_mid,
                                    background, p, grid, b, bc)
        else:
            state = SimState.from_interior(quiescent_cells(background, b, p), grid, bc)
    except ValueError as e:
        raise ConfigError(f"Scenario {spec.name!r} has an invalid initial condition: {e}") from e

    interior = state.interior(grid)
    if np.any(interior.m1 < 0) or np.any(interior.m2 < 0):
        raise ConfigError(f"Scenario {spec.name!r} produces negative layer depths")
    return state


def rest_state(spec: ScenarioSpec) -> SimState:
    """The unperturbed ocean at rest of a scenario."""
    unperturbed = spec.with_overrides({"perturbation.kind": PerturbationKind.NONE.value})
    return initial_state(unperturbed)
