"""Time stepping of the two-layer system."""

from dataclasses import dataclass, field, replace
from datetime import datetime
from typing import Callable, List, Optional, Tuple

import numpy as np

from twolayer_swe.common.errors import SolverError
from twolayer_swe.config.environment import get_env_config
from twolayer_swe.config.logger_config import LoggerConfig as Logger
from twolayer_swe.core.frames import SolutionFrame
from twolayer_swe.core.parameters import EigenMethod, Parameters
from twolayer_swe.core.state import CellState, LinearizedBackground, to_primitive
from twolayer_swe.driver.grid import BoundaryCondition, BoundarySpec, Grid, fill_bathymetry_ghosts, fill_ghosts
from twolayer_swe.driver.limiters import Limiter, correction_fluxes
from twolayer_swe.driver.source_terms import apply_friction, positivity_guard
from twolayer_swe.riemann.dry_states import DryConfig
from twolayer_swe.riemann.fwave_service import FWaveSolver, RiemannSolution


@dataclass(frozen=True)
class SimState:
    """Cells including ghosts, time and running step diagnostics.

    ``max_speed`` is the largest wave speed of the last solved step and sets
    the next time step; 0 means no step has been taken yet.
    """
    cells: CellState
    t: float = 0.0
    dt_last: float = 0.0
    max_speed: float = 0.0
    steps: int = 0
    rejected_steps: int = 0
    max_cfl: float = 0.0
    clipped_mass: float = 0.0
    retried_interfaces: int = 0
    boundary_inflow: Tuple[float, float] = (0.0, 0.0)

    @classmethod
    def from_interior(cls, cells: CellState, grid: Grid, bc: BoundarySpec, t: float = 0.0) -> "SimState":
        """Pad interior cells with ghost cells filled per ``bc``."""
        q = np.zeros((4, grid.n_total))
        q[:, grid.interior] = cells.as_array()
        b = np.zeros(grid.n_total)
        b[grid.interior] = cells.b
        fill_ghosts(q, grid, bc)
        fill_bathymetry_ghosts(b, grid, bc)
        return cls(cells=CellState.from_array(q, b), t=t)

    def interior(self, grid: Grid) -> CellState:
        return self.cells.take(grid.interior)


@dataclass
class RunResult:
    frames: List[SolutionFrame]
    final_state: SimState
    mass_start: Tuple[float, float]
    mass_end: Tuple[float, float]
    stats: dict = field(default_factory=dict)


def total_mass(state: SimState, grid: Grid) -> Tuple[float, float]:
    """Density-weighted mass of each layer over the interior cells."""
    interior = state.interior(grid)
    return float(grid.dx * np.sum(interior.m1)), float(grid.dx * np.sum(interior.m2))


def _boundary_inflow(q: np.ndarray, grid: Grid, bc: BoundarySpec, dt: float) -> np.ndarray:
    """Mass of each layer entering through extrapolated boundaries during a step of length dt.

    The mass flux through an open boundary is the density-weighted momentum of
    the adjacent interior cell; walls pass nothing.
    """
    flux = np.zeros(2)
    if bc.lower is BoundaryCondition.EXTRAPOLATION:
        flux += q[[1, 3], grid.interior.start]
    if bc.upper is BoundaryCondition.EXTRAPOLATION:
        flux -= q[[1, 3], grid.interior.stop - 1]
    return dt * flux


def _interfaces(cells: CellState) -> Tuple[CellState, CellState]:
    """States left and right of interface j, which sits between cells j and j + 1."""
    return cells.take(slice(None, -1)), cells.take(slice(1, None))


def _initial_speed(state: SimState, p: Parameters) -> float:
    solver = FWaveSolver(p.model_copy(update={"eigen_method": EigenMethod.LINEARIZED_DYNAMIC}))
    left, right = _interfaces(state.cells)
    return solver.solve(left, right).max_speed


def compute_dt(state: SimState, p: Parameters, grid: Grid, dt_max: Optional[float] = None) -> float:
    """cfl_target dx / max|s|, capped at ``dt_max``.

    The speed comes from the previous step, or from the dynamic linearized
    basis at the current data before the first step.
    """
    if dt_max is None:
        dt_max = get_env_config()['solver']['dt_max']
    speed = state.max_speed if state.max_speed > 0 else _initial_speed(state, p)
    if speed <= 0 or not np.isfinite(speed):
        return float(dt_max)
    return float(min(p.cfl_target * grid.dx / speed, dt_max))


def _suppressed(solution: RiemannSolution, left: CellState, right: CellState, p: Parameters) -> np.ndarray:
    h2_bar = 0.5 * (left.m2 + right.m2) / p.rho2
    return (solution.config != DryConfig.FULLY_WET) | (np.abs(right.b - left.b) > h2_bar)


def _diagnose(error: SolverError, left: CellState, right: CellState, p: Parameters, t: float) -> SolverError:
    """Attach time and the primitive states of the offending interfaces."""
    context = {"t": t}
    if error.indices:
        idx = np.asarray(error.indices[:5])
        lp, rp = to_primitive(left.take(idx), p), to_primitive(right.take(idx), p)
        for name in ("h1", "h2", "u1", "u2", "b"):
            context[f"left_{name}"] = getattr(lp, name)
            context[f"right_{name}"] = getattr(rp, name)
    return error.with_context(**context)


def step(state: SimState, p: Parameters, grid: Grid, bc: BoundarySpec,
         solver: Optional[FWaveSolver] = None, limiter: Limiter = Limiter.MINMOD,
         dt_max: Optional[float] = None, t_stop: Optional[float] = None) -> SimState:
    """Advance one time step.

    Fill ghosts, solve every interface, apply fluctuations and limited
    corrections, guard positivity, split in friction and advance t. The
    step is repeated with half the time step while the realized CFL number
    exceeds the configured maximum.
    """
    settings = get_env_config()['solver']
    dt_max = settings['dt_max'] if dt_max is None else dt_max
    solver = solver or FWaveSolver(p)

    q = fill_ghosts(state.cells.as_array().copy(), grid, bc)
    cells = CellState.from_array(q, state.cells.b)
    left, right = _interfaces(cells)
    try:
        solution = solver.solve(left, right)
    except SolverError as e:
        Logger.log("Interface solve failed", level="ERROR", t=state.t,
                   error_type=type(e).__name__, indices=e.indices[:20])
        raise _diagnose(e, left, right, p, state.t)

    if state.max_speed > 0:
        dt = compute_dt(state, p, grid, dt_max)
    else:
        # first step: speeds of the data being stepped
        dt = compute_dt(replace(state, max_speed=solution.max_speed), p, grid, dt_max) \
            if solution.max_speed > 0 else dt_max
    if t_stop is not None:
        dt = min(dt, t_stop - state.t)
    if dt <= 0:
        raise SolverError("Non-positive time step", context={"t": state.t, "dt": dt})

    rejected = 0
    cfl = dt * solution.max_speed / grid.dx
    while cfl > settings['cfl_max']:
        if rejected >= settings['max_dt_halvings']:
            raise SolverError("Time step could not satisfy the CFL bound",
                              context={"t": state.t, "cfl": cfl, "dt": dt})
        dt *= 0.5
        rejected += 1
        Logger.log("Rejected step, halving dt", level="INFO", t=state.t, cfl=cfl, dt=dt)
        cfl = dt * solution.max_speed / grid.dx

    inflow = _boundary_inflow(q, grid, bc, dt)
    dx = grid.dx
    interior = grid.interior
    lo, hi = interior.start, interior.stop
    fluct = solution.apdq[:, lo - 1:hi - 1] + solution.amdq[:, lo:hi]
    flux = correction_fluxes(solution.fwaves, solution.speeds, dt, dx, limiter,
                             suppress=_suppressed(solution, left, right, p))
    q_new = q.copy()
    q_new[:, interior] -= dt / dx * fluct + dt / dx * (flux[:, lo:hi] - flux[:, lo - 1:hi - 1])

    try:
        guard = positivity_guard(CellState.from_array(q_new, state.cells.b), p)
    except SolverError as e:
        raise e.with_context(t=state.t, dt=dt)
    new_cells = apply_friction(guard.cells, dt, p)
    new_cells = CellState.from_array(fill_ghosts(new_cells.as_array().copy(), grid, bc), new_cells.b)

    return replace(
        state,
        cells=new_cells,
        t=state.t + dt,
        dt_last=dt,
        max_speed=solution.max_speed,
        steps=state.steps + 1,
        rejected_steps=state.rejected_steps + rejected,
        max_cfl=max(state.max_cfl, cfl),
        clipped_mass=state.clipped_mass + guard.clipped_mass,
        retried_interfaces=state.retried_interfaces + solution.retried,
        boundary_inflow=(state.boundary_inflow[0] + float(inflow[0]),
                         state.boundary_inflow[1] + float(inflow[1])),
    )


def output_times(t_final: float, n_frames: int) -> np.ndarray:
    """Frame times: just t_final for one frame, else evenly spaced from 0."""
    if n_frames < 1:
        raise ValueError("At least one output frame is required")
    if n_frames == 1:
        return np.array([float(t_final)])
    return np.linspace(0.0, t_final, n_frames)


class SimulationManager:
    """Runs a configured problem to its final time and collects output frames."""

    def __init__(self, params: Parameters, grid: Grid, bc: BoundarySpec,
                 background: Optional[LinearizedBackground] = None,
                 limiter: Limiter = Limiter.MINMOD, dt_max: Optional[float] = None):
        self.params = params
        self.grid = grid
        self.bc = bc
        self.limiter = Limiter(limiter)
        self.dt_max = dt_max
        self.solver = FWaveSolver(params, background)
        Logger.log("Initialized SimulationManager", level="INFO",
                   n_cells=grid.n_cells, method=params.eigen_method.value,
                   limiter=self.limiter.value)

    def _format_elapsed_time(self, start_time: datetime) -> str:
        elapsed = (datetime.now() - start_time).total_seconds()
        return f"{elapsed:.3f}"

    def frame(self, state: SimState) -> SolutionFrame:
        return SolutionFrame.from_cells(state.t, self.grid.centers(), state.interior(self.grid), self.params)

    def run(self, initial: SimState, t_final: float, n_frames: int = 1,
            on_frame: Optional[Callable[[SolutionFrame], None]] = None) -> RunResult:
        """Step from ``initial`` to ``t_final``, taking a frame at each output time."""
        start_time = datetime.now()
        Logger.log("Run started", level="INFO", t_final=t_final,
                   n_cells=self.grid.n_cells, method=self.params.eigen_method.value)

        state = initial
        mass_start = total_mass(state, self.grid)
        frames: List[SolutionFrame] = []
        for t_out in output_times(t_final, n_frames):
            while state.t < t_out - 1e-12 * max(1.0, abs(t_out)):
                state = step(state, self.params, self.grid, self.bc, self.solver,
                             self.limiter, self.dt_max, t_stop=t_out)
            frame = replace(self.frame(state), t=float(t_out))
            frames.append(frame)
            if on_frame is not None:
                on_frame(frame)

        mass_end = total_mass(state, self.grid)
        stats = {
            "steps": state.steps,
            "rejected_steps": state.rejected_steps,
            "max_cfl": state.max_cfl,
            "clipped_mass": state.clipped_mass,
            "retried_interfaces": state.retried_interfaces,
            "boundary_inflow": {"top": state.boundary_inflow[0], "bottom": state.boundary_inflow[1]},
            "elapsed_seconds": self._format_elapsed_time(start_time),
        }
        Logger.log("Run finished", level="INFO", t=state.t, **stats)
        return RunResult(frames=frames, final_state=state, mass_start=mass_start,
                         mass_end=mass_end, stats=stats)
