"""Two-layer f-wave Riemann solver for every interface of a grid."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from twolayer_swe.common.errors import HyperbolicityLossError, NearSingularBasisError, SolverError
from twolayer_swe.config.environment import SOLVER_CONFIG
from twolayer_swe.config.logger_config import LoggerConfig as Logger
from twolayer_swe.core.parameters import EigenMethod, Parameters
from twolayer_swe.core.state import CellState, LinearizedBackground, to_primitive
from twolayer_swe.eigen import (
    BaseEigenSolver,
    DrySide,
    EigenBasis,
    get_eigen_solver,
    inundation_basis,
    split_linearized_basis,
)
from twolayer_swe.riemann.dry_states import DryConfig, classify
from twolayer_swe.riemann.flux_jump import flux_jump
from twolayer_swe.riemann.projection import conditioned_projection, fluctuations
from twolayer_swe.swe1l.single_layer import solve_single_layer


@dataclass(frozen=True)
class RiemannSolution:
    """Per-interface solution.

    fwaves: (4 components, 4 waves, n); speeds: (4, n); amdq, apdq, delta: (4, n);
    config: (n,) DryConfig codes. ``delta`` is the jump carried by the waves,
    which at walls includes the wall reaction.
    """
    fwaves: np.ndarray
    speeds: np.ndarray
    amdq: np.ndarray
    apdq: np.ndarray
    delta: np.ndarray
    config: np.ndarray
    retried: int = 0

    @property
    def max_speed(self) -> float:
        return float(np.max(np.abs(self.speeds))) if self.speeds.size else 0.0

    def squeeze(self) -> "RiemannSolution":
        """Drop the interface axis of a single-interface solution."""
        return RiemannSolution(
            fwaves=self.fwaves[..., 0],
            speeds=self.speeds[..., 0],
            amdq=self.amdq[..., 0],
            apdq=self.apdq[..., 0],
            delta=self.delta[..., 0],
            config=self.config[0],
            retried=self.retried,
        )


class FWaveSolver:
    """Classifies each interface and solves it with the matching basis.

    Fully wet interfaces use the configured eigensolver and fall back to the
    dynamic linearized basis where the configured one is near singular.
    """

    def __init__(self, params: Parameters, background: Optional[LinearizedBackground] = None):
        self.params = params
        self.background = background
        self.eigen_solver: BaseEigenSolver = get_eigen_solver(params.eigen_method, params, background)
        self.condition_limit = SOLVER_CONFIG['condition_limit']

    def solve(self, left_cells: CellState, right_cells: CellState) -> RiemannSolution:
        p = self.params
        left = to_primitive(left_cells, p)
        right = to_primitive(right_cells, p)
        n = left.h1.size

        config = np.atleast_1d(classify(left, right, p)).astype(int)
        delta = flux_jump(left, right, config, p)
        fwaves = np.zeros((4, 4, n))
        speeds = np.zeros((4, n))
        retried = 0

        wet = np.flatnonzero(config == DryConfig.FULLY_WET)
        if wet.size:
            retried = self._solve_wet(wet, left, right, delta, fwaves, speeds)

        for code, side in ((DryConfig.WALL_LEFT_DRY, DrySide.LEFT_DRY),
                           (DryConfig.WALL_RIGHT_DRY, DrySide.RIGHT_DRY)):
            idx = np.flatnonzero(config == code)
            if idx.size:
                self._solve_wall(idx, side, left, right, delta, fwaves, speeds)

        for code, side in ((DryConfig.INUNDATION_LEFT_DRY, DrySide.LEFT_DRY),
                           (DryConfig.INUNDATION_RIGHT_DRY, DrySide.RIGHT_DRY)):
            idx = np.flatnonzero(config == code)
            if idx.size:
                self._solve_inundation(idx, side, left, right, delta, fwaves, speeds)

        idx = np.flatnonzero(config == DryConfig.BOTH_DRY)
        if idx.size:
            self._solve_top_layer_only(idx, left, right, fwaves, speeds)

        idx = np.flatnonzero(config == DryConfig.TOP_LAYER_DRY)
        if idx.size:
            self._solve_decoupled(idx, left, right, fwaves, speeds)

        amdq, apdq = fluctuations(fwaves, speeds)
        carried = np.isin(config, [DryConfig.WALL_LEFT_DRY, DryConfig.WALL_RIGHT_DRY,
                                   DryConfig.BOTH_DRY, DryConfig.TOP_LAYER_DRY])
        delta = np.where(carried[np.newaxis], amdq + apdq, delta)
        return RiemannSolution(fwaves=fwaves, speeds=speeds, amdq=amdq, apdq=apdq,
                               delta=delta, config=config, retried=retried)

    def _store(self, idx, basis: EigenBasis, waves, fwaves, speeds):
        fwaves[:, :, idx] = waves
        speeds[:, idx] = basis.speeds

    def _solve_wet(self, idx, left, right, delta, fwaves, speeds) -> int:
        L, R = left.take(idx), right.take(idx)
        try:
            basis = self.eigen_solver.basis(L, R)
        except HyperbolicityLossError as e:
            indices = idx[e.indices] if e.indices else idx
            raise HyperbolicityLossError(str(e), indices=indices, context=e.context) from e

        _, waves, ill = conditioned_projection(basis, delta[:, idx], self.condition_limit)
        self._store(idx, basis, waves, fwaves, speeds)
        if not np.any(ill):
            return 0

        bad = idx[ill]
        Logger.log("Near-singular basis, retrying with dynamic linearized basis",
                   level="WARNING", method=self.eigen_solver.method.value, count=bad.size)
        Lb, Rb = left.take(bad), right.take(bad)
        fallback = split_linearized_basis(Lb.h1, Lb.h2, Rb.h1, Rb.h2, self.params,
                                          EigenMethod.LINEARIZED_DYNAMIC)
        _, waves, still_ill = conditioned_projection(fallback, delta[:, bad], self.condition_limit)
        if np.any(still_ill):
            raise NearSingularBasisError(
                "Eigenvector matrix near singular after the dynamic linearized retry",
                indices=bad[still_ill],
            )
        self._store(bad, fallback, waves, fwaves, speeds)
        return int(bad.size)

    def _solve_wall(self, idx, side: DrySide, left, right, delta, fwaves, speeds):
        """Top layer crosses the wall, bottom layer is reflected by its mirrored ghost.

        The two jumps are projected separately on the wet-state basis. The top
        jump keeps only its top-layer rows, so it moves no bottom mass. The
        ghost jump keeps only its bottom-layer rows on waves leaving the wall
        into the wet cell; by symmetry of the basis these carry half the ghost
        mass jump, which is minus the wet-side bottom mass flux.
        """
        wet = right.take(idx) if side is DrySide.LEFT_DRY else left.take(idx)
        basis = split_linearized_basis(wet.h1, wet.h2, wet.h1, wet.h2, self.params,
                                       EigenMethod.LINEARIZED_DYNAMIC)
        top_jump = delta[:, idx].copy()
        top_jump[2:4] = 0.0
        bottom_jump = delta[:, idx].copy()
        bottom_jump[0:2] = 0.0
        _, top_waves, top_ill = conditioned_projection(basis, top_jump, self.condition_limit)
        _, bottom_waves, bottom_ill = conditioned_projection(basis, bottom_jump, self.condition_limit)
        ill = top_ill | bottom_ill
        if np.any(ill):
            raise NearSingularBasisError("Wall eigenbasis near singular", indices=idx[ill])

        # waves heading into (or standing at) the dry cell carry nothing for the bottom layer
        if side is DrySide.RIGHT_DRY:
            into_dry = basis.speeds >= 0
        else:
            into_dry = basis.speeds <= 0
        waves = np.zeros_like(top_waves)
        waves[0:2] = top_waves[0:2]
        waves[2:4] = np.where(into_dry[np.newaxis], 0.0, bottom_waves[2:4])
        self._store(idx, basis, waves, fwaves, speeds)

    def _solve_inundation(self, idx, side: DrySide, left, right, delta, fwaves, speeds):
        L, R = left.take(idx), right.take(idx)
        basis = inundation_basis(L, R, side, self.params)
        _, waves, ill = conditioned_projection(basis, delta[:, idx], self.condition_limit)
        if np.any(ill):
            bad = idx[ill]
            Logger.log("Near-singular inundation basis, retrying with filled dry side",
                       level="WARNING", count=bad.size)
            Lb, Rb = left.take(bad), right.take(bad)
            tol = self.params.dry_tolerance
            fallback = split_linearized_basis(Lb.h1, np.maximum(Lb.h2, tol), Rb.h1, np.maximum(Rb.h2, tol),
                                              self.params, EigenMethod.LINEARIZED_DYNAMIC)
            _, retry_waves, still_ill = conditioned_projection(fallback, delta[:, bad], self.condition_limit)
            if np.any(still_ill):
                raise NearSingularBasisError("Inundation eigenbasis near singular", indices=bad[still_ill])
            waves[:, :, ill] = retry_waves
            basis_speeds = basis.speeds.copy()
            basis_speeds[:, ill] = fallback.speeds
            basis = EigenBasis(speeds=basis_speeds, R=basis.R, method=basis.method)
        self._store(idx, basis, waves, fwaves, speeds)

    def _top_layer_waves(self, idx, left, right, fwaves, speeds, slots=(0, 3)):
        """Top layer as a single layer riding on the internal surface b + h2."""
        L, R = left.take(idx), right.take(idx)
        top = solve_single_layer(L.h1, L.h1 * L.u1, L.b + L.h2,
                                 R.h1, R.h1 * R.u1, R.b + R.h2, self.params)
        for wave, slot in enumerate(slots):
            fwaves[0:2, slot, idx] = self.params.rho1 * top.fwaves[:, wave]
            speeds[slot, idx] = top.speeds[wave]

    def _solve_top_layer_only(self, idx, left, right, fwaves, speeds):
        self._top_layer_waves(idx, left, right, fwaves, speeds)

    def _solve_decoupled(self, idx, left, right, fwaves, speeds):
        self._top_layer_waves(idx, left, right, fwaves, speeds)
        L, R = left.take(idx), right.take(idx)
        bottom = solve_single_layer(L.h2, L.h2 * L.u2, L.b, R.h2, R.h2 * R.u2, R.b, self.params)
        for wave, slot in enumerate((1, 2)):
            fwaves[2:4, slot, idx] = self.params.rho2 * bottom.fwaves[:, wave]
            speeds[slot, idx] = bottom.speeds[wave]


def solve_interface(left: CellState, right: CellState, p: Parameters,
                    background: Optional[LinearizedBackground] = None) -> RiemannSolution:
    """Solve one interface (scalar states) or a batch (1-D array states)."""
    scalar = np.ndim(left.m1) == 0 and np.ndim(right.m1) == 0
    if scalar:
        left = CellState(*(np.atleast_1d(v) for v in (left.m1, left.mu1, left.m2, left.mu2, left.b)))
        right = CellState(*(np.atleast_1d(v) for v in (right.m1, right.mu1, right.m2, right.mu2, right.b)))
    try:
        solution = FWaveSolver(p, background).solve(left, right)
    except SolverError as e:
        Logger.log("Interface solve failed", level="ERROR", error=str(e), error_type=type(e).__name__)
        raise
    return solution.squeeze() if scalar else solution
