"""Operator-split friction and the positivity guard."""

from dataclasses import dataclass

import numpy as np

from twolayer_swe.common.errors import NegativeDepthError
from twolayer_swe.config.logger_config import LoggerConfig as Logger
from twolayer_swe.core.parameters import Parameters
from twolayer_swe.core.state import CellState


@dataclass(frozen=True)
class GuardResult:
    cells: CellState
    clipped_mass: float
    clipped_cells: int


def manning_factor(h, u, dt: float, n: float, g: float) -> np.ndarray:
    """Implicit Manning divisor 1 + dt g n^2 |u| / h^(4/3); 1 where h is not positive."""
    h = np.asarray(h, dtype=float)
    wet = h > 0
    safe_h = np.where(wet, h, 1.0)
    return np.where(wet, 1.0 + dt * g * n ** 2 * np.abs(u) / safe_h ** (4.0 / 3.0), 1.0)


def apply_friction(cells: CellState, dt: float, p: Parameters) -> CellState:
    """Manning drag on the lowest wet layer of each cell, applied implicitly."""
    if not p.manning_n:
        return cells
    tol = p.dry_tolerance
    h1 = cells.m1 / p.rho1
    h2 = cells.m2 / p.rho2
    bottom_wet = h2 >= tol
    top_on_ground = ~bottom_wet & (h1 >= tol)

    with np.errstate(divide="ignore", invalid="ignore"):
        u1 = np.where(top_on_ground, cells.mu1 / np.where(top_on_ground, cells.m1, 1.0), 0.0)
        u2 = np.where(bottom_wet, cells.mu2 / np.where(bottom_wet, cells.m2, 1.0), 0.0)

    factor2 = np.where(bottom_wet, manning_factor(h2, u2, dt, p.manning_n, p.g), 1.0)
    factor1 = np.where(top_on_ground, manning_factor(h1, u1, dt, p.manning_n, p.g), 1.0)
    return cells.replace(mu1=cells.mu1 / factor1, mu2=cells.mu2 / factor2)


def positivity_guard(cells: CellState, p: Parameters) -> GuardResult:
    """Clip round-off negative depths, zero momentum of dry layers, reject real negatives.

    Raises NegativeDepthError where a depth is below -dry_tolerance. The
    returned clipped mass is the density-weighted mass added by clipping.
    """
    tol = p.dry_tolerance
    h1 = cells.m1 / p.rho1
    h2 = cells.m2 / p.rho2

    bad = np.flatnonzero((h1 < -tol) | (h2 < -tol))
    if bad.size:
        Logger.log("Negative depth beyond the dry tolerance", level="ERROR",
                   cells=bad[:20].tolist(), min_h1=float(np.min(h1)), min_h2=float(np.min(h2)))
        raise NegativeDepthError(
            f"Layer depth below -{tol} in {bad.size} cell(s)",
            indices=bad,
            context={"min_h1": float(np.min(h1)), "min_h2": float(np.min(h2))},
        )

    clip1 = cells.m1 < 0
    clip2 = cells.m2 < 0
    clipped_mass = float(-np.sum(np.where(clip1, cells.m1, 0.0)) - np.sum(np.where(clip2, cells.m2, 0.0)))
    clipped_cells = int(np.count_nonzero(clip1 | clip2))

    m1 = np.where(clip1, 0.0, cells.m1)
    m2 = np.where(clip2, 0.0, cells.m2)
    mu1 = np.where(h1 < tol, 0.0, cells.mu1)
    mu2 = np.where(h2 < tol, 0.0, cells.mu2)

    if clipped_cells:
        Logger.log("Clipped negative depths", level="DEBUG",
                   count=clipped_cells, clipped_mass=clipped_mass)
    return GuardResult(cells=cells.replace(m1=m1, mu1=mu1, m2=m2, mu2=mu2),
                       clipped_mass=clipped_mass, clipped_cells=clipped_cells)
