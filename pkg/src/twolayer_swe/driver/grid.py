"""Uniform 1-D grid with ghost cells and boundary conditions."""

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

N_GHOST = 2


class BoundaryCondition(str, Enum):
    WALL = "wall"
    EXTRAPOLATION = "extrapolation"


class BoundarySpec(BaseModel):
    """Boundary condition on each end of the domain."""
    model_config = ConfigDict(frozen=True)

    lower: BoundaryCondition = BoundaryCondition.EXTRAPOLATION
    upper: BoundaryCondition = BoundaryCondition.EXTRAPOLATION


class Grid(BaseModel):
    """Cells of width dx on [x_lo, x_hi] padded by ``n_ghost`` ghost cells per side."""
    model_config = ConfigDict(frozen=True)

    x_lo: float = Field(..., description="Lower domain boundary (m)")
    x_hi: float = Field(..., description="Upper domain boundary (m)")
    n_cells: int = Field(..., ge=4, description="Number of interior cells")
    n_ghost: int = Field(N_GHOST, ge=2, description="Ghost cells per side")

    @model_validator(mode="after")
    def _check_extent(self) -> "Grid":
        if not self.x_hi > self.x_lo:
            raise ValueError(f"x_hi={self.x_hi} must exceed x_lo={self.x_lo}")
        return self

    @property
    def dx(self) -> float:
        return (self.x_hi - self.x_lo) / self.n_cells

    @property
    def n_total(self) -> int:
        return self.n_cells + 2 * self.n_ghost

    @property
    def interior(self) -> slice:
        return slice(self.n_ghost, self.n_ghost + self.n_cells)

    def centers(self) -> np.ndarray:
        """Interior cell centers."""
        return self.x_lo + (np.arange(self.n_cells) + 0.5) * self.dx

    def edges(self) -> np.ndarray:
        return np.linspace(self.x_lo, self.x_hi, self.n_cells + 1)


def fill_ghosts(q: np.ndarray, grid: Grid, bc: BoundarySpec) -> np.ndarray:
    """Fill the ghost cells of a (4, n_total) conserved array in place and return it.

    Extrapolation copies the nearest interior cell. A wall mirrors the
    interior cells and negates both momenta.
    """
    g = grid.n_ghost
    n = grid.n_cells
    for k in range(g):
        lower_ghost, lower_src = g - 1 - k, g + k
        upper_ghost, upper_src = g + n + k, g + n - 1 - k

        if bc.lower is BoundaryCondition.WALL:
            q[:, lower_ghost] = q[:, lower_src]
            q[1::2, lower_ghost] *= -1.0
        else:
            q[:, lower_ghost] = q[:, g]

        if bc.upper is BoundaryCondition.WALL:
            q[:, upper_ghost] = q[:, upper_src]
            q[1::2, upper_ghost] *= -1.0
        else:
            q[:, upper_ghost] = q[:, g + n - 1]
    return q


def fill_bathymetry_ghosts(b: np.ndarray, grid: Grid, bc: BoundarySpec) -> np.ndarray:
    """Bathymetry ghosts mirror the interior at walls and copy it otherwise."""
    g = grid.n_ghost
    n = grid.n_cells
    for k in range(g):
        b[g - 1 - k] = b[g + k] if bc.lower is BoundaryCondition.WALL else b[g]
        b[g + n + k] = b[g + n - 1 - k] if bc.upper is BoundaryCondition.WALL else b[g + n - 1]
    return b
