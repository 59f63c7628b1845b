"""Grid snapshots in output units."""

from dataclasses import dataclass, fields
from typing import Dict, List

import numpy as np

from twolayer_swe.core.parameters import Parameters
from twolayer_swe.core.state import CellState, to_primitive

FRAME_COLUMNS: List[str] = ["x", "b", "h1", "hu1", "h2", "hu2", "eta1", "eta2", "u1", "u2"]


@dataclass(frozen=True)
class SolutionFrame:
    """Interior-cell snapshot at time ``t``. Momenta are per unit density (h*u)."""
    t: float
    x: np.ndarray
    b: np.ndarray
    h1: np.ndarray
    hu1: np.ndarray
    h2: np.ndarray
    hu2: np.ndarray
    eta1: np.ndarray
    eta2: np.ndarray
    u1: np.ndarray
    u2: np.ndarray

    @classmethod
    def from_cells(cls, t: float, x: np.ndarray, cells: CellState, p: Parameters) -> "SolutionFrame":
        prim = to_primitive(cells, p)
        return cls(
            t=float(t),
            x=np.asarray(x, dtype=float),
            b=prim.b,
            h1=prim.h1,
            hu1=cells.mu1 / p.rho1,
            h2=prim.h2,
            hu2=cells.mu2 / p.rho2,
            eta1=prim.eta1,
            eta2=prim.eta2,
            u1=prim.u1,
            u2=prim.u2,
        )

    @property
    def n_cells(self) -> int:
        return int(self.x.size)

    @property
    def dx(self) -> float:
        if self.x.size < 2:
            raise ValueError("A frame needs at least two cells to define a spacing")
        return float(self.x[1] - self.x[0])

    @property
    def bounds(self):
        half = 0.5 * self.dx
        return float(self.x[0] - half), float(self.x[-1] + half)

    def columns(self) -> Dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in FRAME_COLUMNS}

    def field(self, name: str) -> np.ndarray:
        if name not in {f.name for f in fields(self)} or name == "t":
            raise KeyError(f"Unknown frame field: {name}")
        return getattr(self, name)
