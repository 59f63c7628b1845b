"""Domain types and conversions between conserved and primitive variables."""

from twolayer_swe.core.parameters import EigenMethod, InundationMethod, Parameters
from twolayer_swe.core.state import (
    CellState,
    LinearizedBackground,
    PrimitiveState,
    from_primitive,
    surfaces,
    to_primitive,
)
from twolayer_swe.core.frames import FRAME_COLUMNS, SolutionFrame

__all__ = [
    "EigenMethod",
    "InundationMethod",
    "Parameters",
    "CellState",
    "LinearizedBackground",
    "PrimitiveState",
    "from_primitive",
    "surfaces",
    "to_primitive",
    "FRAME_COLUMNS",
    "SolutionFrame",
]
