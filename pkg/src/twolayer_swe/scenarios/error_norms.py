"""Discrete error norms, grid restriction and convergence-order fits."""

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from twolayer_swe.config.logger_config import LoggerConfig as Logger
from twolayer_swe.core.frames import SolutionFrame

ERROR_FIELDS: Tuple[str, ...] = ("h1", "h2", "hu1", "hu2", "eta1", "eta2", "u1", "u2")


class FieldError(BaseModel):
    l1: float
    linf: float


class ErrorReport(BaseModel):
    """L1 and L-infinity errors per field at one resolution, plus fitted orders if known."""
    n_cells: int
    t: float
    errors: Dict[str, FieldError]
    orders: Dict[str, float] = Field(default_factory=dict)


def restrict(reference: SolutionFrame, edges: np.ndarray, name: str) -> np.ndarray:
    """Cell averages of a reference field over the cells bounded by ``edges``.

    The reference is piecewise constant, so its running integral is piecewise
    linear and interpolating it at the coarse edges is exact.
    """
    lo, hi = reference.bounds
    if not (np.isclose(edges[0], lo) and np.isclose(edges[-1], hi)):
        raise ValueError(
            f"Reference domain [{lo}, {hi}] does not match [{edges[0]}, {edges[-1]}]"
        )
    values = reference.field(name)
    ref_edges = np.linspace(lo, hi, reference.n_cells + 1)
    running = np.concatenate([[0.0], np.cumsum(values * np.diff(ref_edges))])
    integral = np.interp(edges, ref_edges, running)
    return np.diff(integral) / np.diff(edges)


def _aligned(computed: SolutionFrame, reference: SolutionFrame, name: str) -> np.ndarray:
    if reference.n_cells == computed.n_cells:
        if not np.allclose(reference.x, computed.x):
            raise ValueError("Frames have the same size but different cell centers")
        return reference.field(name)
    if reference.n_cells < computed.n_cells:
        raise ValueError(
            f"Reference ({reference.n_cells} cells) is coarser than the computed frame "
            f"({computed.n_cells} cells)"
        )
    lo, hi = computed.bounds
    return restrict(reference, np.linspace(lo, hi, computed.n_cells + 1), name)


def error_norms(computed: SolutionFrame, reference: SolutionFrame,
                fields: Sequence[str] = ERROR_FIELDS) -> ErrorReport:
    """Errors of ``computed`` against ``reference``, restricting a finer reference by cell averaging.

    L1 = dx sum |diff| and L-infinity = max |diff| for each field.
    """
    dx = computed.dx
    errors = {}
    for name in fields:
        diff = np.abs(computed.field(name) - _aligned(computed, reference, name))
        errors[name] = FieldError(l1=float(dx * np.sum(diff)), linf=float(np.max(diff)))
    return ErrorReport(n_cells=computed.n_cells, t=computed.t, errors=errors)


def convergence_order(points: Sequence[Tuple[int, float]]) -> float:
    """Negative slope of the least-squares line through (log N, log error).

    Points with non-positive error are dropped with a warning; fewer than
    three remaining points raise ValueError.
    """
    kept = [(n, e) for n, e in points if e > 0 and np.isfinite(e)]
    if len(kept) < len(points):
        Logger.log("Dropping non-positive errors from the order fit", level="WARNING",
                   dropped=len(points) - len(kept))
    if len(kept) < 3:
        raise ValueError(f"An order fit needs at least 3 positive errors, got {len(kept)}")
    n, e = np.array(kept, dtype=float).T
    slope, _ = np.polyfit(np.log(n), np.log(e), 1)
    return float(-slope)


def fit_orders(reports: List[ErrorReport], norm: str = "l1",
               fields: Optional[Sequence[str]] = None) -> Dict[str, float]:
    """Per-field convergence orders across ``reports``; fields that cannot be fit are skipped."""
    if not reports:
        return {}
    fields = fields or list(reports[0].errors)
    orders = {}
    for name in fields:
        points = [(r.n_cells, getattr(r.errors[name], norm)) for r in reports]
        try:
            orders[name] = convergence_order(points)
        except ValueError as e:
            Logger.log("Order fit skipped", level="WARNING", field=name, reason=str(e))
    return orders
