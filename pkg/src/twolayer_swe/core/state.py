"""Conserved and primitive state containers and the conversions between them.

All containers hold either scalars or equally shaped numpy arrays, so the same
code serves a single interface and a whole grid.
"""

from dataclasses import dataclass, fields
from typing import Tuple, Union

import numpy as np

from twolayer_swe.core.parameters import Parameters

ArrayLike = Union[float, np.ndarray]


def _float_array(value: ArrayLike) -> np.ndarray:
    return np.asarray(value, dtype=float)


class _ArrayRecord:
    """Shared helpers for the dataclass containers below."""

    def take(self, index):
        """Return a copy restricted to ``index`` (mask, slice or integer array)."""
        return type(self)(**{f.name: np.asarray(getattr(self, f.name))[index] for f in fields(self)})

    def replace(self, **changes):
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return type(self)(**values)


@dataclass(frozen=True)
class CellState(_ArrayRecord):
    """Density-weighted conserved variables plus bathymetry."""
    m1: ArrayLike
    mu1: ArrayLike
    m2: ArrayLike
    mu2: ArrayLike
    b: ArrayLike

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _float_array(getattr(self, f.name)))

    @classmethod
    def from_array(cls, q: np.ndarray, b: ArrayLike) -> "CellState":
        """Build from a (4, ...) conserved array."""
        return cls(m1=q[0], mu1=q[1], m2=q[2], mu2=q[3], b=b)

    def as_array(self) -> np.ndarray:
        return np.stack(np.broadcast_arrays(self.m1, self.mu1, self.m2, self.mu2))


@dataclass(frozen=True)
class PrimitiveState(_ArrayRecord):
    """Layer depths, velocities, bathymetry and surface elevations."""
    h1: ArrayLike
    h2: ArrayLike
    u1: ArrayLike
    u2: ArrayLike
    b: ArrayLike
    eta1: ArrayLike
    eta2: ArrayLike

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _float_array(getattr(self, f.name)))

    @classmethod
    def from_depths(cls, h1: ArrayLike, h2: ArrayLike, u1: ArrayLike, u2: ArrayLike,
                    b: ArrayLike, p: Parameters) -> "PrimitiveState":
        """Assemble a primitive state, deriving the surfaces from depths and bathymetry."""
        eta1, eta2 = _surfaces(_float_array(h1), _float_array(h2), _float_array(b), p.dry_tolerance)
        return cls(h1=h1, h2=h2, u1=u1, u2=u2, b=b, eta1=eta1, eta2=eta2)


@dataclass(frozen=True)
class LinearizedBackground:
    """Ocean at rest with flat top surface ``eta1_hat`` and internal surface ``eta2_hat``."""
    eta1_hat: float
    eta2_hat: float

    def __post_init__(self):
        if self.eta2_hat > self.eta1_hat:
            raise ValueError(
                f"Internal surface {self.eta2_hat} lies above the top surface {self.eta1_hat}"
            )

    def depths(self, b: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        """Background depths (h1_hat, h2_hat) over bathymetry ``b``.

        Where the bathymetry pokes through the internal surface the bottom layer
        is absent and the top layer sits directly on ``b``.
        """
        b = _float_array(b)
        interface = np.maximum(self.eta2_hat, b)
        h2_hat = interface - b
        h1_hat = np.maximum(self.eta1_hat - interface, 0.0)
        return h1_hat, h2_hat


def _velocity(momentum: np.ndarray, mass: np.ndarray, depth: np.ndarray, dry_tolerance: float) -> np.ndarray:
    wet = depth >= dry_tolerance
    safe_mass = np.where(wet, mass, 1.0)
    return np.where(wet, momentum / safe_mass, 0.0)


def _surfaces(h1: np.ndarray, h2: np.ndarray, b: np.ndarray, dry_tolerance: float):
    eta2 = np.where(h2 >= dry_tolerance, b + h2, b)
    eta1 = eta2 + h1
    return eta1, eta2


def to_primitive(q: CellState, p: Parameters) -> PrimitiveState:
    """Depths, limited velocities and surfaces of ``q``; ``q`` itself is not touched.

    A layer thinner than the dry tolerance reports zero velocity.
    """
    h1 = q.m1 / p.rho1
    h2 = q.m2 / p.rho2
    u1 = _velocity(q.mu1, q.m1, h1, p.dry_tolerance)
    u2 = _velocity(q.mu2, q.m2, h2, p.dry_tolerance)
    eta1, eta2 = _surfaces(h1, h2, q.b, p.dry_tolerance)
    return PrimitiveState(h1=h1, h2=h2, u1=u1, u2=u2, b=q.b, eta1=eta1, eta2=eta2)


def from_primitive(s: PrimitiveState, p: Parameters) -> CellState:
    """Conserved variables of ``s``; a layer of zero depth carries zero momentum."""
    if np.any(s.h1 < 0) or np.any(s.h2 < 0):
        raise ValueError(
            f"Negative layer depth: min h1={np.min(s.h1)}, min h2={np.min(s.h2)}"
        )
    m1 = p.rho1 * s.h1
    m2 = p.rho2 * s.h2
    mu1 = np.where(s.h1 > 0, m1 * s.u1, 0.0)
    mu2 = np.where(s.h2 > 0, m2 * s.u2, 0.0)
    return CellState(m1=m1, mu1=mu1, m2=m2, mu2=mu2, b=s.b)


def surfaces(s: PrimitiveState, p: Parameters) -> Tuple[np.ndarray, np.ndarray]:
    """Top and internal surface elevations; a dry bottom layer puts eta2 on the bathymetry."""
    return _surfaces(s.h1, s.h2, s.b, p.dry_tolerance)
