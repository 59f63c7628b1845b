"""Eigenbasis container, eigenvector construction and the strategy base class."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from twolayer_swe.config.environment import SOLVER_CONFIG
from twolayer_swe.core.parameters import EigenMethod, Parameters
from twolayer_swe.core.state import PrimitiveState


@dataclass(frozen=True)
class EigenBasis:
    """Four sorted wave speeds and the matching right eigenvectors.

    ``speeds`` has shape (4, ...) and ``R`` shape (4, 4, ...) with column p
    equal to [1, s_p, a_p, s_p a_p] in density-weighted conserved variables,
    where a_p = alpha_p / r.
    Trailing dimensions index interfaces.
    """
    speeds: np.ndarray
    R: np.ndarray
    method: str


def exact_alpha(lam, h1, u1, h2, u2, p: Parameters, tol: Optional[float] = None) -> np.ndarray:
    """Bottom-to-top depth perturbation ratio of the eigenvector with speed ``lam``.

    Uses r g h2 / ((lam - u2)^2 - g h2) unless that denominator is within
    ``tol`` (relative) of zero, where ((lam - u1)^2 - g h1) / (g h1) is used.
    Both agree when ``lam`` is a root of the characteristic quartic.
    """
    tol = SOLVER_CONFIG['alpha_switch_tol'] if tol is None else tol
    g, r = p.g, p.r
    lam, h1, u1, h2, u2 = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (lam, h1, u1, h2, u2)))

    bottom_den = (lam - u2) ** 2 - g * h2
    scale = np.maximum(np.maximum(g * h2, (lam - u2) ** 2), np.finfo(float).tiny)
    use_top = np.abs(bottom_den) < tol * scale

    with np.errstate(divide="ignore", invalid="ignore"):
        top = ((lam - u1) ** 2 - g * h1) / (g * h1)
        bottom = r * g * h2 / np.where(use_top, 1.0, bottom_den)
    return np.where(use_top, top, bottom)


def assemble_basis(speeds: Sequence[np.ndarray], alphas: Sequence[np.ndarray],
                   p: Parameters, method: EigenMethod) -> EigenBasis:
    """Stack per-family speeds and depth-space alphas into a sorted EigenBasis.

    Depth-space alphas are mapped to the density-weighted variables by 1/r.
    """
    s = np.stack(np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in speeds)))
    a = np.stack(np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in alphas))) / p.r
    s, a = np.broadcast_arrays(s, a)

    ones = np.ones_like(s)
    # R[component, wave, ...]
    R = np.stack([ones, s, a, s * a])

    order = np.argsort(s, axis=0, kind="stable")
    s = np.take_along_axis(s, order, axis=0)
    R = np.take_along_axis(R, np.broadcast_to(order[np.newaxis], R.shape), axis=1)
    return EigenBasis(speeds=s, R=R, method=method.value)


def quasi_linear_matrix(state: PrimitiveState, p: Parameters) -> np.ndarray:
    """Jacobian of the density-weighted system at ``state``, shape (4, 4, ...)."""
    g, r = p.g, p.r
    h1, u1, h2, u2 = np.broadcast_arrays(state.h1, state.u1, state.h2, state.u2)
    zero = np.zeros_like(h1)
    one = np.ones_like(h1)
    return np.stack([
        np.stack([zero, one, zero, zero]),
        np.stack([g * h1 - u1 ** 2, 2 * u1, r * g * h1, zero]),
        np.stack([zero, zero, zero, one]),
        np.stack([g * h2, zero, g * h2 - u2 ** 2, 2 * u2]),
    ])


class BaseEigenSolver(ABC):
    """Abstract base class for the interface eigenbasis strategies."""

    method: EigenMethod

    def __init__(self, params: Parameters):
        self.params = params
        self._cache = {}

    @abstractmethod
    def basis(self, left: PrimitiveState, right: PrimitiveState) -> EigenBasis:
        """Eigenbasis for the interfaces between ``left`` and ``right`` states."""
        pass

    def clear_cache(self):
        self._cache.clear()

    def _get_cached(self, key):
        return self._cache.get(key)

    def _set_cached(self, key, value):
        self._cache[key] = value
