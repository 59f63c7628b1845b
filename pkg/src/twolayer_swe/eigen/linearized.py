"""Eigenspace of the system linearized about an ocean at rest.

With gamma = h2/h1 the depth ratios alpha solve
alpha^2 + alpha (1 - gamma) - r gamma = 0 and the speeds are
+-sqrt(g h1 (1 + alpha)), alpha_plus for the external pair and alpha_minus for
the internal pair.
"""

from dataclasses import dataclass

import numpy as np

from twolayer_swe.core.parameters import EigenMethod, Parameters
from twolayer_swe.core.state import LinearizedBackground, PrimitiveState
from twolayer_swe.eigen.base import BaseEigenSolver, EigenBasis, assemble_basis


@dataclass(frozen=True)
class GammaAlpha:
    gamma: np.ndarray
    alpha_plus: np.ndarray
    alpha_minus: np.ndarray


def linearized_alpha(gamma, r: float) -> GammaAlpha:
    """Both roots of the alpha quadratic, computed without cancellation."""
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma < 0):
        raise ValueError("Depth ratio gamma must be non-negative")
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"Density ratio r={r} outside [0, 1]")

    shifted = gamma - 1.0
    root = np.sqrt(shifted ** 2 + 4.0 * r * gamma)
    product = -r * gamma

    with np.errstate(divide="ignore", invalid="ignore"):
        large_plus = 0.5 * (shifted + root)
        large_minus = 0.5 * (shifted - root)
        # the larger-magnitude root is exact; the other follows from the product
        alpha_plus = np.where(shifted >= 0, large_plus,
                              np.where(large_minus != 0, product / large_minus, large_plus))
        alpha_minus = np.where(shifted >= 0,
                               np.where(large_plus != 0, product / large_plus, large_minus),
                               large_minus)
    return GammaAlpha(gamma=gamma, alpha_plus=alpha_plus + 0.0, alpha_minus=alpha_minus + 0.0)


def _family_speeds(h1, h2, p: Parameters):
    """External and internal speed magnitudes plus alphas at depths (h1, h2)."""
    h1 = np.asarray(h1, dtype=float)
    h2 = np.asarray(h2, dtype=float)
    safe_h1 = np.where(h1 > 0, h1, 1.0)
    ga = linearized_alpha(np.where(h1 > 0, h2 / safe_h1, 0.0), p.r)
    external = np.sqrt(np.maximum(p.g * h1 * (1.0 + ga.alpha_plus), 0.0))
    internal = np.sqrt(np.maximum(p.g * h1 * (1.0 + ga.alpha_minus), 0.0))
    return external, internal, ga.alpha_plus, ga.alpha_minus


def split_linearized_basis(h1_left, h2_left, h1_right, h2_right, p: Parameters,
                           method: EigenMethod = EigenMethod.LINEARIZED_DYNAMIC) -> EigenBasis:
    """Linearized basis with left-going families at the left depths and right-going at the right."""
    ext_l, int_l, ap_l, am_l = _family_speeds(h1_left, h2_left, p)
    ext_r, int_r, ap_r, am_r = _family_speeds(h1_right, h2_right, p)
    return assemble_basis(
        speeds=[-ext_l, -int_l, int_r, ext_r],
        alphas=[ap_l, am_l, am_r, ap_r],
        p=p,
        method=method,
    )


def linearized_basis(h1, h2, p: Parameters,
                     method: EigenMethod = EigenMethod.LINEARIZED_DYNAMIC) -> EigenBasis:
    """Linearized eigenbasis at depths (h1, h2); the top layer must be wet."""
    if np.any(np.asarray(h1) < p.dry_tolerance):
        raise ValueError(
            "Top layer below the dry tolerance: route the interface to the single-layer solver"
        )
    if np.any(np.asarray(h2) < 0):
        raise ValueError("Bottom layer depth must be non-negative")
    return split_linearized_basis(h1, h2, h1, h2, p, method)


class LinearizedDynamicSolver(BaseEigenSolver):
    """Linearized eigenspace evaluated at the current depths on each side."""

    method = EigenMethod.LINEARIZED_DYNAMIC

    def basis(self, left: PrimitiveState, right: PrimitiveState) -> EigenBasis:
        return split_linearized_basis(left.h1, left.h2, right.h1, right.h2, self.params, self.method)


class LinearizedStaticSolver(BaseEigenSolver):
    """Linearized eigenspace frozen at the background depths of the initial condition."""

    method = EigenMethod.LINEARIZED_STATIC
    MAX_CACHED = 16

    def __init__(self, params: Parameters, background: LinearizedBackground):
        super().__init__(params)
        self.background = background

    def basis(self, left: PrimitiveState, right: PrimitiveState) -> EigenBasis:
        key = (np.asarray(left.b).tobytes(), np.asarray(right.b).tobytes())
        cached = self._get_cached(key)
        if cached is not None:
            return cached

        h1_left, h2_left = self.background.depths(left.b)
        h1_right, h2_right = self.background.depths(right.b)
        result = split_linearized_basis(h1_left, h2_left, h1_right, h2_right, self.params, self.method)
        if len(self._cache) >= self.MAX_CACHED:
            self.clear_cache()
        self._set_cached(key, result)
        return result
