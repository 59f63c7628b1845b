"""Flux jump with the bathymetry and layer-coupling sources fused in.

Written with [h^2]/2 = h_bar [h] and [h1 h2] = h1_bar [h2] + h2_bar [h1] so the
at-rest state cancels term by term in floating point:

    d1 = [rho1 h1 u1]
    d2 = [rho1 h1 u1^2] + g rho1 h1_bar ([h1] + [h2 + b])
    d3 = [rho2 h2 u2]
    d4 = [rho2 h2 u2^2] + g rho2 h2_bar ([h2] + [b]) + g rho1 h2_bar [h1]
"""

import numpy as np

from twolayer_swe.core.parameters import Parameters
from twolayer_swe.core.state import PrimitiveState
from twolayer_swe.riemann.dry_states import DryConfig, wall_ghost


def _layer_terms(h_left, u_left, h_right, u_right, rho):
    mass = rho * (h_right * u_right - h_left * u_left)
    momentum = rho * (h_right * u_right ** 2 - h_left * u_left ** 2)
    return mass, momentum


def flux_jump(left: PrimitiveState, right: PrimitiveState, config, p: Parameters) -> np.ndarray:
    """Flux-plus-source jump, shape (4, ...), for each interface and its configuration.

    Wall interfaces take the top layer from the real states (the dry side's
    internal surface is its bathymetry plus any residual bottom mass) and the
    bottom layer from the mirrored wet cell, so no bottom-layer flux crosses
    the wall. Both-dry interfaces carry no bottom-layer jump.
    """
    g, rho1, rho2 = p.g, p.rho1, p.rho2
    config = np.asarray(config)

    d1, d2 = _layer_terms(left.h1, left.u1, right.h1, right.u1, rho1)
    h1_bar = 0.5 * (left.h1 + right.h1)
    d2 = d2 + g * rho1 * h1_bar * ((right.h1 - left.h1) + ((right.h2 + right.b) - (left.h2 + left.b)))

    wall_right = config == DryConfig.WALL_RIGHT_DRY
    wall_left = config == DryConfig.WALL_LEFT_DRY
    ghost_of_left = wall_ghost(left)
    ghost_of_right = wall_ghost(right)

    def pick(name):
        lo = np.where(wall_left, getattr(ghost_of_right, name), getattr(left, name))
        hi = np.where(wall_right, getattr(ghost_of_left, name), getattr(right, name))
        return lo, hi

    h1_lo, h1_hi = pick("h1")
    h2_lo, h2_hi = pick("h2")
    u2_lo, u2_hi = pick("u2")
    b_lo, b_hi = pick("b")

    d3, d4 = _layer_terms(h2_lo, u2_lo, h2_hi, u2_hi, rho2)
    h2_bar = 0.5 * (h2_lo + h2_hi)
    d4 = (d4 + g * rho2 * h2_bar * ((h2_hi - h2_lo) + (b_hi - b_lo))
          + g * rho1 * h2_bar * (h1_hi - h1_lo))

    both_dry = config == DryConfig.BOTH_DRY
    d3 = np.where(both_dry, 0.0, d3)
    d4 = np.where(both_dry, 0.0, d4)
    return np.stack(np.broadcast_arrays(d1, d2, d3, d4))
