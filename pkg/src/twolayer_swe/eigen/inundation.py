"""Eigenbases for interfaces where the bottom layer floods a dry cell."""

from enum import Enum

import numpy as np

from twolayer_swe.core.parameters import EigenMethod, InundationMethod, Parameters
from twolayer_swe.core.state import PrimitiveState
from twolayer_swe.eigen.base import EigenBasis, assemble_basis, exact_alpha
from twolayer_swe.eigen.linearized import _family_speeds, split_linearized_basis


class DrySide(str, Enum):
    LEFT_DRY = "left_dry"
    RIGHT_DRY = "right_dry"


def inundation_speeds(wet: PrimitiveState, side: DrySide, p: Parameters) -> np.ndarray:
    """Speed of the internal front running into the dry side, u2 -+ 2 sqrt(g' h2)."""
    front = 2.0 * np.sqrt(p.reduced_gravity * np.maximum(wet.h2, 0.0))
    if DrySide(side) is DrySide.LEFT_DRY:
        return wet.u2 - front
    return wet.u2 + front


def inundation_basis(left: PrimitiveState, right: PrimitiveState, side: DrySide,
                     p: Parameters) -> EigenBasis:
    """Linearized basis at the wet state with the internal front speed on the dry side.

    With the small-depth-fill variant the dry bottom layer is given the dry
    tolerance as depth and the split linearized basis is used instead.
    """
    side = DrySide(side)
    if p.inundation_method is InundationMethod.SMALL_DEPTH_FILL:
        if side is DrySide.LEFT_DRY:
            return split_linearized_basis(left.h1, np.full_like(left.h2, p.dry_tolerance),
                                          right.h1, right.h2, p, EigenMethod.LINEARIZED_DYNAMIC)
        return split_linearized_basis(left.h1, left.h2,
                                      right.h1, np.full_like(right.h2, p.dry_tolerance),
                                      p, EigenMethod.LINEARIZED_DYNAMIC)

    wet = right if side is DrySide.LEFT_DRY else left
    external, internal, alpha_plus, alpha_minus = _family_speeds(wet.h1, wet.h2, p)
    speeds = [-external, -internal, internal, external]
    alphas = [alpha_plus, alpha_minus, alpha_minus, alpha_plus]

    front_family = 1 if side is DrySide.LEFT_DRY else 2
    front = inundation_speeds(wet, side, p)
    speeds[front_family] = front
    alphas[front_family] = exact_alpha(front, wet.h1, wet.u1, wet.h2, wet.u2, p)
    return assemble_basis(speeds, alphas, p, EigenMethod.LINEARIZED_DYNAMIC)
