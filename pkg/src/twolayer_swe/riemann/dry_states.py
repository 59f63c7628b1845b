"""Classification of interfaces by the wetness of the bottom layer."""

from enum import IntEnum
from typing import Union

import numpy as np

from twolayer_swe.core.parameters import Parameters
from twolayer_swe.core.state import PrimitiveState


class DryConfig(IntEnum):
    FULLY_WET = 0
    WALL_LEFT_DRY = 1
    WALL_RIGHT_DRY = 2
    INUNDATION_LEFT_DRY = 3
    INUNDATION_RIGHT_DRY = 4
    BOTH_DRY = 5
    TOP_LAYER_DRY = 6


WALL_CONFIGS = (DryConfig.WALL_LEFT_DRY, DryConfig.WALL_RIGHT_DRY)
INUNDATION_CONFIGS = (DryConfig.INUNDATION_LEFT_DRY, DryConfig.INUNDATION_RIGHT_DRY)


def classify(left: PrimitiveState, right: PrimitiveState, p: Parameters) -> Union[DryConfig, np.ndarray]:
    """Dry configuration of each interface.

    A one-sided dry bottom layer floods when the wet internal surface stands
    above the dry-side bathymetry, and acts as a wall otherwise. Scalar input
    gives a DryConfig, array input an integer array of DryConfig values.
    """
    tol = p.dry_tolerance
    dry_left = left.h2 < tol
    dry_right = right.h2 < tol

    config = np.full(np.broadcast(dry_left, dry_right).shape, int(DryConfig.FULLY_WET))
    top_dry = (left.h1 < tol) | (right.h1 < tol)
    config = np.where(~dry_left & ~dry_right & top_dry, int(DryConfig.TOP_LAYER_DRY), config)

    floods_right = left.h2 + left.b > right.b
    floods_left = right.h2 + right.b > left.b
    config = np.where(~dry_left & dry_right,
                      np.where(floods_right, int(DryConfig.INUNDATION_RIGHT_DRY), int(DryConfig.WALL_RIGHT_DRY)),
                      config)
    config = np.where(dry_left & ~dry_right,
                      np.where(floods_left, int(DryConfig.INUNDATION_LEFT_DRY), int(DryConfig.WALL_LEFT_DRY)),
                      config)
    config = np.where(dry_left & dry_right, int(DryConfig.BOTH_DRY), config)

    if config.ndim == 0:
        return DryConfig(int(config))
    return config


def wall_ghost(wet: PrimitiveState) -> PrimitiveState:
    """Mirror of the wet cell across a wall: same depths and bathymetry, bottom velocity negated."""
    return wet.replace(u2=-wet.u2)
