"""Eigenspeeds from an expansion in the layer velocity difference.

External (barotropic) speeds:
    (h1 u1 + h2 u2)/(h1 + h2) +- sqrt(g (h1 + h2))
Internal (baroclinic) speeds:
    (h1 u2 + h2 u1)/(h1 + h2)
        +- sqrt(g' h1 h2/(h1 + h2) [1 - (u1 - u2)^2 / (g' (h1 + h2))])
The left-going pair is evaluated at the left state, the right-going pair at
the right state.
"""

import numpy as np

from twolayer_swe.common.errors import HyperbolicityLossError
from twolayer_swe.config.logger_config import LoggerConfig as Logger
from twolayer_swe.core.parameters import EigenMethod, Parameters
from twolayer_swe.core.state import PrimitiveState
from twolayer_swe.eigen.base import BaseEigenSolver, EigenBasis, assemble_basis, exact_alpha


def _expansion_speeds(state: PrimitiveState, p: Parameters):
    h1, h2, u1, u2 = state.h1, state.h2, state.u1, state.u2
    total = h1 + h2
    reduced = p.reduced_gravity

    external_mean = (h1 * u1 + h2 * u2) / total
    external_celerity = np.sqrt(p.g * total)

    internal_mean = (h1 * u2 + h2 * u1) / total
    if reduced > 0:
        shear = (u1 - u2) ** 2 / (reduced * total)
    else:
        shear = np.zeros_like(u1)
    scale = reduced * h1 * h2 / total
    radicand = scale * (1.0 - shear)
    # round-off at the hyperbolicity boundary counts as zero
    radicand = np.where(np.abs(radicand) <= 1.0e-12 * scale, 0.0, radicand)
    return external_mean, external_celerity, internal_mean, radicand


def velocity_difference_basis(left: PrimitiveState, right: PrimitiveState, p: Parameters) -> EigenBasis:
    """Expansion eigenbasis for interfaces wet in both layers on both sides."""
    ext_mean_l, ext_c_l, int_mean_l, rad_l = _expansion_speeds(left, p)
    ext_mean_r, ext_c_r, int_mean_r, rad_r = _expansion_speeds(right, p)

    bad = np.atleast_1d((rad_l < 0) | (rad_r < 0))
    if np.any(bad):
        indices = np.flatnonzero(bad)
        Logger.log("Internal radicand negative", level="ERROR", count=indices.size)
        raise HyperbolicityLossError(
            "Layer shear exceeds the hyperbolicity bound in the velocity difference expansion",
            indices=indices,
        )

    s1 = ext_mean_l - ext_c_l
    s2 = int_mean_l - np.sqrt(rad_l)
    s3 = int_mean_r + np.sqrt(rad_r)
    s4 = ext_mean_r + ext_c_r

    alphas = [
        exact_alpha(s1, left.h1, left.u1, left.h2, left.u2, p),
        exact_alpha(s2, left.h1, left.u1, left.h2, left.u2, p),
        exact_alpha(s3, right.h1, right.u1, right.h2, right.u2, p),
        exact_alpha(s4, right.h1, right.u1, right.h2, right.u2, p),
    ]
    return assemble_basis([s1, s2, s3, s4], alphas, p, EigenMethod.VELOCITY_DIFFERENCE)


class VelocityDifferenceSolver(BaseEigenSolver):
    method = EigenMethod.VELOCITY_DIFFERENCE

    def basis(self, left: PrimitiveState, right: PrimitiveState) -> EigenBasis:
        return velocity_difference_basis(left, right, self.params)
