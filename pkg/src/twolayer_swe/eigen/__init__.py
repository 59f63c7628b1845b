"""Interface eigenbasis strategies."""

from typing import Optional

from twolayer_swe.core.parameters import EigenMethod, Parameters
from twolayer_swe.core.state import LinearizedBackground
from twolayer_swe.eigen.base import (
    BaseEigenSolver,
    EigenBasis,
    assemble_basis,
    exact_alpha,
    quasi_linear_matrix,
)
from twolayer_swe.eigen.direct import DirectSolver, average_state, characteristic_roots, direct_basis
from twolayer_swe.eigen.inundation import DrySide, inundation_basis, inundation_speeds
from twolayer_swe.eigen.linearized import (
    GammaAlpha,
    LinearizedDynamicSolver,
    LinearizedStaticSolver,
    linearized_alpha,
    linearized_basis,
    split_linearized_basis,
)
from twolayer_swe.eigen.velocity_difference import VelocityDifferenceSolver, velocity_difference_basis


def get_eigen_solver(method: EigenMethod, params: Parameters,
                     background: Optional[LinearizedBackground] = None) -> BaseEigenSolver:
    """Instantiate the strategy for ``method``; the static variant needs a background."""
    method = EigenMethod(method)
    if method is EigenMethod.LINEARIZED_STATIC:
        if background is None:
            raise ValueError("The static linearized eigensolver needs a linearized background")
        return LinearizedStaticSolver(params, background)
    solvers = {
        EigenMethod.VELOCITY_DIFFERENCE: VelocityDifferenceSolver,
        EigenMethod.LINEARIZED_DYNAMIC: LinearizedDynamicSolver,
        EigenMethod.DIRECT: DirectSolver,
    }
    return solvers[method](params)


__all__ = [
    "BaseEigenSolver",
    "EigenBasis",
    "GammaAlpha",
    "DrySide",
    "DirectSolver",
    "LinearizedDynamicSolver",
    "LinearizedStaticSolver",
    "VelocityDifferenceSolver",
    "assemble_basis",
    "average_state",
    "characteristic_roots",
    "direct_basis",
    "exact_alpha",
    "get_eigen_solver",
    "inundation_basis",
    "inundation_speeds",
    "linearized_alpha",
    "linearized_basis",
    "quasi_linear_matrix",
    "split_linearized_basis",
    "velocity_difference_basis",
]
