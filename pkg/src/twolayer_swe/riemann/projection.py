"""Projection of the flux jump onto an eigenbasis and fluctuation assembly."""

from typing import Optional, Tuple

import numpy as np

from twolayer_swe.common.errors import NearSingularBasisError
from twolayer_swe.config.environment import SOLVER_CONFIG
from twolayer_swe.eigen.base import EigenBasis


def _stacked(R: np.ndarray, delta: np.ndarray):
    """(n, 4, 4) matrices and (n, 4) right-hand sides from (4, 4, ...) and (4, ...)."""
    trailing = R.shape[2:]
    matrices = np.moveaxis(R.reshape(4, 4, -1), -1, 0)
    rhs = np.moveaxis(np.broadcast_to(delta, (4,) + trailing).reshape(4, -1), -1, 0)
    return matrices, rhs, trailing


def conditioned_projection(basis: EigenBasis, delta: np.ndarray,
                           condition_limit: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Solve R beta = delta where R is well conditioned.

    Returns (beta, fwaves, ill_conditioned); beta and fwaves are zero where the
    condition estimate exceeds ``condition_limit`` or is not finite.
    """
    limit = SOLVER_CONFIG['condition_limit'] if condition_limit is None else condition_limit
    matrices, rhs, trailing = _stacked(basis.R, np.asarray(delta, dtype=float))

    finite = np.all(np.isfinite(matrices), axis=(1, 2)) & np.all(np.isfinite(rhs), axis=1)
    matrices = np.where(finite[:, np.newaxis, np.newaxis], matrices, np.eye(4))
    rhs = np.where(finite[:, np.newaxis], rhs, 0.0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        condition = np.linalg.cond(matrices) if matrices.shape[0] else np.zeros(0)
    ill = ~(condition <= limit) | ~finite

    safe = np.where(ill[:, np.newaxis, np.newaxis], np.eye(4), matrices)
    beta = np.linalg.solve(safe, rhs[..., np.newaxis])[..., 0] if matrices.shape[0] else np.zeros((0, 4))
    beta = np.where(ill[:, np.newaxis], 0.0, beta)

    beta = np.moveaxis(beta, 0, -1).reshape((4,) + trailing)
    ill = ill.reshape(trailing)
    with np.errstate(invalid="ignore"):
        fwaves = np.where(ill[np.newaxis, np.newaxis], 0.0, basis.R * beta[np.newaxis])
    return beta, fwaves, ill


def project(basis: EigenBasis, delta: np.ndarray,
            condition_limit: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Wave strengths beta and f-waves Z^p = beta_p R[:, p]; raises on a near-singular basis."""
    beta, fwaves, ill = conditioned_projection(basis, delta, condition_limit)
    if np.any(ill):
        raise NearSingularBasisError(
            "Eigenvector matrix is too ill-conditioned to project the flux jump",
            indices=np.flatnonzero(np.atleast_1d(ill)),
        )
    return beta, fwaves


def fluctuations(fwaves: np.ndarray, speeds: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Left- and right-going fluctuations; a standing wave is shared equally."""
    speeds = np.asarray(speeds)
    left_share = np.where(speeds < 0, 1.0, np.where(speeds == 0, 0.5, 0.0))[np.newaxis]
    amdq = np.sum(fwaves * left_share, axis=1)
    apdq = np.sum(fwaves * (1.0 - left_share), axis=1)
    return amdq, apdq
