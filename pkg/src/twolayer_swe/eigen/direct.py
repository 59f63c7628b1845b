"""Direct eigenspeeds: real roots of the characteristic quartic

    ((s - u1)^2 - g h1) ((s - u2)^2 - g h2) - r g^2 h1 h2 = 0

solved in closed form (Ferrari, resolvent cubic by Cardano) and polished by
Newton iteration. Eigenvectors are rebuilt from each root.
"""

from typing import Optional

import numpy as np

from twolayer_swe.common.errors import HyperbolicityLossError
from twolayer_swe.config.environment import SOLVER_CONFIG
from twolayer_swe.config.logger_config import LoggerConfig as Logger
from twolayer_swe.core.parameters import EigenMethod, Parameters
from twolayer_swe.core.state import PrimitiveState
from twolayer_swe.eigen.base import BaseEigenSolver, EigenBasis, assemble_basis, exact_alpha

_CUBE_UNITY = np.exp(2j * np.pi / 3.0)


def _largest_cubic_root(a, b, c):
    """Root with the largest real part of m^3 + a m^2 + b m + c = 0."""
    a = np.asarray(a, dtype=complex)
    delta0 = a * a - 3.0 * b
    delta1 = 2.0 * a ** 3 - 9.0 * a * b + 27.0 * c
    disc = np.sqrt(delta1 * delta1 - 4.0 * delta0 ** 3 + 0j)
    plus = 0.5 * (delta1 + disc)
    minus = 0.5 * (delta1 - disc)
    big = np.where(np.abs(plus) >= np.abs(minus), plus, minus)
    cube = np.power(big, 1.0 / 3.0)

    degenerate = np.abs(cube) == 0
    safe_cube = np.where(degenerate, 1.0, cube)
    candidates = []
    for k in range(3):
        rotated = safe_cube * _CUBE_UNITY ** k
        root = -(a + rotated + delta0 / rotated) / 3.0
        candidates.append(np.where(degenerate, -a / 3.0, root))
    candidates = np.stack(candidates)
    pick = np.argmax(candidates.real, axis=0)
    return np.take_along_axis(candidates, pick[np.newaxis], axis=0)[0]


def _quartic_residual(lam, u1, u2, c1, c2, coupling):
    f1 = (lam - u1) ** 2 - c1
    f2 = (lam - u2) ** 2 - c2
    value = f1 * f2 - coupling
    slope = 2.0 * (lam - u1) * f2 + 2.0 * (lam - u2) * f1
    return value, slope


def characteristic_roots(h1, u1, h2, u2, g: float, r: float,
                         polish_tol: Optional[float] = None,
                         max_iterations: Optional[int] = None,
                         hyperbolicity_tol: Optional[float] = None) -> np.ndarray:
    """Sorted real roots, shape (4, ...), of the two-layer characteristic quartic.

    Raises HyperbolicityLossError where a root has an imaginary part above
    ``hyperbolicity_tol`` times the spectral radius.
    """
    polish_tol = SOLVER_CONFIG['polish_tol'] if polish_tol is None else polish_tol
    max_iterations = SOLVER_CONFIG['max_polish_iterations'] if max_iterations is None else max_iterations
    hyperbolicity_tol = SOLVER_CONFIG['hyperbolicity_tol'] if hyperbolicity_tol is None else hyperbolicity_tol

    h1, u1, h2, u2 = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (h1, u1, h2, u2)))
    c1 = g * h1
    c2 = g * h2
    coupling = r * g * g * h1 * h2

    # depressed quartic y^4 + p y^2 + q y + s = 0 in y = lam - (u1 + u2)/2
    shift = 0.5 * (u1 + u2)
    d = 0.5 * (u1 - u2)
    A = d * d - c1
    B = d * d - c2
    p = A + B - 4.0 * d * d
    q = 2.0 * d * (A - B)
    s = A * B - coupling

    m = _largest_cubic_root(p, 0.25 * p * p - s, -0.125 * q * q)
    pair_sum = np.sqrt(2.0 * m + 0j)
    has_pair = np.abs(pair_sum) > 0
    cross = np.where(has_pair, 2.0 * q / np.where(has_pair, pair_sum, 1.0), 0.0)

    roots = []
    for sign in (1.0, -1.0):
        spread = np.sqrt(-(2.0 * p + 2.0 * m + sign * cross) + 0j)
        roots.append(0.5 * (sign * pair_sum + spread))
        roots.append(0.5 * (sign * pair_sum - spread))
    lam = np.stack(roots) + shift

    radius = np.max(np.abs(lam), axis=0)
    scale = np.maximum(radius, np.finfo(float).tiny)
    complex_roots = np.atleast_1d(np.max(np.abs(lam.imag), axis=0) > hyperbolicity_tol * scale)
    if np.any(complex_roots):
        indices = np.flatnonzero(complex_roots)
        Logger.log("Complex characteristic roots", level="ERROR", count=indices.size)
        raise HyperbolicityLossError(
            "Characteristic quartic has complex roots: the layer shear is too strong",
            indices=indices,
        )

    lam = lam.real
    for _ in range(max_iterations):
        value, slope = _quartic_residual(lam, u1, u2, c1, c2, coupling)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(slope != 0, value / slope, 0.0)
        candidate = lam - step
        new_value, _ = _quartic_residual(candidate, u1, u2, c1, c2, coupling)
        improved = np.abs(new_value) <= np.abs(value)
        lam = np.where(improved, candidate, lam)
        if np.all(np.abs(np.where(improved, step, 0.0)) <= polish_tol * scale):
            break

    return np.sort(lam, axis=0)


def direct_basis(average: PrimitiveState, p: Parameters) -> EigenBasis:
    """Eigenbasis from the exact roots at the averaged state ``average``."""
    lam = characteristic_roots(average.h1, average.u1, average.h2, average.u2, p.g, p.r)
    alphas = [exact_alpha(lam[k], average.h1, average.u1, average.h2, average.u2, p) for k in range(4)]
    return assemble_basis([lam[k] for k in range(4)], alphas, p, EigenMethod.DIRECT)


def average_state(left: PrimitiveState, right: PrimitiveState, p: Parameters) -> PrimitiveState:
    """Arithmetic average of the conserved variables, returned as primitives."""
    h1 = 0.5 * (left.h1 + right.h1)
    h2 = 0.5 * (left.h2 + right.h2)
    hu1 = 0.5 * (left.h1 * left.u1 + right.h1 * right.u1)
    hu2 = 0.5 * (left.h2 * left.u2 + right.h2 * right.u2)
    b = 0.5 * (left.b + right.b)
    with np.errstate(divide="ignore", invalid="ignore"):
        u1 = np.where(h1 > 0, hu1 / np.where(h1 > 0, h1, 1.0), 0.0)
        u2 = np.where(h2 > 0, hu2 / np.where(h2 > 0, h2, 1.0), 0.0)
    return PrimitiveState.from_depths(h1, h2, u1, u2, b, p)


class DirectSolver(BaseEigenSolver):
    method = EigenMethod.DIRECT

    def basis(self, left: PrimitiveState, right: PrimitiveState) -> EigenBasis:
        return direct_basis(average_state(left, right, self.params), self.params)
