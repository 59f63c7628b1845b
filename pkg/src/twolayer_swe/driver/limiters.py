"""Wave limiters and the second-order correction fluxes."""

from enum import Enum
from typing import Optional

import numpy as np


class Limiter(str, Enum):
    NONE = "none"
    MINMOD = "minmod"
    SUPERBEE = "superbee"
    VAN_LEER = "van_leer"
    MC = "mc"


def minmod(theta: np.ndarray) -> np.ndarray:
    return np.maximum(0.0, np.minimum(1.0, theta))


def superbee(theta: np.ndarray) -> np.ndarray:
    return np.maximum(0.0, np.maximum(np.minimum(1.0, 2.0 * theta), np.minimum(2.0, theta)))


def van_leer(theta: np.ndarray) -> np.ndarray:
    return (theta + np.abs(theta)) / (1.0 + np.abs(theta))


def mc(theta: np.ndarray) -> np.ndarray:
    """Monotonized central-difference limiter."""
    return np.maximum(0.0, np.minimum(np.minimum(0.5 * (1.0 + theta), 2.0), 2.0 * theta))


_LIMITERS = {
    Limiter.MINMOD: minmod,
    Limiter.SUPERBEE: superbee,
    Limiter.VAN_LEER: van_leer,
    Limiter.MC: mc,
}


def limit(theta: np.ndarray, limiter: Limiter) -> np.ndarray:
    limiter = Limiter(limiter)
    if limiter is Limiter.NONE:
        return np.zeros_like(theta)
    return _LIMITERS[limiter](theta)


def wave_ratios(fwaves: np.ndarray, speeds: np.ndarray) -> np.ndarray:
    """Upwind-to-local ratio theta of each f-wave, shape (4 waves, n interfaces).

    The same family at the upwind interface is compared through the dot
    product over components. Waves with no upwind neighbour, or with zero
    norm, get theta = 0.
    """
    n = fwaves.shape[-1]
    norm = np.sum(fwaves * fwaves, axis=0)

    from_left = np.zeros_like(norm)
    from_right = np.zeros_like(norm)
    if n > 1:
        from_left[:, 1:] = np.sum(fwaves[:, :, :-1] * fwaves[:, :, 1:], axis=0)
        from_right[:, :-1] = np.sum(fwaves[:, :, 1:] * fwaves[:, :, :-1], axis=0)

    upwind = np.where(speeds > 0, from_left, from_right)
    safe_norm = np.where(norm > 0, norm, 1.0)
    return np.where(norm > 0, upwind / safe_norm, 0.0)


def correction_fluxes(fwaves: np.ndarray, speeds: np.ndarray, dt: float, dx: float,
                      limiter: Limiter = Limiter.MINMOD,
                      suppress: Optional[np.ndarray] = None) -> np.ndarray:
    """High-resolution correction flux at each interface, shape (4, n).

    F = 1/2 sum_p sgn(s_p) (1 - dt/dx |s_p|) phi(theta_p) Z_p, with ``suppress``
    marking interfaces whose corrections are switched off.
    """
    phi = limit(wave_ratios(fwaves, speeds), limiter)
    if suppress is not None:
        phi = np.where(np.asarray(suppress)[np.newaxis], 0.0, phi)
    weight = 0.5 * np.sign(speeds) * (1.0 - dt / dx * np.abs(speeds)) * phi
    return np.sum(fwaves * weight[np.newaxis], axis=1)
