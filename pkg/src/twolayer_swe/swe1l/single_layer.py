"""Single-layer f-wave solver with bathymetry and dry states.

Two waves with Einfeldt-limited Roe speeds. A dry cell that the wet side
cannot reach is treated as a reflecting wall; otherwise the dry-front speed
u +- 2 sqrt(g h) bounds the flooding wave.
"""

from dataclasses import dataclass

import numpy as np

from twolayer_swe.core.parameters import Parameters


@dataclass(frozen=True)
class SingleLayerSolution:
    """f-waves (2 components, 2 waves, ...), speeds (2, ...) and fluctuations (2, ...)."""
    fwaves: np.ndarray
    speeds: np.ndarray
    amdq: np.ndarray
    apdq: np.ndarray
    delta: np.ndarray


def _limited_velocity(h, hu, dry_tolerance):
    wet = h >= dry_tolerance
    return np.where(wet, hu / np.where(wet, h, 1.0), 0.0)


def solve_single_layer(hL, huL, bL, hR, huR, bR, p: Parameters) -> SingleLayerSolution:
    """Solve the single-layer Riemann problems between (hL, huL, bL) and (hR, huR, bR)."""
    g = p.g
    tol = p.dry_tolerance
    hL, huL, bL, hR, huR, bR = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (hL, huL, bL, hR, huR, bR))
    )
    uL = _limited_velocity(hL, huL, tol)
    uR = _limited_velocity(hR, huR, tol)

    wetL = hL >= tol
    wetR = hR >= tol
    both_dry = ~wetL & ~wetR
    wall_right = wetL & ~wetR & (hL + bL <= bR)
    wall_left = wetR & ~wetL & (hR + bR <= bL)
    flood_right = wetL & ~wetR & ~wall_right
    flood_left = wetR & ~wetL & ~wall_left

    # mirror the wet cell into the wall side
    hR = np.where(wall_right, hL, hR)
    uR = np.where(wall_right, -uL, uR)
    bR = np.where(wall_right, bL, bR)
    hL = np.where(wall_left, hR, hL)
    uL = np.where(wall_left, -uR, uL)
    bL = np.where(wall_left, bR, bL)

    h_bar = 0.5 * (hL + hR)
    delta = np.stack([
        hR * uR - hL * uL,
        hR * uR ** 2 - hL * uL ** 2 + g * h_bar * ((hR - hL) + (bR - bL)),
    ])

    cL = np.sqrt(g * hL)
    cR = np.sqrt(g * hR)
    root_sum = np.sqrt(hL) + np.sqrt(hR)
    u_hat = np.where(root_sum > 0,
                     (np.sqrt(hL) * uL + np.sqrt(hR) * uR) / np.where(root_sum > 0, root_sum, 1.0),
                     0.0)
    c_hat = np.sqrt(g * h_bar)

    s1 = np.minimum(uL - cL, u_hat - c_hat)
    s2 = np.maximum(uR + cR, u_hat + c_hat)
    s2 = np.where(flood_right, uL + 2.0 * cL, s2)
    s1 = np.where(flood_left, uR - 2.0 * cR, s1)

    spread = s2 - s1
    solvable = (spread > 0) & ~both_dry
    safe_spread = np.where(solvable, spread, 1.0)
    beta1 = np.where(solvable, (s2 * delta[0] - delta[1]) / safe_spread, 0.0)
    beta2 = np.where(solvable, (delta[1] - s1 * delta[0]) / safe_spread, 0.0)

    # nothing enters a wall-side dry cell
    beta1 = np.where(wall_left & (s1 <= 0), 0.0, beta1)
    beta2 = np.where(wall_right & (s2 >= 0), 0.0, beta2)

    speeds = np.stack([s1, s2])
    fwaves = np.stack([
        np.stack([beta1, beta2]),
        np.stack([beta1 * s1, beta2 * s2]),
    ])

    negative = np.where(speeds < 0, 1.0, np.where(speeds == 0, 0.5, 0.0))
    positive = 1.0 - negative
    amdq = np.sum(fwaves * negative[np.newaxis], axis=1)
    apdq = np.sum(fwaves * positive[np.newaxis], axis=1)
    # walls and dry pairs report the jump actually carried by the waves
    delta = np.where((wall_left | wall_right | both_dry)[np.newaxis], amdq + apdq, delta)
    return SingleLayerSolution(fwaves=fwaves, speeds=speeds, amdq=amdq, apdq=apdq, delta=delta)
