"""Pure numpy fallback for the frame-integration hot loop.

Numerically identical (same formulas, same evaluation order) to the compiled
kernel in ``_frame_kernel.pyx``; kept in sync by tests that compare the two.
"""

from __future__ import annotations

import math

import numpy as np

# Three-stage third-order Lie Runge-Kutta weights (stage times carried by the
# caller): update is exp(h b3 A3) exp(h b2 A2) exp(h b1 A1) applied on the left.
STAGE_OFFSETS = (0.0, 3.0 / 4.0, 17.0 / 24.0)
STAGE_WEIGHTS = (13.0 / 51.0, -2.0 / 3.0, 24.0 / 17.0)

SMALL_ANGLE = 1e-6


def _rot_coeffs(rho: float) -> tuple[float, float]:
    """(sin rho / rho, (1 - cos rho) / rho^2) with 4th-order series below
    the small-angle threshold."""
    if rho < SMALL_ANGLE:
        r2 = rho * rho
        return 1.0 - r2 / 6.0 + r2 * r2 / 120.0, 0.5 - r2 / 24.0 + r2 * r2 / 720.0
    return math.sin(rho) / rho, (1.0 - math.cos(rho)) / (rho * rho)


def _exp_step(u: float, v: float) -> np.ndarray:
    """Rotation exp(A) for A = [[0,u,v],[-u,0,0],[-v,0,0]]."""
    rho = math.hypot(u, v)
    alpha, beta = _rot_coeffs(rho)
    return np.array(
        [
            [1.0 - beta * rho * rho, alpha * u, alpha * v],
            [-alpha * u, 1.0 - beta * u * u, -beta * u * v],
            [-alpha * v, -beta * u * v, 1.0 - beta * v * v],
        ]
    )


def integrate_frames(phi1, phi2, h: float) -> np.ndarray:
    """Propagate the identity frame through M steps.

    ``phi1``/``phi2`` hold the driving functions evaluated at the three stage
    nodes of every step, shape (M, 3).  Returns (M + 1, 3, 3) frames.
    """
    phi1 = np.ascontiguousarray(phi1, dtype=float)
    phi2 = np.ascontiguousarray(phi2, dtype=float)
    m = phi1.shape[0]
    frames = np.empty((m + 1, 3, 3))
    frames[0] = np.eye(3)
    b1, b2, b3 = STAGE_WEIGHTS
    f = frames[0]
    for n in range(m):
        f = _exp_step(h * b1 * phi1[n, 0], h * b1 * phi2[n, 0]) @ f
        f = _exp_step(h * b2 * phi1[n, 1], h * b2 * phi2[n, 1]) @ f
        f = _exp_step(h * b3 * phi1[n, 2], h * b3 * phi2[n, 2]) @ f
        frames[n + 1] = f
    return frames
