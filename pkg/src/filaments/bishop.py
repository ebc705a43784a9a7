"""Relatively parallel moving frames driven by a plane curve, and the
unit-length space curves ("filaments") they generate.

The frame rows (T, N1, N2) obey F' = A(t) F with the skew generator
A = [[0, phi1, phi2], [-phi1, 0, 0], [-phi2, 0, 0]].  Integration uses a
three-stage third-order Lie Runge-Kutta scheme whose updates are products of
closed-form rotation exponentials, so every frame is a rotation to roundoff.
The compiled kernel is preferred; set FILAMENTS_PURE_PYTHON=1 to force the
numpy fallback.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import _frame_py
from ._frame_py import STAGE_OFFSETS, STAGE_WEIGHTS  # noqa: F401  (re-export)

if os.environ.get("FILAMENTS_PURE_PYTHON"):
    _kernel = _frame_py
    KERNEL = "python"
else:
    try:
        from . import _frame_kernel as _kernel  # type: ignore[no-redef]

        KERNEL = "compiled"
    except ImportError:
        _kernel = _frame_py
        KERNEL = "python"


@dataclass(frozen=True)
class FrameTrajectory:
    """M + 1 rotation frames on the uniform grid, rows (T, N1, N2)."""

    steps: np.ndarray  # (M + 1, 3, 3)
    step_size: float

    @property
    def tangents(self) -> np.ndarray:
        return self.steps[:, 0, :]


@dataclass(frozen=True)
class Filament:
    """Arc-length-parameterized unit-length polyline with diagnostics.

    ``torsion`` is NaN where the curvature is below the floor recorded in
    ``kappa_floor``; ``torsion_defined`` marks the valid entries.
    """

    points: np.ndarray  # (M + 1, 3), starts at the origin
    frames: FrameTrajectory
    curvature: np.ndarray  # (M,)
    torsion: np.ndarray  # (M,)
    torsion_defined: np.ndarray  # (M,) bool
    kappa_floor: float
    source_norm: float


def skew_from_phi(phi1: float, phi2: float) -> np.ndarray:
    """Generator of the frame rotation: spectral norm sqrt(phi1^2 + phi2^2)."""
    return np.array(
        [[0.0, phi1, phi2], [-phi1, 0.0, 0.0], [-phi2, 0.0, 0.0]], dtype=float
    )


def rodrigues_exp(a: np.ndarray) -> np.ndarray:
    """exp of a 3x3 skew-symmetric matrix via the closed rotation formula,
    with series coefficients below the small-angle threshold."""
    a = np.asarray(a, dtype=float)
    if a.shape != (3, 3) or np.max(np.abs(a + a.T)) >= 1e-12:
        raise ValueError("input must be 3x3 skew-symmetric")
    rho = math.sqrt(a[2, 1] ** 2 + a[0, 2] ** 2 + a[1, 0] ** 2)
    alpha, beta = _frame_py._rot_coeffs(rho)
    return np.eye(3) + alpha * a + beta * (a @ a)


def _stage_phi(phi, steps: int):
    """Evaluate phi at every stage node; returns (phi1, phi2) of shape (M, 3)."""
    h = 1.0 / steps
    t = (np.arange(steps)[:, None] + np.asarray(STAGE_OFFSETS)[None, :]) * h
    vals = _eval_phi(phi, t.ravel())
    vals = vals.reshape(steps, 3, 2)
    return np.ascontiguousarray(vals[:, :, 0]), np.ascontiguousarray(vals[:, :, 1])


def _eval_phi(phi, t: np.ndarray) -> np.ndarray:
    """Call phi on an array of times, tolerating scalar-only callables."""
    vals = phi(t)
    vals = np.asarray(vals, dtype=float)
    if vals.shape == (t.size, 2):
        return vals
    if vals.shape == (2,) and t.size == 1:
        return vals[None, :]
    # scalar-only callable: loop
    return np.array([phi(float(ti)) for ti in t], dtype=float)


def integrate_frame(phi, steps: int) -> FrameTrajectory:
    """Propagate the identity frame over [0, 1] in M uniform steps.

    ``phi`` maps t (scalar or array) to (phi1, phi2); it is evaluated at the
    exact stage nodes, never interpolated.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    h = 1.0 / steps
    phi1, phi2 = _stage_phi(phi, steps)
    frames = _kernel.integrate_frames(phi1, phi2, h)
    return FrameTrajectory(steps=frames, step_size=h)


def torsion(phi_vals, dphi_vals, kappa_floor: float):
    """(phi2' phi1 - phi2 phi1') / (phi1^2 + phi2^2) where the curvature is
    at least the floor; NaN (with a False mask) elsewhere."""
    phi_vals = np.asarray(phi_vals, dtype=float)
    dphi_vals = np.asarray(dphi_vals, dtype=float)
    p1, p2 = phi_vals[..., 0], phi_vals[..., 1]
    dp1, dp2 = dphi_vals[..., 0], dphi_vals[..., 1]
    kappa_sq = p1**2 + p2**2
    defined = kappa_sq >= kappa_floor**2
    with np.errstate(divide="ignore", invalid="ignore"):
        tau = np.where(defined, (dp2 * p1 - p2 * dp1) / kappa_sq, np.nan)
    return tau, defined


def default_kappa_floor(kappa: np.ndarray) -> float:
    return 1e-3 * float(np.max(kappa)) if kappa.size else 0.0


def build_filament(phi, steps: int, dphi=None, source_norm=None) -> Filament:
    """Integrate the frame and accumulate positions with the left-endpoint
    rule Gamma_{i+1} = Gamma_i + h T(t_i), which keeps the polyline length
    exactly 1.

    ``phi`` is an evaluable map as for integrate_frame; a CurveMap supplies
    its own derivative and source norm, otherwise pass ``dphi`` to enable the
    torsion diagnostics.
    """
    if dphi is None:
        dphi = getattr(phi, "derivative", None)
    if source_norm is None:
        source_norm = getattr(phi, "source_norm", float("nan"))

    frames = integrate_frame(phi, steps)
    h = frames.step_size
    tangents = frames.tangents[:-1]
    points = np.zeros((steps + 1, 3))
    np.cumsum(h * tangents, axis=0, out=points[1:])

    grid = np.arange(steps) * h
    phi_vals = _eval_phi(phi, grid)
    kappa = np.hypot(phi_vals[:, 0], phi_vals[:, 1])
    floor = default_kappa_floor(kappa)
    if dphi is not None:
        dphi_vals = _eval_phi(dphi, grid)
        tau, defined = torsion(phi_vals, dphi_vals, floor)
    else:
        tau = np.full(steps, np.nan)
        defined = np.zeros(steps, dtype=bool)
    return Filament(
        points=points,
        frames=frames,
        curvature=kappa,
        torsion=tau,
        torsion_defined=defined,
        kappa_floor=floor,
        source_norm=float(source_norm),
    )


def check_identity(phi, dphi, kappa_floor: float, samples: int = 1024) -> float:
    """Max relative residual over the grid of
    phi1'^2 + phi2'^2 = kappa'^2 + tau^2 kappa^2, with kappa' evaluated
    analytically as (phi1 phi1' + phi2 phi2') / kappa; restricted to points
    with kappa >= kappa_floor."""
    grid = np.arange(samples) / samples
    phi_vals = _eval_phi(phi, grid)
    dphi_vals = _eval_phi(dphi, grid)
    p1, p2 = phi_vals[:, 0], phi_vals[:, 1]
    dp1, dp2 = dphi_vals[:, 0], dphi_vals[:, 1]
    kappa = np.hypot(p1, p2)
    mask = kappa >= kappa_floor
    if not np.any(mask):
        return 0.0
    p1, p2, dp1, dp2, kappa = (v[mask] for v in (p1, p2, dp1, dp2, kappa))
    lhs = dp1**2 + dp2**2
    dkappa = (p1 * dp1 + p2 * dp2) / kappa
    tau = (dp2 * p1 - p2 * dp1) / kappa**2
    rhs = dkappa**2 + tau**2 * kappa**2
    denom = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0)
    return float(np.max(np.abs(lhs - rhs) / denom))
