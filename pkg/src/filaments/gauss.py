"""Quadratic exponential sums S_N(x, theta) = sum_k e^{i pi x k^2} e^{2 pi i k theta},
the explicit uniform bound 4 sqrt(d) + 3/2 + 1/d for x = 1/d, and the
rank-perturbation formula linking such sums to 2 x d singular values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

COMPENSATED_THRESHOLD = 1 << 16


class BoundViolation(RuntimeError):
    """The proven magnitude bound was exceeded; indicates a summation bug."""


@dataclass(frozen=True)
class GaussSumReport:
    n: int
    x: float
    theta_grid: np.ndarray
    magnitudes: np.ndarray
    bound: float
    max_ratio: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "x": self.x,
            "theta_samples": int(self.theta_grid.size),
            "bound": self.bound,
            "max_magnitude": float(self.magnitudes.max()),
            "max_ratio": self.max_ratio,
        }


def gauss_sum(n: int, x: float, theta: float) -> complex:
    """Direct accumulation of the finite sum; compensated summation kicks in
    for term counts >= 2^16 to hold roundoff below the 1e-10 targets."""
    if n < 1:
        raise ValueError("n must be positive")
    k = np.arange(1, n + 1, dtype=float)
    terms = np.exp(1j * (np.pi * x * k**2 + 2.0 * np.pi * k * theta))
    if n >= COMPENSATED_THRESHOLD:
        return complex(math.fsum(terms.real), math.fsum(terms.imag))
    return complex(terms.sum())


def magnitude_bound(d: int) -> float:
    """Uniform-in-theta bound on |S_d(1/d, theta)|."""
    return 4.0 * math.sqrt(d) + 1.5 + 1.0 / d


def verify_bound(d: int, theta_samples: int) -> GaussSumReport:
    """Sweep |S_d(1/d, theta)| over a uniform inclusive grid on [-1/2, 1/2]
    and check the proven bound; raises BoundViolation if it ever fails."""
    if d < 1:
        raise ValueError("d must be positive")
    if theta_samples < 2:
        raise ValueError("theta_samples must be at least 2")
    thetas = np.linspace(-0.5, 0.5, theta_samples)
    k = np.arange(1, d + 1, dtype=float)
    base = np.exp(1j * np.pi * k**2 / d)
    magnitudes = np.empty(theta_samples)
    chunk = max(1, (1 << 22) // max(d, 1))
    for start in range(0, theta_samples, chunk):
        block = thetas[start : start + chunk]
        phases = np.exp(2j * np.pi * np.outer(block, k))
        magnitudes[start : start + chunk] = np.abs(phases @ base)
    bound = magnitude_bound(d)
    max_ratio = float(magnitudes.max() / bound)
    report = GaussSumReport(
        n=d,
        x=1.0 / d,
        theta_grid=thetas,
        magnitudes=magnitudes,
        bound=bound,
        max_ratio=max_ratio,
    )
    if max_ratio > 1.0:
        raise BoundViolation(
            f"|S| = {magnitudes.max():.6g} exceeds bound {bound:.6g} for d={d}"
        )
    return report


def perturb_singular_values(z) -> tuple[float, float]:
    """Singular values of the 2 x n matrix stacking Re(z) over Im(z), given
    sum |z_k|^2 = 2: they are sqrt(1 +- |sum z_k^2| / 2)."""
    z = np.asarray(z, dtype=complex)
    norm_sq = float(np.sum(np.abs(z) ** 2))
    if abs(norm_sq - 2.0) > 1e-9:
        raise ValueError(f"sum |z|^2 = {norm_sq!r}, expected 2 within 1e-9")
    w2 = abs(complex(np.sum(z**2)))
    s_max = math.sqrt(1.0 + w2 / 2.0)
    s_min = math.sqrt(max(1.0 - w2 / 2.0, 0.0))
    return s_max, s_min
