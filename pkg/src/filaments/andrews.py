"""Construction and evaluation of the smoothest isotropic plane-curve
embedding of a dataset.

Column k of the time slice carries the single harmonic k, scaled by sqrt(2)
and rotated by a per-column phase angle; composing with the transposed left
singular factor of the data matrix gives the minimum mean-quadratic-variation
embedding.  Quadratic phases psi_k = 2*pi*k^2/(4d) additionally keep every
time slice far from rank degeneracy for large d.

Quadratic variation is measured in the Fourier-domain convention
QV(f) = sum_m m^2 ||fhat(m)||^2, i.e. (1/4pi^2) * integral ||f'||^2, so the
closed-form optimum is a plain sum of squared integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ingest import Dataset
from .spectral import SvdFactors

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class AndrewsMap:
    """An evaluable 2 x d parameterized linear map t -> Phi(t).

    ``phases`` are stored unreduced (radians).  ``harmonics`` is normally
    1..d; test fixtures may permute it to build deliberately sub-optimal
    competitors.
    """

    dim: int
    u_transpose: np.ndarray
    phases: np.ndarray
    phase_policy: str  # quadratic | none
    harmonics: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.harmonics is None:
            object.__setattr__(self, "harmonics", np.arange(1, self.dim + 1))
        u = np.asarray(self.u_transpose, dtype=float)
        if u.shape != (self.dim, self.dim):
            raise ValueError(f"u_transpose must be {self.dim}x{self.dim}")
        if np.max(np.abs(u @ u.T - np.eye(self.dim))) > 1e-10:
            raise ValueError("u_transpose is not orthogonal within 1e-10")


@dataclass(frozen=True)
class PlaneCurveSamples:
    """Uniform-grid samples of one embedded data point and its derivative."""

    grid: np.ndarray  # t_i = i / M
    points: np.ndarray  # M x 2
    derivative_points: np.ndarray  # M x 2, analytic d/dt
    source_norm: float


def quadratic_phases(d: int) -> np.ndarray:
    k = np.arange(1, d + 1)
    return TWO_PI * k**2 / (4.0 * d)


def build_map(factors: SvdFactors, phase_policy: str = "quadratic") -> AndrewsMap:
    """Optimal map for the dataset behind ``factors``."""
    d = factors.dim
    return AndrewsMap(
        dim=d,
        u_transpose=factors.u.T.copy(),
        phases=_phases_for(d, phase_policy),
        phase_policy=phase_policy,
    )


def build_identity_map(d: int, phase_policy: str = "quadratic") -> AndrewsMap:
    """Map with U = I; the pure basis construction, independent of any data."""
    return AndrewsMap(
        dim=d,
        u_transpose=np.eye(d),
        phases=_phases_for(d, phase_policy),
        phase_policy=phase_policy,
    )


def _phases_for(d: int, phase_policy: str) -> np.ndarray:
    if phase_policy == "quadratic":
        return quadratic_phases(d)
    if phase_policy == "none":
        return np.zeros(d)
    raise ValueError(f"unknown phase_policy {phase_policy!r}")


def _basis_slices(amap: AndrewsMap, t: np.ndarray) -> np.ndarray:
    """Stack of C(t) matrices, shape (len(t), 2, d); column k of C(t) is the
    phase-rotated harmonic pair sqrt(2) * (cos, sin)(2 pi k t + psi_k)."""
    angles = TWO_PI * np.outer(t, amap.harmonics) + amap.phases[None, :]
    out = np.empty((t.size, 2, amap.dim))
    out[:, 0, :] = np.sqrt(2.0) * np.cos(angles)
    out[:, 1, :] = np.sqrt(2.0) * np.sin(angles)
    return out


def time_slices(amap: AndrewsMap, t) -> np.ndarray:
    """Phi(t) = C(t) @ u_transpose for an array of times; (len(t), 2, d)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return _basis_slices(amap, t) @ amap.u_transpose


def evaluate_time_slice(amap: AndrewsMap, t: float) -> np.ndarray:
    """The 2 x d matrix Phi(t) at a single time."""
    return time_slices(amap, float(t))[0]


class CurveMap:
    """Analytic plane curve t -> Phi(t) x for one data point.

    Precomputes w = u_transpose @ x so evaluation at arbitrary times (e.g.
    integrator stage nodes) is a pair of dot products.
    """

    def __init__(self, amap: AndrewsMap, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (amap.dim,):
            raise ValueError(f"point has shape {x.shape}, map dimension {amap.dim}")
        self.amap = amap
        self.source_norm = float(np.linalg.norm(x))
        self._w = amap.u_transpose @ x
        self._freq = TWO_PI * amap.harmonics

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        angles = np.multiply.outer(t, self._freq) + self.amap.phases
        out = np.empty(t.shape + (2,))
        out[..., 0] = np.sqrt(2.0) * (np.cos(angles) @ self._w)
        out[..., 1] = np.sqrt(2.0) * (np.sin(angles) @ self._w)
        return out

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        angles = np.multiply.outer(t, self._freq) + self.amap.phases
        wf = self._w * self._freq
        out = np.empty(t.shape + (2,))
        out[..., 0] = -np.sqrt(2.0) * (np.sin(angles) @ wf)
        out[..., 1] = np.sqrt(2.0) * (np.cos(angles) @ wf)
        return out


def default_samples(d: int) -> int:
    return max(1024, 4 * d + 2)


def evaluate_curve(amap: AndrewsMap, x, samples: int) -> PlaneCurveSamples:
    """Sample Phi(t) x and its analytic derivative on the uniform grid i/M."""
    if samples < 4 * amap.dim + 2:
        raise ValueError(
            f"samples={samples} below the 4d+2 = {4 * amap.dim + 2} quadrature minimum"
        )
    curve = CurveMap(amap, x)
    grid = np.arange(samples) / samples
    return PlaneCurveSamples(
        grid=grid,
        points=curve(grid),
        derivative_points=curve.derivative(grid),
        source_norm=curve.source_norm,
    )


def mqv_closed_form(sigma) -> float:
    """Optimal quadratic-variation total for singular values ``sigma``:
    2 * sum_s (sigma_s^2 - sigma_{s+1}^2) * sum_{k<=s} k^2 + 2 sigma_d^2 sum k^2."""
    sigma = np.asarray(sigma, dtype=float)
    if np.any(np.diff(sigma) > 0):
        raise ValueError("sigma must be non-increasing")
    d = sigma.size
    ksq_prefix = np.cumsum(np.arange(1, d + 1) ** 2, dtype=float)
    total = 2.0 * sigma[-1] ** 2 * ksq_prefix[-1]
    if d > 1:
        total += 2.0 * np.sum((sigma[:-1] ** 2 - sigma[1:] ** 2) * ksq_prefix[:-1])
    return float(total)


def mqv_of_map(amap: AndrewsMap, ds: Dataset) -> float:
    """Dataset quadratic-variation total of the map, summed exactly in the
    Fourier domain: each coordinate slice carries a single harmonic, so
    QV(Phi[x]) = sum_k 2 h_k^2 w_k^2 with w = u_transpose @ x."""
    if ds.dim != amap.dim:
        raise ValueError(f"dataset dimension {ds.dim} != map dimension {amap.dim}")
    w = amap.u_transpose @ ds.values
    return float(2.0 * np.sum(amap.harmonics.astype(float) ** 2 * (w**2).sum(axis=1)))


def gram_deviation(amap: AndrewsMap, samples: int) -> float:
    """Worst grid-quadrature defect of the entry functions of Phi: max of
    |<phi_a, phi_b> - delta_ab| over all pairs and |mean(phi_a)| over all
    entries.  Exact (to roundoff) for samples >= 4d+2."""
    if samples < 4 * amap.dim + 2:
        raise ValueError(
            f"samples={samples} below the 4d+2 = {4 * amap.dim + 2} quadrature minimum"
        )
    grid = np.arange(samples) / samples
    b = time_slices(amap, grid).transpose(1, 2, 0).reshape(2 * amap.dim, samples)
    return gram_deviation_from_samples(b)


def gram_deviation_from_samples(b: np.ndarray) -> float:
    """Same defect computed from an explicit (functions x grid) sample matrix."""
    m = b.shape[1]
    gram = (b @ b.T) / m
    dev = float(np.max(np.abs(gram - np.eye(b.shape[0]))))
    mean_dev = float(np.max(np.abs(b.mean(axis=1))))
    return max(dev, mean_dev)


def time_slice_singular_values(amap: AndrewsMap, t):
    """Singular values (s_max, s_min) of sqrt(1/d) Phi(t), from the
    closed-form eigenvalues of the 2x2 Gram matrix Phi Phi^T / d.

    Accepts a scalar or array of times; returns floats or arrays accordingly.
    """
    tarr = np.atleast_1d(np.asarray(t, dtype=float))
    slices = time_slices(amap, tarr)
    gram = np.einsum("tij,tkj->tik", slices, slices) / amap.dim
    a, b, c = gram[:, 0, 0], gram[:, 0, 1], gram[:, 1, 1]
    half_trace = 0.5 * (a + c)
    disc = np.sqrt(np.maximum(0.25 * (a - c) ** 2 + b**2, 0.0))
    s_max = np.sqrt(np.maximum(half_trace + disc, 0.0))
    s_min = np.sqrt(np.maximum(half_trace - disc, 0.0))
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(s_max[0]), float(s_min[0])
    return s_max, s_min


def slice_interval_epsilon(d: int) -> float:
    """Width 4/sqrt(d) + 3/(2d) + 1/d^2 of the guaranteed singular-value
    interval for the quadratic-phase map; vacuous (>= 1) for d <= 24."""
    if d < 1:
        raise ValueError("d must be positive")
    return 4.0 / np.sqrt(d) + 1.5 / d + 1.0 / d**2
