"""SVD of the data matrix with a deterministic sign convention and the
partition of equal singular values."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import Dataset

DEFAULT_TIE_TOL = 1e-9


@dataclass(frozen=True)
class SvdFactors:
    """X = u @ diag(sigma) @ v.T with sigma non-increasing.

    ``tie_partition`` lists 1-based inclusive ranges [lo, hi] covering 1..d;
    singular values inside a range are equal under the tie tolerance.
    """

    u: np.ndarray  # d x d orthogonal
    sigma: np.ndarray  # length d, non-increasing
    v: np.ndarray  # N x d, orthonormal columns
    tie_partition: list[tuple[int, int]]

    @property
    def dim(self) -> int:
        return self.u.shape[0]


def group_ties(sigma, rel_tol: float = DEFAULT_TIE_TOL) -> list[tuple[int, int]]:
    """Maximal runs of a non-increasing vector whose consecutive gaps are
    at most rel_tol * max(sigma[0], 1); chaining is transitive within a run."""
    sigma = np.asarray(sigma, dtype=float)
    if rel_tol < 0:
        raise ValueError("rel_tol must be nonnegative")
    if sigma.size == 0:
        return []
    if np.any(np.diff(sigma) > 0):
        raise ValueError("sigma must be non-increasing")
    tol = rel_tol * max(float(sigma[0]), 1.0)
    partition = []
    lo = 1
    for k in range(1, sigma.size):
        if sigma[k - 1] - sigma[k] > tol:
            partition.append((lo, k))
            lo = k + 1
    partition.append((lo, int(sigma.size)))
    return partition


def svd(ds: Dataset | np.ndarray, tie_tol: float = DEFAULT_TIE_TOL) -> SvdFactors:
    """Full SVD of the d x N data matrix, requiring d <= N.

    Sign convention: the largest-magnitude entry of each column of u is
    positive (first such row on ties), making results reproducible.
    """
    x = ds.values if isinstance(ds, Dataset) else np.asarray(ds, dtype=float)
    if x.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {x.shape}")
    d, n = x.shape
    if d > n:
        raise ValueError(f"need d <= N, got d={d}, N={n}")
    if not np.all(np.isfinite(x)):
        raise ValueError("matrix contains non-finite entries")

    u, sigma, vt = np.linalg.svd(x, full_matrices=False)
    # u is d x d because d <= N; flip signs column-by-column.
    flip = np.sign(u[np.argmax(np.abs(u), axis=0), np.arange(d)])
    flip[flip == 0] = 1.0
    u = u * flip
    v = vt.T * flip
    return SvdFactors(u=u, sigma=sigma, v=v, tie_partition=group_ties(sigma, tie_tol))
