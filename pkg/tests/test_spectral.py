import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filaments.ingest import Dataset
from filaments.spectral import group_ties, svd


class TestGroupTies:
    def test_exact_tie(self):
        assert group_ties([5.0, 5.0, 2.0]) == [(1, 2), (3, 3)]

    def test_all_distinct(self):
        assert group_ties([3.0, 2.0, 1.0]) == [(1, 1), (2, 2), (3, 3)]

    def test_tolerance_boundary(self):
        # gap 5e-10 <= 1e-9 * max(sigma_1, 1) chains the first two together
        assert group_ties([1.0 + 5e-10, 1.0, 0.5], rel_tol=1e-9) == [(1, 2), (3, 3)]

    def test_empty(self):
        assert group_ties([]) == []

    def test_transitive_chaining(self):
        # consecutive gaps each below tolerance chain even though the ends differ
        sigma = [1.0, 1.0 - 5e-10, 1.0 - 1e-9]
        assert group_ties(sigma, rel_tol=1e-9) == [(1, 3)]

    def test_rejects_increasing(self):
        with pytest.raises(ValueError, match="non-increasing"):
            group_ties([1.0, 2.0])


class TestSvd:
    def test_identity_matrix(self):
        factors = svd(np.eye(3))
        np.testing.assert_allclose(factors.sigma, [1.0, 1.0, 1.0], atol=1e-14)
        assert factors.tie_partition == [(1, 3)]

    def test_diagonal_matrix(self):
        factors = svd(np.diag([3.0, 2.0, 1.0]))
        np.testing.assert_allclose(factors.sigma, [3.0, 2.0, 1.0], atol=1e-14)
        np.testing.assert_allclose(factors.u, np.eye(3), atol=1e-14)
        assert factors.tie_partition == [(1, 1), (2, 2), (3, 3)]

    def test_reconstruction_and_orthogonality(self, rng):
        x = rng.standard_normal((4, 50))
        factors = svd(x)
        recon = factors.u @ np.diag(factors.sigma) @ factors.v.T
        assert np.max(np.abs(x - recon)) < 1e-8 * (1 + np.max(np.abs(x)))
        assert np.max(np.abs(factors.u.T @ factors.u - np.eye(4))) < 1e-10
        assert np.max(np.abs(factors.v.T @ factors.v - np.eye(4))) < 1e-10

    def test_accepts_dataset(self, rng):
        ds = Dataset(values=rng.standard_normal((3, 10)))
        factors = svd(ds)
        assert factors.dim == 3

    def test_requires_wide_matrix(self, rng):
        with pytest.raises(ValueError, match="d <= N"):
            svd(rng.standard_normal((5, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="non-finite"):
            svd(np.array([[np.inf, 1.0]]))

    def test_sign_convention(self, rng):
        factors = svd(rng.standard_normal((4, 9)))
        largest = factors.u[np.argmax(np.abs(factors.u), axis=0), np.arange(4)]
        assert np.all(largest > 0)

    def test_deterministic(self, rng):
        x = rng.standard_normal((5, 12))
        a, b = svd(x.copy()), svd(x.copy())
        np.testing.assert_array_equal(a.u, b.u)
        np.testing.assert_array_equal(a.sigma, b.sigma)
        np.testing.assert_array_equal(a.v, b.v)

    def test_sigma_rotation_invariant(self, rng):
        x = rng.standard_normal((4, 20))
        w, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        np.testing.assert_allclose(svd(w @ x).sigma, svd(x).sigma, atol=1e-10)

    @given(
        st.integers(min_value=2, max_value=32),
        st.integers(min_value=0, max_value=2**31),
    )
    @settings(max_examples=40, deadline=None)
    def test_invariants_random(self, d, seed):
        gen = np.random.default_rng(seed)
        n = int(gen.integers(d, 201))
        x = gen.standard_normal((d, n))
        factors = svd(x)
        assert np.all(np.diff(factors.sigma) <= 0)
        assert np.max(np.abs(factors.u.T @ factors.u - np.eye(d))) < 1e-10
        recon = factors.u @ np.diag(factors.sigma) @ factors.v.T
        assert np.max(np.abs(x - recon)) < 1e-8 * (1 + np.max(np.abs(x)))
        # partition covers 1..d in order
        flat = [k for lo, hi in factors.tie_partition for k in range(lo, hi + 1)]
        assert flat == list(range(1, d + 1))
