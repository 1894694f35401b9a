"""Unit and property tests for rays, projectors, and the eigensolver."""

import math

import numpy as np
import pytest

from kshg import (
    Hermitian3,
    Ray,
    ValidationError,
    eigensystem,
    overlap,
    projector,
    projector_sum,
    tetrahedron_rays,
)

RT3 = 1.0 / math.sqrt(3.0)


def random_ray(rng: np.random.RandomState) -> Ray:
    vec = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    return Ray.normalized(vec)


def random_hermitian(rng: np.random.RandomState) -> Hermitian3:
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    return Hermitian3(a + a.conj().T)


class TestRay:
    def test_accepts_unit_vectors(self):
        r = Ray((1, 0, 0))
        assert np.allclose(r.amplitudes, [1, 0, 0])

    def test_renormalizes_small_deviation(self):
        r = Ray((1 + 5e-7, 0, 0))
        assert abs(np.linalg.norm(r.amplitudes) - 1.0) < 1e-15

    def test_rejects_large_deviation(self):
        with pytest.raises(ValidationError):
            Ray((2, 0, 0))

    def test_normalized_accepts_any_scale(self):
        r = Ray.normalized((2, 0, 0))
        assert np.allclose(r.amplitudes, [1, 0, 0])

    def test_normalized_rejects_zero(self):
        with pytest.raises(ValidationError):
            Ray.normalized((0, 0, 0))

    def test_rejects_wrong_arity(self):
        with pytest.raises(ValidationError):
            Ray((1, 0))

    def test_amplitudes_read_only(self):
        r = Ray((1, 0, 0))
        with pytest.raises(ValueError):
            r.amplitudes[0] = 0.0


class TestOverlap:
    def test_identical_rays(self):
        r = Ray((1, 0, 0))
        assert overlap(r, r) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_basis_vectors(self):
        assert overlap(Ray((1, 0, 0)), Ray((0, 1, 0))) == 0.0

    def test_tetrahedron_pair(self):
        a = Ray((RT3, RT3, RT3))
        b = Ray((RT3, -RT3, -RT3))
        # direct inner-product arithmetic: |1 - 1 - 1| / 3
        assert overlap(a, b) == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_symmetry_and_phase_invariance(self):
        rng = np.random.RandomState(11)
        for _ in range(200):
            a, b = random_ray(rng), random_ray(rng)
            base = overlap(a, b)
            assert overlap(b, a) == pytest.approx(base, abs=1e-12)
            pa = Ray(np.exp(1j * rng.uniform(0, 2 * np.pi)) * a.amplitudes)
            pb = Ray(np.exp(1j * rng.uniform(0, 2 * np.pi)) * b.amplitudes)
            assert overlap(pa, pb) == pytest.approx(base, abs=1e-12)


class TestProjector:
    def test_basis_vector(self):
        p = projector(Ray((1, 0, 0)))
        assert np.allclose(p.matrix, np.diag([1, 0, 0]), atol=1e-15)
        p = projector(Ray((0, 0, 1)))
        assert np.allclose(p.matrix, np.diag([0, 0, 1]), atol=1e-15)

    def test_uniform_ray(self):
        p = projector(Ray((RT3, RT3, RT3)))
        assert np.max(np.abs(p.matrix - np.full((3, 3), 1.0 / 3.0))) < 1e-12

    def test_idempotent_trace_one(self):
        rng = np.random.RandomState(5)
        for _ in range(1000):
            p = projector(random_ray(rng)).matrix
            assert np.max(np.abs(p @ p - p)) < 1e-12
            assert abs(np.trace(p).real - 1.0) < 1e-12


class TestProjectorSum:
    def test_tetrahedron_identity(self):
        total = projector_sum(tetrahedron_rays())
        assert np.max(np.abs(total.matrix - (4.0 / 3.0) * np.eye(3))) < 1e-12

    def test_single_ray(self):
        total = projector_sum([Ray((1, 0, 0))])
        assert np.allclose(total.matrix, np.diag([1, 0, 0]), atol=1e-15)

    def test_standard_basis_completeness(self):
        basis = [Ray((1, 0, 0)), Ray((0, 1, 0)), Ray((0, 0, 1))]
        assert np.max(np.abs(projector_sum(basis).matrix - np.eye(3))) < 1e-10

    def test_random_complete_bases(self):
        rng = np.random.RandomState(17)
        for _ in range(100):
            q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
            rays = [Ray(q[:, k]) for k in range(3)]
            assert np.max(np.abs(projector_sum(rays).matrix - np.eye(3))) < 1e-10

    def test_trace_counts_rays(self):
        rng = np.random.RandomState(23)
        rays = [random_ray(rng) for _ in range(7)]
        assert projector_sum(rays).trace() == pytest.approx(7.0, abs=1e-10)

    def test_empty_list_rejected(self):
        with pytest.raises(ValidationError, match="no vertices"):
            projector_sum([])


class TestHermitian3:
    def test_rejects_non_hermitian(self):
        m = np.eye(3, dtype=complex)
        m[0, 1] = 1e-6
        with pytest.raises(ValidationError):
            Hermitian3(m)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValidationError):
            Hermitian3(np.eye(2))


class TestEigensystem:
    def test_diagonal(self):
        eig = eigensystem(Hermitian3(np.diag([3.0, 1.0, 2.0])))
        assert eig.eigenvalues == pytest.approx((1.0, 2.0, 3.0), abs=1e-14)

    def test_scaled_identity(self):
        eig = eigensystem(Hermitian3((4.0 / 3.0) * np.eye(3)))
        assert eig.eigenvalues == pytest.approx((4 / 3, 4 / 3, 4 / 3), abs=1e-14)

    def test_projector_spectrum(self):
        rng = np.random.RandomState(2)
        for _ in range(50):
            eig = eigensystem(projector(random_ray(rng)))
            assert eig.eigenvalues == pytest.approx((0.0, 0.0, 1.0), abs=1e-12)

    def test_residuals_and_trace(self):
        rng = np.random.RandomState(31)
        for _ in range(1000):
            m = random_hermitian(rng)
            eig = eigensystem(m)
            for lam, vec in zip(eig.eigenvalues, eig.eigenvectors):
                residual = np.linalg.norm(m.matrix @ vec.amplitudes - lam * vec.amplitudes)
                assert residual <= 1e-12
            assert sum(eig.eigenvalues) == pytest.approx(m.trace(), abs=1e-10)

    def test_eigenvector_orthogonality(self):
        rng = np.random.RandomState(37)
        for _ in range(200):
            eig = eigensystem(random_hermitian(rng))
            vs = eig.eigenvectors
            for a in range(3):
                for b in range(a + 1, 3):
                    assert overlap(vs[a], vs[b]) < 1e-10

    def test_eigenvalues_sorted(self):
        rng = np.random.RandomState(41)
        for _ in range(200):
            eig = eigensystem(random_hermitian(rng))
            assert eig.eigenvalues[0] <= eig.eigenvalues[1] <= eig.eigenvalues[2]
