import numpy as np
import pytest
from numpy.testing import assert_allclose

from asymcorr.linalg import (
    DensityMatrix,
    DimensionError,
    ValidationError,
    hermitian_eig,
    kron,
    partial_trace,
    random_density_matrix,
    random_haar_unitary,
    random_pure_state,
    svd_coefficients,
)

from conftest import I2, SX, bell_phi_plus, ket


def brute_partial_trace_b(m, da, db):
    """Keep factor a: out[i, j] = sum_k m[(i,k), (j,k)]."""
    out = np.zeros((da, da), dtype=complex)
    for i in range(da):
        for j in range(da):
            for k in range(db):
                out[i, j] += m[i * db + k, j * db + k]
    return out


def brute_partial_trace_a(m, da, db):
    out = np.zeros((db, db), dtype=complex)
    for i in range(db):
        for j in range(db):
            for k in range(da):
                out[i, j] += m[k * db + i, k * db + j]
    return out


# ---------------------------------------------------------------- DensityMatrix


def test_density_rejects_bad_trace():
    with pytest.raises(ValidationError, match="trace"):
        DensityMatrix(np.eye(2))


def test_density_rejects_negative_eigenvalue():
    with pytest.raises(ValidationError, match="eigenvalue"):
        DensityMatrix(np.diag([1.5, -0.5]))


def test_density_rejects_non_hermitian():
    with pytest.raises(ValidationError, match="Hermitian"):
        DensityMatrix(np.array([[0.5, 0.1], [0.0, 0.5]]))


def test_density_rejects_bad_dims():
    with pytest.raises(DimensionError):
        DensityMatrix(np.eye(4) / 4, (2, 3))


def test_density_rejects_nan():
    with pytest.raises(ValidationError):
        DensityMatrix(np.array([[np.nan, 0], [0, 1]]))


def test_density_is_immutable():
    rho = DensityMatrix(np.eye(2) / 2)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1


# ---------------------------------------------------------------- hermitian_eig


def test_eig_identity():
    e = hermitian_eig(np.eye(2))
    assert_allclose(e.values, [1, 1])
    assert_allclose(e.vectors.conj().T @ e.vectors, np.eye(2), atol=1e-12)


def test_eig_diagonal():
    assert_allclose(hermitian_eig(np.diag([0.25, 0.75])).values, [0.25, 0.75])


def test_eig_pauli_x():
    e = hermitian_eig(SX)
    assert_allclose(e.values, [-1, 1], atol=1e-14)
    # |-> then |+>, first component real positive
    assert_allclose(e.vectors, np.array([[1, 1], [-1, 1]]) / np.sqrt(2), atol=1e-14)


def test_eig_rejects_non_hermitian():
    with pytest.raises(ValidationError, match="max"):
        hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_eig_reconstruction_many(rng):
    worst = 0.0
    for _ in range(1000):
        d = int(rng.integers(1, 17))
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        h = (g + g.conj().T) / 2
        e = hermitian_eig(h)
        assert np.all(np.diff(e.values) >= 0)
        assert_allclose(e.vectors.conj().T @ e.vectors, np.eye(d), atol=1e-9)
        worst = max(worst, np.max(np.abs(e.reconstruct() - h)) / np.linalg.norm(h, 2))
    assert worst <= 1e-9


def test_eig_deterministic(rng):
    g = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    h = g + g.conj().T
    a, b = hermitian_eig(h), hermitian_eig(h.copy())
    assert np.array_equal(a.vectors, b.vectors)


# ---------------------------------------------------------------- kron


def test_kron_identity():
    assert_allclose(kron(I2, I2), np.eye(4))


def test_kron_diagonal():
    assert_allclose(kron(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 4, 6, 8]))


def test_kron_bit_flip():
    e0 = np.array([1, 0, 0, 0])
    assert_allclose(kron(SX, SX) @ e0, [0, 0, 0, 1])


def test_kron_associative_integer(rng):
    a, b, c = (rng.integers(-5, 5, size=(2, 3)) for _ in range(3))
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


def test_kron_overflow_guard():
    with pytest.raises(DimensionError):
        kron(np.eye(100), np.eye(100), np.eye(100))


# ---------------------------------------------------------------- partial_trace


def test_partial_trace_product(rng):
    ra = random_density_matrix(2, rng)
    rb = random_density_matrix(3, rng)
    rho = DensityMatrix(kron(ra.matrix, rb.matrix), (2, 3))
    assert_allclose(partial_trace(rho, [0]).matrix, ra.matrix, atol=1e-12)
    assert_allclose(partial_trace(rho, [1]).matrix, rb.matrix, atol=1e-12)


def test_partial_trace_bell_marginal():
    assert_allclose(partial_trace(bell_phi_plus(), [0]).matrix, np.eye(2) / 2, atol=1e-12)


@pytest.mark.parametrize("dims", [(2, 3), (3, 2), (4, 2)])
def test_partial_trace_against_index_sum(rng, dims):
    rho = random_density_matrix(dims, rng)
    da, db = dims
    assert_allclose(partial_trace(rho, [0]).matrix, brute_partial_trace_b(rho.matrix, da, db), atol=1e-12)
    assert_allclose(partial_trace(rho, [1]).matrix, brute_partial_trace_a(rho.matrix, da, db), atol=1e-12)


def test_partial_trace_three_factors(rng):
    rho = random_density_matrix((2, 3, 2), rng)
    ab = partial_trace(rho, [0, 1])
    assert ab.dims == (2, 3)
    # tracing the remaining factors step by step reaches the same marginal
    assert_allclose(partial_trace(ab, [0]).matrix, partial_trace(rho, [0]).matrix, atol=1e-12)
    assert abs(np.trace(partial_trace(partial_trace(rho, [1, 2]), [0]).matrix) - 1) <= 1e-12


def test_partial_trace_keeps_order(rng):
    rho = random_density_matrix((2, 3, 4), rng)
    assert partial_trace(rho, [2, 0]).dims == (2, 4)


@pytest.mark.parametrize("keep", [[], [2], [-1]])
def test_partial_trace_bad_index(keep):
    with pytest.raises(DimensionError):
        partial_trace(DensityMatrix.maximally_mixed((2, 2)), keep)


def test_partial_trace_needs_two_factors():
    with pytest.raises(DimensionError):
        partial_trace(DensityMatrix.maximally_mixed((4,)), [0])


# ---------------------------------------------------------------- svd_coefficients


def test_svd_product():
    assert_allclose(svd_coefficients(ket(1, 0, 0, 0), (2, 2)), [1, 0], atol=1e-15)


def test_svd_bell():
    assert_allclose(svd_coefficients(ket(1, 0, 0, 1), (2, 2)), [2**-0.5] * 2)


def test_svd_schmidt_form():
    psi = np.array([np.sqrt(0.75), 0, 0, np.sqrt(0.25)])
    assert_allclose(svd_coefficients(psi, (2, 2)), [np.sqrt(0.75), np.sqrt(0.25)])


def test_svd_rejects_unnormalised():
    with pytest.raises(ValidationError):
        svd_coefficients(np.array([1.0, 1.0, 0, 0]), (2, 2))


def test_svd_local_unitary_invariance(rng):
    for da, db in [(2, 2), (2, 3), (3, 4)]:
        psi = random_pure_state((da, db), rng)
        u = kron(random_haar_unitary(da, rng), random_haar_unitary(db, rng))
        s = svd_coefficients(psi, (da, db))
        assert_allclose(svd_coefficients(u @ psi, (da, db)), s, atol=1e-9)
        assert abs(np.sum(s**2) - 1) <= 1e-10


# ---------------------------------------------------------------- random sampling


def test_haar_d1(rng):
    u = random_haar_unitary(1, rng)
    assert abs(abs(u[0, 0]) - 1) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 5, 8])
def test_haar_unitary(rng, d):
    u = random_haar_unitary(d, rng)
    assert_allclose(u.conj().T @ u, np.eye(d), atol=1e-9)
    assert abs(abs(np.linalg.det(u)) - 1) < 1e-9
    assert_allclose(np.linalg.norm(u, axis=0), np.ones(d), atol=1e-9)


def test_random_density_rank_one(rng):
    rho = random_density_matrix((2, 3), rng, rank=1)
    assert abs(rho.purity() - 1) <= 1e-10


def test_random_density_full_rank(rng):
    rho = random_density_matrix(4, rng)
    assert np.linalg.eigvalsh(rho.matrix).min() > 0


def test_random_density_seed_replay():
    a = random_density_matrix((2, 3), np.random.default_rng(7))
    b = random_density_matrix((2, 3), np.random.default_rng(7))
    assert np.array_equal(a.matrix, b.matrix)


def test_random_density_bad_rank(rng):
    with pytest.raises(DimensionError):
        random_density_matrix(2, rng, rank=3)


def test_random_pure_state(rng):
    psi = random_pure_state((2, 3), rng)
    assert abs(np.linalg.norm(psi) - 1) <= 1e-12
    assert np.array_equal(random_pure_state(3, np.random.default_rng(1)), random_pure_state(3, np.random.default_rng(1)))
    assert abs(abs(random_pure_state(1, rng)[0]) - 1) <= 1e-12
