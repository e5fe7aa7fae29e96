import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asymcorr.asymmetry import (
    asymmetry,
    bipartite_asymmetry,
    is_covariant_channel,
    is_symmetric_state,
    lifted_asymmetry,
    local_asymmetry,
    multipartite_asymmetry,
)
from asymcorr.channels import amplitude_damping, depolarizing, identity_channel
from asymcorr.correlation import ghz_state, product_state
from asymcorr.generators import gell_mann_basis, lift, rotate_basis
from asymcorr.linalg import (
    DensityMatrix,
    DimensionError,
    kron,
    partial_trace,
    random_density_matrix,
    random_haar_unitary,
    random_orthogonal,
)
from asymcorr.qfi import variance

from conftest import SX, SZ, bell_phi_plus


def pure_asymmetry_by_variance(rho, generators):
    return 0.25 * sum(variance(rho, t) for t in generators)


def test_maximally_mixed_zero():
    for d in (2, 3, 4):
        assert asymmetry(np.eye(d) / d, gell_mann_basis(d)).total == 0.0


def test_pure_qubit_half():
    rho = DensityMatrix(np.diag([1.0, 0.0]))
    basis = gell_mann_basis(2)
    expected = pure_asymmetry_by_variance(rho, basis)
    assert expected == pytest.approx(0.5)
    rep = asymmetry(rho, basis)
    assert rep.total == pytest.approx(0.5, abs=1e-12)
    assert rep.total == pytest.approx(0.25 * rep.per_generator.sum(), abs=1e-12)


def test_any_pure_qubit_half(rng):
    for _ in range(20):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        rho = DensityMatrix.from_pure(v / np.linalg.norm(v))
        assert asymmetry(rho, gell_mann_basis(2)).total == pytest.approx(0.5, abs=1e-12)


def test_accepts_plain_generator_list():
    rho = DensityMatrix(np.diag([1.0, 0.0]))
    assert asymmetry(rho, [SX]).total == pytest.approx(0.25)


def test_rotated_basis_same_total(rng):
    for d in (2, 3):
        rho = random_density_matrix(d, rng)
        basis = gell_mann_basis(d)
        rotated = rotate_basis(basis, random_orthogonal(d * d, rng))
        assert asymmetry(rho, rotated).total == pytest.approx(asymmetry(rho, basis).total, abs=1e-9)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        asymmetry(np.eye(2) / 2, gell_mann_basis(3))


# ---------------------------------------------------------------- bipartite


def test_bipartite_maximally_mixed():
    assert bipartite_asymmetry(DensityMatrix.maximally_mixed((2, 2))).total == 0.0


def test_bipartite_bell():
    bell = bell_phi_plus()
    gens = lift(gell_mann_basis(2), 0, (2, 2)) + lift(gell_mann_basis(2), 1, (2, 2))
    expected = pure_asymmetry_by_variance(bell, gens)
    assert expected == pytest.approx(1.5)
    assert bipartite_asymmetry(bell).total == pytest.approx(1.5, abs=1e-12)


def test_bipartite_product_is_additive(rng):
    for dims in [(2, 2), (2, 3), (3, 3)]:
        ra, rb = random_density_matrix(dims[0], rng), random_density_matrix(dims[1], rng)
        rho = product_state(ra, rb)
        expected = asymmetry(ra, gell_mann_basis(dims[0])).total + asymmetry(rb, gell_mann_basis(dims[1])).total
        assert bipartite_asymmetry(rho).total == pytest.approx(expected, abs=1e-9)


def test_dims_argument_repartitions():
    rho = DensityMatrix(np.eye(4) / 4)
    assert bipartite_asymmetry(rho, (2, 2)).total == 0.0
    with pytest.raises(DimensionError):
        bipartite_asymmetry(rho)


def test_local_bell_marginal_zero():
    assert local_asymmetry(bell_phi_plus(), side="a").total == pytest.approx(0.0, abs=1e-15)


def test_local_pure_product():
    rho = DensityMatrix(np.diag([1.0, 0, 0, 0]), (2, 2))
    assert local_asymmetry(rho, side="a").total == pytest.approx(0.5)
    assert local_asymmetry(rho, side="b").total == pytest.approx(0.5)


def test_local_is_definitional_composition(rng):
    rho = random_density_matrix((2, 3), rng)
    direct = asymmetry(partial_trace(rho, [1]), gell_mann_basis(3))
    assert local_asymmetry(rho, side="b").total == direct.total


def test_lifted_classically_correlated():
    cc = DensityMatrix(np.diag([0.5, 0, 0, 0.5]), (2, 2))
    rep = lifted_asymmetry(cc, side="a")
    np.testing.assert_allclose(rep.per_generator, [1, 1, 0, 0], atol=1e-12)
    assert rep.total == pytest.approx(0.5)


def test_lifted_product_equals_local(rng):
    rho = product_state(random_density_matrix(2, rng), random_density_matrix(3, rng))
    for side in ("a", "b"):
        assert lifted_asymmetry(rho, side=side).total == pytest.approx(local_asymmetry(rho, side=side).total, abs=1e-9)


def test_lifted_bell_three_quarters():
    for side in ("a", "b"):
        assert lifted_asymmetry(bell_phi_plus(), side=side).total == pytest.approx(0.75)


def test_bad_side():
    with pytest.raises(DimensionError):
        lifted_asymmetry(bell_phi_plus(), side="c")


# ---------------------------------------------------------------- multipartite


def test_multipartite_maximally_mixed():
    assert multipartite_asymmetry(DensityMatrix.maximally_mixed((2, 2, 2))).total == 0.0


def test_multipartite_ghz():
    ghz = ghz_state(3)
    gens = []
    for slot in range(3):
        gens += lift(gell_mann_basis(2), slot, (2, 2, 2))
    assert pure_asymmetry_by_variance(ghz, gens) == pytest.approx(2.25)
    assert multipartite_asymmetry(ghz).total == pytest.approx(2.25, abs=1e-12)


def test_multipartite_reduces_to_bipartite(rng):
    rho = random_density_matrix((2, 3), rng)
    assert multipartite_asymmetry(rho).total == bipartite_asymmetry(rho).total


# ---------------------------------------------------------------- free states and operations


def test_symmetric_state_detection():
    assert is_symmetric_state(np.eye(3) / 3, gell_mann_basis(3))[0]
    ok, worst = is_symmetric_state(np.diag([1.0, 0.0]), gell_mann_basis(2))
    assert not ok and worst > 1
    assert is_symmetric_state(np.diag([0.3, 0.7]), [SZ])[0]


def test_symmetric_iff_zero_asymmetry(rng):
    for d in (2, 3):
        basis = gell_mann_basis(d)
        for rho in (np.eye(d) / d, random_density_matrix(d, rng)):
            ok, _ = is_symmetric_state(rho, basis, tol=1e-8)
            assert ok == (asymmetry(rho, basis).total <= 1e-10)


def test_covariant_depolarizing():
    ok, dev = is_covariant_channel(depolarizing(0.4), gell_mann_basis(2), rng=np.random.default_rng(3))
    assert ok and dev <= 1e-12


def test_covariant_identity():
    assert is_covariant_channel(identity_channel(2), gell_mann_basis(2))[0]


def test_amplitude_damping_not_covariant():
    ok, dev = is_covariant_channel(amplitude_damping(0.5), [SX], rng=np.random.default_rng(3))
    assert not ok
    assert dev > 1e-3


# ---------------------------------------------------------------- invariants


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 4))
def test_unitary_invariance_full_basis(seed, d):
    rng = np.random.default_rng(seed)
    rho = random_density_matrix(d, rng, rank=int(rng.integers(1, d + 1)))
    u = random_haar_unitary(d, rng)
    rotated = DensityMatrix(u @ rho.matrix @ u.conj().T)
    basis = gell_mann_basis(d)
    assert abs(asymmetry(rotated, basis).total - asymmetry(rho, basis).total) <= 1e-9


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_bipartite_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    rho = random_density_matrix((2, 3), rng, rank=int(rng.integers(1, 7)))
    u = kron(random_haar_unitary(2, rng), random_haar_unitary(3, rng))
    rotated = DensityMatrix(u @ rho.matrix @ u.conj().T, (2, 3))
    assert abs(bipartite_asymmetry(rotated).total - bipartite_asymmetry(rho).total) <= 1e-9


def test_convexity(rng):
    for _ in range(30):
        states = [random_density_matrix((2, 2), rng, rank=int(rng.integers(1, 5))) for _ in range(3)]
        w = rng.dirichlet(np.ones(3))
        mix = DensityMatrix(sum(wi * s.matrix for wi, s in zip(w, states)), (2, 2))
        bound = sum(wi * bipartite_asymmetry(s).total for wi, s in zip(w, states))
        assert bipartite_asymmetry(mix).total <= bound + 1e-9


def test_superadditivity(rng):
    for dims in [(2, 2), (2, 3), (3, 3)]:
        for _ in range(20):
            rho = random_density_matrix(dims, rng, rank=int(rng.integers(1, 5)))
            local = local_asymmetry(rho, side=0).total + local_asymmetry(rho, side=1).total
            assert bipartite_asymmetry(rho).total >= local - 1e-9
