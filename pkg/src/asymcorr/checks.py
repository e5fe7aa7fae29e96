"""Randomised invariant suites for every module, plus the discrepancy report.

Each check reports the largest deviation seen over its trials; a check
passes when that deviation is within tolerance. Inequalities ``a <= b`` are
scored as ``max(0, a - b)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .asymmetry import (
    asymmetry,
    bipartite_asymmetry,
    is_symmetric_state,
    local_asymmetry,
)
from . import channels as ch
from . import correlation as cor
from .generators import gell_mann_basis, rotate_basis
from .linalg import (
    DensityMatrix,
    embed,
    hermitian_eig,
    kron,
    partial_trace,
    random_density_matrix,
    random_haar_unitary,
    random_orthogonal,
    random_pure_state,
    svd_coefficients,
    trace_distance,
    unitary_from_hermitian,
)
from .qfi import qfi, sld_qfi, variance

DIMS = [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)]


@dataclass
class CheckResult:
    name: str
    suite: str
    max_deviation: float
    tolerance: float
    trials: int

    @property
    def passed(self) -> bool:
        return bool(self.max_deviation <= self.tolerance)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


@dataclass
class Discrepancy:
    name: str
    computed: float
    claimed: float
    detail: str

    def as_dict(self) -> dict:
        return asdict(self)


def _dims(rng) -> tuple[int, int]:
    return DIMS[int(rng.integers(len(DIMS)))]


def _rand_state(rng, dims, mixed_only=False) -> DensityMatrix:
    n = int(np.prod(dims))
    rank = n if mixed_only else int(rng.integers(1, n + 1))
    return random_density_matrix(dims, rng, rank=rank)


def _rand_hermitian(rng, d) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def _conj(rho: DensityMatrix, u) -> DensityMatrix:
    return DensityMatrix(u @ rho.matrix @ u.conj().T, rho.dims)


def _mixture(rng, states) -> tuple[DensityMatrix, np.ndarray]:
    w = rng.dirichlet(np.ones(len(states)))
    m = sum(wi * s.matrix for wi, s in zip(w, states))
    return DensityMatrix(m, states[0].dims), w


def _run(name, suite, tol, trials, rng, fn: Callable) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        worst = max(worst, float(fn(rng)))
    return CheckResult(name, suite, worst, tol, trials)


# ---------------------------------------------------------------- linalg


def linalg_suite(trials: int, rng) -> list[CheckResult]:
    def eig_recon(rng):
        d = int(rng.integers(1, 17))
        h = _rand_hermitian(rng, d)
        e = hermitian_eig(h)
        unit = np.max(np.abs(e.vectors.conj().T @ e.vectors - np.eye(d)))
        return max(np.max(np.abs(e.reconstruct() - h)) / max(1.0, np.linalg.norm(h, 2)), unit)

    def nested_trace(rng):
        rho = random_density_matrix((2, 3, 2), rng)
        one = partial_trace(rho, [1])
        return abs(np.trace(one.matrix) - 1)

    def svd_invariance(rng):
        da, db = _dims(rng)
        psi = random_pure_state((da, db), rng)
        u, v = random_haar_unitary(da, rng), random_haar_unitary(db, rng)
        return np.max(np.abs(svd_coefficients(kron(u, v) @ psi, (da, db)) - svd_coefficients(psi, (da, db))))

    return [
        _run("hermitian_eig reconstruction", "linalg", 1e-9, trials, rng, eig_recon),
        _run("nested partial trace keeps unit trace", "linalg", 1e-12, trials, rng, nested_trace),
        _run("Schmidt values invariant under U x V", "linalg", 1e-9, trials, rng, svd_invariance),
    ]


# ---------------------------------------------------------------- generators


def generators_suite(trials: int, rng) -> list[CheckResult]:
    def gram(rng):
        d = int(rng.integers(1, 6))
        return np.max(np.abs(gell_mann_basis(d).gram() - 2 * np.eye(d * d)))

    def completeness(rng):
        d = int(rng.integers(1, 6))
        m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        basis = gell_mann_basis(d)
        s = sum(t @ m @ t for t in basis)
        return np.max(np.abs(s - 2 * np.trace(m) * np.eye(d)))

    def casimir(rng):
        d = int(rng.integers(1, 6))
        s = sum(t @ t for t in gell_mann_basis(d))
        return np.max(np.abs(s - 2 * d * np.eye(d)))

    def rotated_gram(rng):
        d = int(rng.integers(2, 5))
        rb = rotate_basis(gell_mann_basis(d), random_orthogonal(d * d, rng))
        return np.max(np.abs(rb.gram() - 2 * np.eye(d * d)))

    return [
        _run("Gram matrix = 2 I", "generators", 1e-12, trials, rng, gram),
        _run("sum T M T = 2 Tr(M) I", "generators", 1e-9, trials, rng, completeness),
        _run("sum T^2 = 2 d I", "generators", 1e-10, trials, rng, casimir),
        _run("rotated basis stays orthogonal", "generators", 1e-9, trials, rng, rotated_gram),
    ]


# ---------------------------------------------------------------- qfi


def qfi_suite(trials: int, rng) -> list[CheckResult]:
    def nonneg(rng):
        d = int(rng.integers(2, 7))
        rho = random_density_matrix(d, rng, rank=int(rng.integers(1, d + 1)))
        return max(0.0, -qfi(rho, _rand_hermitian(rng, d)).value)

    def pure_equals_variance(rng):
        d = int(rng.integers(2, 7))
        rho = DensityMatrix.from_pure(random_pure_state(d, rng))
        k = _rand_hermitian(rng, d)
        return abs(qfi(rho, k).value - variance(rho, k))

    def mixed_below_variance(rng):
        d = int(rng.integers(2, 7))
        rho = random_density_matrix(d, rng)
        k = _rand_hermitian(rng, d)
        return max(0.0, qfi(rho, k).value - variance(rho, k))

    def sld_identity(rng):
        d = int(rng.integers(2, 7))
        rho = random_density_matrix(d, rng, rank=int(rng.integers(1, d + 1)))
        k = _rand_hermitian(rng, d)
        return abs(sld_qfi(rho, k) - qfi(rho, k).value)

    def commuting_unitary(rng):
        d = int(rng.integers(2, 7))
        rho = random_density_matrix(d, rng)
        k = _rand_hermitian(rng, d)
        u = unitary_from_hermitian(k, float(rng.uniform(0, 2 * np.pi)))
        return abs(qfi(_conj(rho, u), k).value - qfi(rho, k).value)

    def convexity(rng):
        d = int(rng.integers(2, 6))
        states = [random_density_matrix(d, rng, rank=int(rng.integers(1, d + 1))) for _ in range(3)]
        mix, w = _mixture(rng, states)
        k = _rand_hermitian(rng, d)
        return max(0.0, qfi(mix, k).value - sum(wi * qfi(s, k).value for wi, s in zip(w, states)))

    def zero_iff_commuting(rng):
        d = int(rng.integers(2, 6))
        k = _rand_hermitian(rng, d)
        # a state built from K's eigenbasis commutes; a random one does not
        _, v = np.linalg.eigh(k)
        p = rng.dirichlet(np.ones(d))
        commuting = DensityMatrix((v * p) @ v.conj().T)
        generic = random_density_matrix(d, rng)
        bad = 0.0
        for rho in (commuting, generic):
            comm = np.linalg.norm(rho.matrix @ k - k @ rho.matrix)
            zero = qfi(rho, k).value <= 1e-10
            if zero != (comm <= 1e-8):
                bad = 1.0
        return bad

    def partial_trace_monotone(rng):
        dims = _dims(rng)
        rho = _rand_state(rng, dims)
        x = _rand_hermitian(rng, dims[0])
        return max(0.0, qfi(partial_trace(rho, [0]), x).value - qfi(rho, embed(x, 0, dims)).value)

    return [
        _run("QFI nonnegativity", "qfi", 0.0, trials, rng, nonneg),
        _run("pure-state QFI = variance", "qfi", 1e-9, trials, rng, pure_equals_variance),
        _run("mixed-state QFI <= variance", "qfi", 1e-9, trials, rng, mixed_below_variance),
        _run("SLD identity Tr(rho L^2)/4 = QFI", "qfi", 1e-9, trials, rng, sld_identity),
        _run("QFI invariant under commuting unitaries", "qfi", 1e-9, trials, rng, commuting_unitary),
        _run("QFI convexity", "qfi", 1e-9, trials, rng, convexity),
        _run("QFI zero iff commuting", "qfi", 0.0, trials, rng, zero_iff_commuting),
        _run("QFI of marginal <= QFI of lifted generator", "qfi", 1e-10, trials, rng, partial_trace_monotone),
    ]


# ---------------------------------------------------------------- asymmetry


def asymmetry_suite(trials: int, rng) -> list[CheckResult]:
    def zero_iff_symmetric(rng):
        d = int(rng.integers(2, 5))
        basis = gell_mann_basis(d)
        bad = 0.0
        for rho in (DensityMatrix.maximally_mixed((d,)), random_density_matrix(d, rng)):
            sym, _ = is_symmetric_state(rho, basis, tol=1e-8)
            if sym != (asymmetry(rho, basis).total <= 1e-10):
                bad = 1.0
        return bad

    def unitary_invariance(rng):
        d = int(rng.integers(2, 6))
        rho = random_density_matrix(d, rng, rank=int(rng.integers(1, d + 1)))
        basis = gell_mann_basis(d)
        u = random_haar_unitary(d, rng)
        return abs(asymmetry(_conj(rho, u), basis).total - asymmetry(rho, basis).total)

    def convexity(rng):
        dims = _dims(rng)
        states = [_rand_state(rng, dims) for _ in range(3)]
        mix, w = _mixture(rng, states)
        lhs = bipartite_asymmetry(mix).total
        return max(0.0, lhs - sum(wi * bipartite_asymmetry(s).total for wi, s in zip(w, states)))

    def maximally_mixed(rng):
        dims = _dims(rng)
        return bipartite_asymmetry(DensityMatrix.maximally_mixed(dims)).total

    def local_unitary(rng):
        dims = _dims(rng)
        rho = _rand_state(rng, dims)
        u = kron(random_haar_unitary(dims[0], rng), random_haar_unitary(dims[1], rng))
        return abs(bipartite_asymmetry(_conj(rho, u)).total - bipartite_asymmetry(rho).total)

    def superadditive(rng):
        dims = _dims(rng)
        rho = _rand_state(rng, dims)
        gap = bipartite_asymmetry(rho).total - local_asymmetry(rho, side=0).total - local_asymmetry(rho, side=1).total
        return max(0.0, -gap)

    def product_equality(rng):
        dims = _dims(rng)
        rho = cor.product_state(random_density_matrix(dims[0], rng), random_density_matrix(dims[1], rng))
        gap = bipartite_asymmetry(rho).total - local_asymmetry(rho, side=0).total - local_asymmetry(rho, side=1).total
        return abs(gap)

    def basis_independence(rng):
        d = int(rng.integers(2, 5))
        rho = random_density_matrix(d, rng, rank=int(rng.integers(1, d + 1)))
        basis = gell_mann_basis(d)
        rotated = rotate_basis(basis, random_orthogonal(d * d, rng))
        return abs(asymmetry(rho, rotated).total - asymmetry(rho, basis).total)

    return [
        _run("zero asymmetry iff symmetric", "asymmetry", 0.0, trials, rng, zero_iff_symmetric),
        _run("asymmetry unitary invariance (full u(d))", "asymmetry", 1e-9, trials, rng, unitary_invariance),
        _run("bipartite asymmetry convexity", "asymmetry", 1e-9, trials, rng, convexity),
        _run("maximally mixed has zero asymmetry", "asymmetry", 1e-12, trials, rng, maximally_mixed),
        _run("asymmetry local unitary invariance", "asymmetry", 1e-9, trials, rng, local_unitary),
        _run("asymmetry superadditivity", "asymmetry", 1e-10, trials, rng, superadditive),
        _run("superadditivity tight on products", "asymmetry", 1e-9, trials, rng, product_equality),
        _run("asymmetry basis independence", "asymmetry", 1e-9, trials, rng, basis_independence),
    ]


# ---------------------------------------------------------------- correlation


def correlation_suite(trials: int, rng) -> list[CheckResult]:
    def nonneg(rng):
        return max(0.0, -cor.q_measure(_rand_state(rng, _dims(rng))).q_total)

    def products(rng):
        dims = _dims(rng)
        rho = cor.product_state(random_density_matrix(dims[0], rng), random_density_matrix(dims[1], rng))
        return abs(cor.q_measure(rho).q_total)

    def local_unitary(rng):
        dims = _dims(rng)
        rho = _rand_state(rng, dims)
        u = kron(random_haar_unitary(dims[0], rng), random_haar_unitary(dims[1], rng))
        return abs(cor.q_measure(_conj(rho, u)).q_total - cor.q_measure(rho).q_total)

    def product_form(rng):
        rho = _rand_state(rng, _dims(rng))
        return abs(cor.q_measure(rho).q_total - cor.q_product_form(rho))

    def pure_closed_form(rng):
        dims = _dims(rng)
        psi = random_pure_state(dims, rng)
        return abs(cor.q_pure_from_vector(psi, dims) - cor.q_measure(DensityMatrix.from_pure(psi, dims)).q_total)

    def concurrence(rng):
        psi = random_pure_state((2, 2), rng)
        lam = cor.SchmidtData.from_vector(psi, (2, 2))
        q = cor.q_measure(DensityMatrix.from_pure(psi, (2, 2))).q_total
        return abs(q - 1.5 * cor.concurrence_pure(lam) ** 2)

    def bell_closed_form(rng):
        params = random_bell_params(rng)
        return abs(cor.bell_diagonal_q(params) - cor.q_measure(cor.bell_diagonal_state(params)).q_total)

    def pure_bound(rng):
        d = int(rng.integers(2, 5))
        lam = rng.dirichlet(np.ones(d))
        return max(0.0, cor.pure_state_q(lam) - cor.pure_q_bound(d))

    def schur_concave(rng):
        d = int(rng.integers(2, 5))
        lam = rng.dirichlet(np.ones(d))
        # T-transform: lam majorizes mu
        i, j = rng.choice(d, size=2, replace=False)
        t = float(rng.uniform())
        mu = lam.copy()
        mu[i], mu[j] = t * lam[i] + (1 - t) * lam[j], t * lam[j] + (1 - t) * lam[i]
        return max(0.0, cor.pure_state_q(lam) - cor.pure_state_q(mu))

    return [
        _run("Q nonnegativity", "correlation", 1e-10, trials, rng, nonneg),
        _run("Q zero on products", "correlation", 1e-10, trials, rng, products),
        _run("Q local unitary invariance", "correlation", 1e-9, trials, rng, local_unitary),
        _run("Q equals global minus product-of-marginals asymmetry", "correlation", 1e-10, trials, rng, product_form),
        _run("pure-state closed form", "correlation", 1e-8, trials, rng, pure_closed_form),
        _run("Q = 3/2 C^2 for two-qubit pure states", "correlation", 1e-9, trials, rng, concurrence),
        _run("Bell-diagonal closed form", "correlation", 1e-8, trials, rng, bell_closed_form),
        _run("pure-state Q <= (d^2-1)/d", "correlation", 1e-9, trials, rng, pure_bound),
        _run("Schur concavity on pure states", "correlation", 1e-9, trials, rng, schur_concave),
    ]


def random_bell_params(rng) -> cor.BellDiagonalParams:
    """Uniform point of the Bell-diagonal simplex, returned as ``c`` coefficients."""
    b1, b2, b3, b4 = rng.dirichlet(np.ones(4))
    # invert the beta listing: c1 = (b2 + b3 - b1 - b4)/4, etc.
    c1 = (b2 + b3 - b1 - b4) / 4
    c2 = (b1 + b3 - b2 - b4) / 4
    c3 = (b1 + b2 - b3 - b4) / 4
    return cor.BellDiagonalParams((c1, c2, c3))


# ---------------------------------------------------------------- channels


def channels_suite(trials: int, rng) -> list[CheckResult]:
    def completeness(rng):
        d = int(rng.integers(2, 5))
        chan = ch.random_channel(d, rng)
        return ch.completeness_residual(chan.operators)

    def qfi_monotone(rng):
        dims = _dims(rng)
        rho = _rand_state(rng, dims)
        chan = ch.random_channel(dims[1], rng)
        t = gell_mann_basis(dims[0])[int(rng.integers(dims[0] ** 2))]
        return max(0.0, ch.monotonicity_trial(rho, dims, chan, "a", "qfi", t).violation)

    def q_side_monotone(rng):
        dims = _dims(rng)
        rho = _rand_state(rng, dims)
        side = "a" if rng.uniform() < 0.5 else "b"
        other = dims[1] if side == "a" else dims[0]
        chan = ch.random_channel(other, rng)
        return max(0.0, ch.monotonicity_trial(rho, dims, chan, side, "q_side").violation)

    return [
        _run("Kraus completeness", "channels", 1e-10, trials, rng, completeness),
        _run("QFI of T^a x I nonincreasing under channels on b", "channels", 1e-9, trials, rng, qfi_monotone),
        _run("one-sided Q nonincreasing under channels on the other side", "channels", 1e-9, trials, rng, q_side_monotone),
    ]


SUITES = {
    "linalg": linalg_suite,
    "generators": generators_suite,
    "qfi": qfi_suite,
    "asymmetry": asymmetry_suite,
    "correlation": correlation_suite,
    "channels": channels_suite,
}


def classically_correlated() -> DensityMatrix:
    return DensityMatrix(np.diag([0.5, 0, 0, 0.5]), (2, 2))


def discrepancies() -> list[Discrepancy]:
    """Three computed values that contradict commonly stated properties of the measure."""
    cc = classically_correlated()
    q_cc = cor.q_measure(cc).q_total
    p00 = DensityMatrix(np.diag([1.0, 0, 0, 0]), (2, 2))
    p11 = DensityMatrix(np.diag([0, 0, 0, 1.0]), (2, 2))
    mix_bound = 0.5 * cor.q_measure(p00).q_total + 0.5 * cor.q_measure(p11).q_total

    q_max = cor.pure_state_q((0.5, 0.5))

    bell = DensityMatrix.from_pure(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2))
    z = cor.PAULI["Z"]
    joint, marg = ch.collective_qfi(bell, (2, 2), z, z)

    return [
        Discrepancy(
            "convexity of Q",
            q_cc,
            mix_bound,
            "Q of (|00><00| + |11><11|)/2 exceeds the average Q of its two product components",
        ),
        Discrepancy(
            "pure-state maximum of Q at d=2",
            q_max,
            cor.printed_pure_q_bound(2),
            "maximally entangled two-qubit state gives (d^2-1)/d, not (d-1)/d",
        ),
        Discrepancy(
            "direction of QFI additivity",
            joint,
            marg,
            "Bell state: F(rho, Z x I + I x Z) exceeds F(rho_a, Z) + F(rho_b, Z)",
        ),
    ]


def run_suites(names=None, trials: int = 20, seed: int = 0) -> list[CheckResult]:
    names = list(SUITES) if names in (None, "all") else ([names] if isinstance(names, str) else list(names))
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []
    for name in names:
        results.extend(SUITES[name](trials, rng))
    return results


def maximally_mixed_converse(states, a_tol: float = 1e-10) -> float:
    """Largest trace distance to ``I/d`` among states whose asymmetry is at most ``a_tol``.

    Returns 0 when no state falls under ``a_tol``.
    """
    worst = 0.0
    for rho in states:
        if bipartite_asymmetry(rho).total <= a_tol:
            worst = max(worst, trace_distance(rho, DensityMatrix.maximally_mixed(rho.dims)))
    return worst

