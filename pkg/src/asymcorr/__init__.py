"""Quantum Fisher information, QFI-based asymmetry, and the correlations it induces."""

from .asymmetry import (
    AsymmetryReport,
    asymmetry,
    bipartite_asymmetry,
    is_covariant_channel,
    is_symmetric_state,
    lifted_asymmetry,
    local_asymmetry,
    multipartite_asymmetry,
)
from .channels import (
    KrausChannel,
    amplitude_damping,
    apply,
    apply_local,
    depolarizing,
    monotonicity_trial,
    phase_damping,
    random_channel,
    unitary_channel,
)
from .correlation import (
    BellDiagonalParams,
    CorrelationReport,
    SchmidtData,
    bell_diagonal_q,
    bell_diagonal_state,
    concurrence_pure,
    multipartite_q,
    pure_q_bound,
    pure_state_q,
    q_measure,
    q_pure_from_vector,
)
from .generators import GeneratorBasis, gell_mann_basis, lift, rotate_basis
from .linalg import (
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
from .qfi import QfiResult, qfi, qfi_batch, sld, variance

__version__ = "0.1.0"
