"""Operational Gaussian discord and related measures for two-mode Gaussian states.

Units: vacuum covariance is the identity; quadratures are ordered
``(x_A, p_A, x_B, p_B)``.  Entropies and discords are in nats.
"""

from .discord import DiscordReport, classical_conditional_entropy, conditional_quantum_entropy, gqd, ogd, renyi2_discord
from .families import CCCA, Asymmetric, ClosedForm, FamilyDomainError, SymmetricT, closed_form_ogd, family_state, make_family
from .measurement import (
    JointMeasurement,
    LocalMeasurement,
    SingularityError,
    conditional_cov_joint,
    conditional_cov_local,
    conditional_entropy,
    conditional_state_cov,
    gaussian_entropy,
    joint_povm_cov,
    local_povm_cov,
    outcome_cov,
    schur_complement,
)
from .optimize import ConfigurationError, EvaluationError, OptResult, SearchSpace, grid_oracle, minimize
from .protocol import EncodedState, MutualInfoReport, encode, mutual_info_report, mutual_info_single_mode, ogd_convergence
from .symplectic import (
    StandardFormParams,
    SymmetryError,
    TwoModeCov,
    UnphysicalStateError,
    beamsplitter,
    is_entangled,
    partial_transpose,
    phase_rotation,
    physicality_check,
    random_physical_state,
    rotation,
    standard_form_reduce,
    symplectic_eigenvalues,
)

__version__ = "0.1.0"

__all__ = [
    "Asymmetric",
    "CCCA",
    "ClosedForm",
    "ConfigurationError",
    "DiscordReport",
    "EncodedState",
    "EvaluationError",
    "FamilyDomainError",
    "JointMeasurement",
    "LocalMeasurement",
    "MutualInfoReport",
    "OptResult",
    "SearchSpace",
    "SingularityError",
    "StandardFormParams",
    "SymmetricT",
    "SymmetryError",
    "TwoModeCov",
    "UnphysicalStateError",
    "beamsplitter",
    "classical_conditional_entropy",
    "closed_form_ogd",
    "conditional_cov_joint",
    "conditional_cov_local",
    "conditional_entropy",
    "conditional_quantum_entropy",
    "conditional_state_cov",
    "encode",
    "family_state",
    "gaussian_entropy",
    "gqd",
    "grid_oracle",
    "is_entangled",
    "joint_povm_cov",
    "local_povm_cov",
    "make_family",
    "minimize",
    "mutual_info_report",
    "mutual_info_single_mode",
    "ogd",
    "ogd_convergence",
    "outcome_cov",
    "partial_transpose",
    "phase_rotation",
    "physicality_check",
    "random_physical_state",
    "renyi2_discord",
    "rotation",
    "schur_complement",
    "standard_form_reduce",
    "symplectic_eigenvalues",
]
