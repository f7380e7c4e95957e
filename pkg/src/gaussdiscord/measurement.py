"""Rank-one Gaussian measurements and the statistics of their outcomes.

A single-mode measurement is labelled by ``(theta, l)``: its POVM elements
are displaced squeezed vacua with covariance ``R(theta) diag(l, 1/l)
R(theta)^T``.  ``l = 1`` is heterodyne; ``l -> 0`` is homodyne of the
quadrature along ``theta`` (with ``theta = 0`` the ``x`` variance goes to
zero).  ``l = 0`` is accepted and evaluated as the exact limit by the
conditional-covariance functions.

Entropies are differential Shannon entropies in nats.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .symplectic import (
    TwoModeCov,
    beamsplitter,
    phase_rotation,
    rotation,
)

L_MIN = 1e-9
LN_2PIE = float(np.log(2 * np.pi * np.e))
COND_LIMIT = 1e14


class SingularityError(np.linalg.LinAlgError):
    pass


@dataclass(frozen=True)
class LocalMeasurement:
    theta: float
    l: float

    def __post_init__(self):
        if not 0.0 <= self.l <= 1.0:
            raise ValueError(f"squeezing parameter l must lie in [0, 1], got {self.l}")
        object.__setattr__(self, "theta", float(np.mod(self.theta, np.pi)))
        object.__setattr__(self, "l", float(self.l))

    @classmethod
    def heterodyne(cls) -> "LocalMeasurement":
        return cls(0.0, 1.0)

    @classmethod
    def homodyne(cls, theta: float = 0.0) -> "LocalMeasurement":
        return cls(theta, 0.0)


@dataclass(frozen=True)
class JointMeasurement:
    """Phase shifts, beamsplitter, then a local measurement on each output."""

    phi_a: float
    phi_b: float
    eta: float
    m_a: LocalMeasurement
    m_b: LocalMeasurement

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {self.eta}")

    @classmethod
    def from_local(cls, m_a: LocalMeasurement, m_b: LocalMeasurement) -> "JointMeasurement":
        return cls(0.0, 0.0, 1.0, m_a, m_b)

    @classmethod
    def from_vector(cls, x) -> "JointMeasurement":
        pa, pb, eta, ta, tb, la, lb = (float(v) for v in x)
        return cls(pa, pb, eta, LocalMeasurement(ta, la), LocalMeasurement(tb, lb))

    def as_vector(self) -> np.ndarray:
        return np.array(
            [self.phi_a, self.phi_b, self.eta, self.m_a.theta, self.m_b.theta, self.m_a.l, self.m_b.l]
        )


def local_pair_from_vector(x) -> tuple[LocalMeasurement, LocalMeasurement]:
    ta, tb, la, lb = (float(v) for v in x)
    return LocalMeasurement(ta, la), LocalMeasurement(tb, lb)


def local_povm_cov(m: LocalMeasurement) -> np.ndarray:
    """Covariance of the squeezed-vacuum seed state, determinant one."""
    if m.l == 0.0:
        raise ValueError("homodyne limit (l = 0) has an unbounded POVM covariance")
    r = rotation(m.theta)
    return r @ np.diag([m.l, 1.0 / m.l]) @ r.T


def joint_povm_cov(m: JointMeasurement) -> np.ndarray:
    """``R^T B^T (mu_A (+) mu_B) B R`` for the given joint measurement."""
    mu = np.zeros((4, 4))
    mu[:2, :2] = local_povm_cov(m.m_a)
    mu[2:, 2:] = local_povm_cov(m.m_b)
    s = beamsplitter(m.eta) @ phase_rotation(m.phi_a, m.phi_b)
    return s.T @ mu @ s


def outcome_cov(state: TwoModeCov, mu) -> TwoModeCov:
    """Covariance of the outcome distribution, ``sigma + mu``.

    ``mu = 0`` gives the Wigner function's covariance.
    """
    return TwoModeCov(state.matrix + np.asarray(mu, dtype=float))


def schur_complement(joint_cov) -> np.ndarray:
    """``A~ - C~ B~^-1 C~^T``: covariance of the A outcomes given the B outcomes.

    The 2x2 inverse is taken in closed form.
    """
    m = joint_cov.matrix if isinstance(joint_cov, TwoModeCov) else np.asarray(joint_cov, dtype=float)
    a, b, c = m[:2, :2], m[2:, 2:], m[:2, 2:]
    if np.linalg.cond(b) > COND_LIMIT:
        raise SingularityError("conditioning block is numerically singular")
    det_b = b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]
    b_inv = np.array([[b[1, 1], -b[0, 1]], [-b[1, 0], b[0, 0]]]) / det_b
    return a - c @ b_inv @ c.T


def _inverse_from_kernel(state: TwoModeCov, m: JointMeasurement) -> np.ndarray:
    p = _kernels.orthogonal_frame(m.phi_a, m.phi_b, m.eta, m.m_a.theta, m.m_b.theta)
    return _kernels.inverse_conditional(np.ascontiguousarray(state.matrix), p, m.m_a.l, m.m_b.l)


def conditional_cov_joint(state: TwoModeCov, m: JointMeasurement) -> np.ndarray:
    """Conditional outcome covariance of mode A after a joint measurement.

    Mathematically the Schur complement of ``B~`` in ``sigma + mu_J``;
    evaluated through the rescaled factorization in
    :mod:`gaussdiscord._kernels`, which stays exact as ``l -> 0``.
    """
    g = _inverse_from_kernel(state, m)
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if not np.isfinite(det):
        raise SingularityError("outcome covariance is not positive definite")
    if det <= 0.0:
        raise SingularityError(
            "conditional covariance is unbounded (homodyne on A without a beamsplitter)"
        )
    return np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]) / det


def conditional_cov_local(state: TwoModeCov, m_a: LocalMeasurement, m_b: LocalMeasurement) -> np.ndarray:
    """``A + mu_A - C (B + mu_B)^-1 C^T``."""
    return conditional_cov_joint(state, JointMeasurement.from_local(m_a, m_b))


def conditional_state_cov(state: TwoModeCov, m_b: LocalMeasurement) -> np.ndarray:
    """Covariance of the conditional quantum state of A after measuring B."""
    return _kernels.bside_conditional(np.ascontiguousarray(state.matrix), m_b.theta, m_b.l)


def gaussian_entropy(cov) -> float:
    """Differential entropy ``0.5 ln det + k ln(2 pi e)`` of a ``2k``-dim Gaussian."""
    m = cov.matrix if isinstance(cov, TwoModeCov) else np.asarray(cov, dtype=float)
    k = m.shape[0] // 2
    sign, logdet = np.linalg.slogdet(m)
    if sign <= 0:
        raise ValueError("covariance determinant is not positive")
    return 0.5 * logdet + k * LN_2PIE


def conditional_entropy(state: TwoModeCov, measurement) -> float:
    """``H(A~|B~)`` for a ``JointMeasurement`` or a ``(m_a, m_b)`` local pair."""
    if isinstance(measurement, JointMeasurement):
        return gaussian_entropy(conditional_cov_joint(state, measurement))
    m_a, m_b = measurement
    return gaussian_entropy(conditional_cov_local(state, m_a, m_b))


def outcome_entropies(state: TwoModeCov, measurement) -> tuple[float, float]:
    """``(H(A~, B~), H(B~))`` from the full outcome covariance.

    Finite-``l`` only; serves as the independent route to the conditional
    entropy through ``H(A~|B~) = H(A~, B~) - H(B~)``.
    """
    if not isinstance(measurement, JointMeasurement):
        measurement = JointMeasurement.from_local(*measurement)
    joint = outcome_cov(state, joint_povm_cov(measurement))
    return gaussian_entropy(joint), gaussian_entropy(joint.B)
