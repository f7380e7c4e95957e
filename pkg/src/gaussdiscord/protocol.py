"""Signal encoding on mode A and the local-vs-joint readout advantage.

A classical Gaussian signal of variance ``V_s`` in both quadratures displaces
mode A, which adds ``V_s (I (+) 0)`` to the covariance.  A receiver holding
both modes and measuring with Gaussian POVMs extracts

    I = 0.5 ln det(I + V_s G),   G = sigma~_A^-1,

where ``sigma~_A`` is the conditional outcome covariance of mode A for the
un-encoded state.  Maximizing over local or joint measurements gives
``i_local`` and ``i_joint``; their gap tends to the operational discord as
``V_s`` grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from .discord import _state_data, ogd, search_joint, search_local
from .measurement import JointMeasurement, LocalMeasurement, local_pair_from_vector
from .symplectic import TwoModeCov

DEFAULT_VS_SCHEDULE = (1e0, 1e2, 1e4, 1e6, 1e8)
GAP_TOL = 1e-9


@dataclass(frozen=True)
class EncodedState:
    base: TwoModeCov
    vs: float

    @property
    def cov(self) -> TwoModeCov:
        shift = np.zeros((4, 4))
        shift[0, 0] = shift[1, 1] = self.vs
        return TwoModeCov(self.base.matrix + shift)


def encode(state: TwoModeCov, vs: float) -> EncodedState:
    if not vs > 0.0:
        raise ValueError(f"signal variance must be positive, got {vs}")
    return EncodedState(state.require_physical(), float(vs))


def mutual_info_single_mode(a: float, l_a: float, vs: float) -> float:
    """Information from measuring only mode A, variance ``a``, with parameter ``l_a``."""
    if not a >= 1.0:
        raise ValueError(f"local variance must be >= 1, got {a}")
    if not 0.0 < l_a <= 1.0:
        raise ValueError(f"l_a must lie in (0, 1], got {l_a}")
    if not vs > 0.0:
        raise ValueError(f"signal variance must be positive, got {vs}")
    return 0.5 * math.log1p(vs / (a + l_a)) + 0.5 * math.log1p(vs / (a + 1.0 / l_a))


@dataclass(frozen=True)
class MutualInfoReport:
    vs: float
    i_local: float
    i_joint: float
    gap: float
    eig_local: tuple[float, float]
    eig_joint: tuple[float, float]
    opt_local: tuple[LocalMeasurement, LocalMeasurement]
    opt_joint: JointMeasurement


def _conditional_eigs(state: TwoModeCov, x_joint) -> tuple[float, float]:
    p = _kernels.orthogonal_frame(*x_joint[:5])
    g = _kernels.inverse_conditional(np.ascontiguousarray(state.matrix), p, x_joint[5], x_joint[6])
    # eigenvalues of sigma~_A are reciprocals of those of G; a zero one is unbounded
    gs = np.linalg.eigvalsh(g)
    inv = [math.inf if v <= 0.0 else 1.0 / v for v in gs]
    return (min(inv), max(inv))


def mutual_info_report(state: TwoModeCov, vs: float, seed: int = 0) -> MutualInfoReport:
    enc = encode(state, vs)
    state = enc.base
    data = _state_data(state, enc.vs)
    local = search_local(_kernels.local_neg_mutual_info, data, seed)
    joint = search_joint(_kernels.joint_neg_mutual_info, data, seed, local)
    i_local, i_joint = -local.value, -joint.value
    gap = i_joint - i_local
    if gap < -GAP_TOL:
        raise ArithmeticError(f"joint information below local by {-gap}")
    x_local = np.array([0.0, 0.0, 1.0, *local.x])
    return MutualInfoReport(
        vs=enc.vs,
        i_local=i_local,
        i_joint=i_joint,
        gap=gap,
        eig_local=_conditional_eigs(state, x_local),
        eig_joint=_conditional_eigs(state, joint.x),
        opt_local=local_pair_from_vector(local.x),
        opt_joint=JointMeasurement.from_vector(joint.x),
    )


class ConvergenceRow(NamedTuple):
    vs: float
    i_local: float
    i_joint: float
    gap: float
    ogd: float
    distance: float


def ogd_convergence(
    state: TwoModeCov, vs_schedule: Sequence[float] = DEFAULT_VS_SCHEDULE, seed: int = 0
) -> list[ConvergenceRow]:
    """Strategy gap at each ``V_s`` and its distance to the operational discord."""
    schedule = [float(v) for v in vs_schedule]
    if not schedule or any(v <= 0.0 for v in schedule):
        raise ValueError("signal variances must be positive")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("signal variance schedule must be strictly increasing")
    target = ogd(state, seed).ogd
    rows = []
    for vs in schedule:
        rep = mutual_info_report(state, vs, seed)
        rows.append(ConvergenceRow(vs, rep.i_local, rep.i_joint, rep.gap, target, abs(rep.gap - target)))
    return rows
