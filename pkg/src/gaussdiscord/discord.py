"""Operational Gaussian discord, Gaussian quantum discord and Renyi-2 discord.

All three are ``B -> A`` measures of a two-mode Gaussian state.  The
measurement searches run :func:`gaussdiscord.optimize.minimize` over

* local  ``(theta_A, theta_B, L_A, L_B)``,
* joint  ``(phi_A, phi_B, eta, theta_A, theta_B, L_A, L_B)``,
* B-side ``(theta_B, L_B)``,

with ``theta`` periodic in ``[0, pi)``, ``phi`` in ``[0, pi]``,
``eta`` in ``[0, 1]`` and ``L`` in ``[L_MIN, 1]``.  Afterwards each optimum is
canonicalized: a squeezing parameter sitting on ``L_MIN`` is replaced by the
exact homodyne limit ``L = 0`` when that does not increase the objective.
Optima are often degenerate (pure states in particular), so among optima tied
within ``TIE_TOL`` the local search prefers heterodyne (``L = 1``) and the
joint search prefers a local measurement, then a balanced beamsplitter.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .measurement import (
    L_MIN,
    LN_2PIE,
    JointMeasurement,
    LocalMeasurement,
    local_pair_from_vector,
)
from .optimize import SearchSpace, minimize
from .symplectic import TwoModeCov, symplectic_eigenvalues

PI = math.pi
OGD_CLAMP = 1e-9
TIE_TOL = 1e-12

LOCAL_SPACE = SearchSpace(
    bounds=((0.0, PI), (0.0, PI), (L_MIN, 1.0), (L_MIN, 1.0)),
    periodic_mask=(True, True, False, False),
)
JOINT_SPACE = SearchSpace(
    bounds=((0.0, PI), (0.0, PI), (0.0, 1.0), (0.0, PI), (0.0, PI), (L_MIN, 1.0), (L_MIN, 1.0)),
    periodic_mask=(False, False, False, True, True, False, False),
)
BSIDE_SPACE = SearchSpace(bounds=((0.0, PI), (L_MIN, 1.0)), periodic_mask=(True, False))

LOCAL_L = (2, 3)
JOINT_L = (5, 6)
BSIDE_L = (1,)
# (theta index, L index) pairs
LOCAL_ANGLES = ((0, 2), (1, 3))
JOINT_ANGLES = ((3, 5), (4, 6))
BSIDE_ANGLES = ((0, 1),)


def entropy_F(x: float) -> float:
    """Von Neumann entropy of a single-mode Gaussian state with ``sqrt(det) = x``."""
    if x < 1.0 - 1e-12:
        raise ValueError(f"entropy_F needs x >= 1, got {x}")
    return float(_kernels.entropy_f(max(float(x), 1.0)))


def embed_local(x_local) -> np.ndarray:
    """Joint-search vector of a local measurement (``phi = 0``, ``eta = 1``)."""
    ta, tb, la, lb = x_local
    return np.array([0.0, 0.0, 1.0, ta, tb, la, lb])


@dataclass(frozen=True)
class SearchResult:
    x: np.ndarray
    value: float
    evaluations: int


def _state_data(state: TwoModeCov, *extra: float) -> np.ndarray:
    return np.concatenate([np.ascontiguousarray(state.matrix).ravel(), np.array(extra, dtype=float)])


def _snap_homodyne(kernel, data, x, value, l_idx):
    at_floor = [i for i in l_idx if x[i] <= L_MIN * (1.0 + 1e-6)]
    best_x, best_v = x, value
    for k in range(1, len(at_floor) + 1):
        for subset in itertools.combinations(at_floor, k):
            trial = x.copy()
            trial[list(subset)] = 0.0
            v = float(kernel(trial, data))
            if v <= best_v:
                best_x, best_v = trial, v
    return best_x, best_v


def _zero_free_angles(kernel, data, x, value, pairs):
    """A heterodyne measurement does not depend on its angle; report it as 0."""
    for th, l in pairs:
        if x[l] == 1.0 and x[th] != 0.0:
            trial = x.copy()
            trial[th] = 0.0
            v = float(kernel(trial, data))
            if v <= value + TIE_TOL:
                x, value = trial, v
    return x, value


def _pinned_search(kernel, data, space: SearchSpace, x, pins: dict[int, float]):
    start = x.copy()
    for i, val in pins.items():
        start[i] = val
    res = minimize(kernel, space, args=data, n_starts=0, extra_starts=[start], n_polish=1, fixed=pins)
    return res.argmin, res.value, res.evaluations


def _first_tie(kernel, data, space, x, value, pin_sets):
    """Return the first pinned re-minimization that ties the optimum."""
    evals = 0
    for pins in pin_sets:
        if all(x[i] == val for i, val in pins.items()):
            return x, value, evals
        z, v, n = _pinned_search(kernel, data, space, x, pins)
        evals += n
        if v <= value + TIE_TOL:
            return z, v, evals
    return x, value, evals


def _heterodyne_pins(l_idx):
    return [{i: 1.0 for i in c} for k in range(len(l_idx), 0, -1) for c in itertools.combinations(l_idx, k)]


# Preferred representatives among tied joint optima, simplest first: a local
# measurement, then a balanced beamsplitter with no phase shifts on mode A.
JOINT_PREFERENCES = (
    {0: 0.0, 1: 0.0, 2: 1.0},
    {0: 0.0, 1: 0.0, 2: 0.5, 3: 0.0},
)


def search_local(kernel, data, seed: int) -> SearchResult:
    res = minimize(kernel, LOCAL_SPACE, seed, args=data, extra_starts=[[0.0, 0.0, 1.0, 1.0]])
    x, v, n = _first_tie(kernel, data, LOCAL_SPACE, res.argmin, res.value, _heterodyne_pins(LOCAL_L))
    x, v = _snap_homodyne(kernel, data, x, v, LOCAL_L)
    x, v = _zero_free_angles(kernel, data, x, v, LOCAL_ANGLES)
    return SearchResult(x, v, res.evaluations + n)


def search_joint(kernel, data, seed: int, local: SearchResult) -> SearchResult:
    """Joint search seeded with the local optimum embedded at ``eta = 1``.

    The result is never worse than the embedded local optimum.  Tied optima
    are resolved towards :data:`JOINT_PREFERENCES`.
    """
    start = embed_local(np.maximum(local.x, [-np.inf, -np.inf, L_MIN, L_MIN]))
    res = minimize(kernel, JOINT_SPACE, seed, args=data, extra_starts=[start])
    x, v, n = _first_tie(kernel, data, JOINT_SPACE, res.argmin, res.value, JOINT_PREFERENCES)
    x, v = _snap_homodyne(kernel, data, x, v, JOINT_L)
    x, v = _zero_free_angles(kernel, data, x, v, JOINT_ANGLES)
    embedded = embed_local(local.x)
    embedded_v = float(kernel(embedded, data))
    if embedded_v <= v + TIE_TOL:
        x, v = embedded, embedded_v
    return SearchResult(x, v, res.evaluations + n)


def search_bside(kernel, data, seed: int) -> SearchResult:
    res = minimize(kernel, BSIDE_SPACE, seed, args=data, extra_starts=[[0.0, 1.0]])
    x, v = _snap_homodyne(kernel, data, res.argmin, res.value, BSIDE_L)
    x, v = _zero_free_angles(kernel, data, x, v, BSIDE_ANGLES)
    return SearchResult(x, v, res.evaluations)


@dataclass(frozen=True)
class DiscordReport:
    ogd: float
    gqd: float
    renyi2: float
    hmin_local: float
    hmin_joint: float
    opt_local: tuple[LocalMeasurement, LocalMeasurement]
    opt_joint: JointMeasurement
    det_local: float
    det_joint: float
    clamped: bool = False

    def as_record(self) -> dict:
        ma, mb = self.opt_local
        j = self.opt_joint
        return {
            "ogd": self.ogd,
            "gqd": self.gqd,
            "renyi2": self.renyi2,
            "hmin_local": self.hmin_local,
            "hmin_joint": self.hmin_joint,
            "det_local": self.det_local,
            "det_joint": self.det_joint,
            "clamped": self.clamped,
            "opt_local": {"theta_A": ma.theta, "L_A": ma.l, "theta_B": mb.theta, "L_B": mb.l},
            "opt_joint": {
                "phi_A": j.phi_a,
                "phi_B": j.phi_b,
                "eta": j.eta,
                "theta_A": j.m_a.theta,
                "L_A": j.m_a.l,
                "theta_B": j.m_b.theta,
                "L_B": j.m_b.l,
            },
        }


def _require(state: TwoModeCov) -> TwoModeCov:
    return state.require_physical()


def conditional_quantum_entropy(state: TwoModeCov) -> float:
    """``S(A|B) = F(nu1) + F(nu2) - F(sqrt det B)``."""
    nu1, nu2 = symplectic_eigenvalues(state)
    return entropy_F(nu1) + entropy_F(nu2) - entropy_F(math.sqrt(np.linalg.det(state.B)))


def classical_conditional_entropy(state: TwoModeCov, seed: int = 0) -> tuple[float, LocalMeasurement]:
    """``min over mu_B of F(sqrt det sigma_A)`` and the minimizing measurement on B."""
    res = search_bside(_kernels.bside_vn_entropy, _state_data(_require(state)), seed)
    return res.value, LocalMeasurement(res.x[0], res.x[1])


def gqd(state: TwoModeCov, seed: int = 0) -> float:
    h_min, _ = classical_conditional_entropy(state, seed)
    return h_min - conditional_quantum_entropy(state)


def renyi2_discord(state: TwoModeCov, seed: int = 0) -> float:
    state = _require(state)
    res = search_bside(_kernels.bside_half_logdet, _state_data(state), seed)
    s2_ab = 0.5 * (math.log(np.linalg.det(state.matrix)) - math.log(np.linalg.det(state.B)))
    return res.value - s2_ab


def ogd(state: TwoModeCov, seed: int = 0) -> DiscordReport:
    """Operational Gaussian discord with GQD and Renyi-2 discord alongside."""
    state = _require(state)
    data = _state_data(state)
    local = search_local(_kernels.local_half_logdet, data, seed)
    joint = search_joint(_kernels.joint_half_logdet, data, seed, local)
    value = local.value - joint.value
    clamped = -OGD_CLAMP <= value < 0.0
    return DiscordReport(
        ogd=0.0 if clamped else value,
        gqd=gqd(state, seed),
        renyi2=renyi2_discord(state, seed),
        hmin_local=local.value + LN_2PIE,
        hmin_joint=joint.value + LN_2PIE,
        opt_local=local_pair_from_vector(local.x),
        opt_joint=JointMeasurement.from_vector(joint.x),
        det_local=math.exp(2.0 * local.value),
        det_joint=math.exp(2.0 * joint.value),
        clamped=clamped,
    )
