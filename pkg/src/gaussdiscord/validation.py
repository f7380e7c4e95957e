"""Acceptance checks shared by ``gaussdiscord validate`` and the test suite.

Each ``criterion_N`` function returns a list of :class:`Check` rows; a
criterion passes when all of its rows pass.  Everything is deterministic for
a given seed, so the rendered table is reproducible byte for byte.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import _kernels
from .discord import BSIDE_SPACE, LOCAL_SPACE, _state_data, ogd
from .families import CCCA, Asymmetric, SymmetricT, closed_form_ogd, family_state
from .measurement import (
    JointMeasurement,
    LocalMeasurement,
    conditional_cov_joint,
    conditional_entropy,
    gaussian_entropy,
    joint_povm_cov,
    outcome_cov,
    schur_complement,
)
from .optimize import grid_oracle, minimize
from .protocol import DEFAULT_VS_SCHEDULE, ogd_convergence
from .symplectic import TwoModeCov, random_physical_state, rotation

_OPS = {"<=": operator.le, "<": operator.lt, ">": operator.gt, ">=": operator.ge}


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    measured: float
    relation: str
    bound: float

    @property
    def passed(self) -> bool:
        return bool(_OPS[self.relation](self.measured, self.bound))

    def row(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.criterion:>2}  {self.name:<44} {self.measured:>12.3e} {self.relation:>2} {self.bound:<10.3e} {status}"


def _max(values) -> float:
    return float(max(values)) + 0.0 if len(values) else 0.0


def criterion_1(seed: int = 0) -> list[Check]:
    errs = [abs(ogd(TwoModeCov.tmsv(r), seed).ogd - 2 * r) for r in (0.1, 0.25, 0.5, 1.0, 2.0)]
    return [Check(1, "TMSV ogd = 2r, max error", _max(errs), "<=", 1e-5)]


def criterion_2(seed: int = 0) -> list[Check]:
    errs, l_dev = [], []
    for a in (2.0, 5.0, 10.0, 50.0):
        for k in range(11):
            fam = SymmetricT(a, k / 10)
            rep = ogd(family_state(fam), seed)
            errs.append(abs(rep.ogd - closed_form_ogd(fam).ogd))
            l_dev.extend(abs(m.l - 1.0) for m in rep.opt_local)
    return [
        Check(2, "symmetric family vs closed form", _max(errs), "<=", 1e-6),
        Check(2, "symmetric family local |L - 1|", _max(l_dev), "<=", 1e-4),
    ]


def criterion_3(seed: int = 0) -> list[Check]:
    zero = [ogd(family_state(CCCA(9.0, q)), seed).ogd for q in (0.23, 0.5, 1.0)]
    qs = [-1.0 + 0.25 * k for k in range(5)] + [0.2]
    vals = [ogd(family_state(CCCA(9.0, q)), seed).ogd for q in qs]
    diffs = np.diff(vals)
    return [
        Check(3, "c=9 ogd above threshold, max |ogd|", _max([abs(v) for v in zero]), "<=", 1e-9),
        Check(3, "c=9 successive differences, max", float(np.max(diffs)), "<", -1e-6),
        Check(3, "c=9 ogd(q=-1) vs ln(20/11)", abs(vals[0] - math.log(20 / 11)), "<=", 1e-6),
    ]


def criterion_4(seed: int = 0) -> list[Check]:
    errs, pos, l_dev = [], [], []
    for b in (2.0, 3.0, 10.0):
        for v in (0.0, 1.0, 10.0):
            for s in (-(b - 1), -(b - 1) / 2, (b - 1) / 2, b - 1):
                fam = Asymmetric(b, v, s)
                rep = ogd(family_state(fam), seed)
                errs.append(abs(rep.ogd - closed_form_ogd(fam).ogd))
                if s > 0:
                    pos.append(abs(rep.ogd))
                else:
                    l_dev.append(abs(rep.opt_joint.m_a.l - (b - 1 + s) / (b - 1 - s)))
    return [
        Check(4, "asymmetric family vs closed form", _max(errs), "<=", 1e-6),
        Check(4, "asymmetric family s > 0, max |ogd|", _max(pos), "<=", 1e-9),
        Check(4, "asymmetric family joint L_A deviation", _max(l_dev), "<=", 1e-3),
    ]


def criterion_5(seed: int = 0) -> list[Check]:
    checks = []
    for label, state in (("TMSV r=0.5", TwoModeCov.tmsv(0.5)), ("asymmetric 3,1,-1", family_state(Asymmetric(3, 1, -1)))):
        rows = ogd_convergence(state, DEFAULT_VS_SCHEDULE, seed)
        dist = [r.distance for r in rows]
        checks.append(Check(5, f"{label} |gap - ogd| at vs=1e8", dist[-1], "<=", 1e-4))
        checks.append(Check(5, f"{label} distance increase, max", float(np.max(np.diff(dist))), "<=", 0.0))
    for label, state in (("CC c=9", family_state(CCCA(9, 1))), ("product", TwoModeCov.from_standard_form(4, 2, 0, 0))):
        rows = ogd_convergence(state, DEFAULT_VS_SCHEDULE, seed)
        checks.append(Check(5, f"{label} max gap", _max([r.gap for r in rows]), "<=", 1e-9))
    return checks


def _local_rotation(rng) -> np.ndarray:
    s = np.zeros((4, 4))
    s[:2, :2] = rotation(rng.uniform(0, 2 * np.pi))
    s[2:, 2:] = rotation(rng.uniform(0, 2 * np.pi))
    return s


def criterion_6(seed: int = 0, n_states: int = 500) -> list[Check]:
    rng = np.random.default_rng(seed)
    neg, det_gap, rot, prod = [], [], [], []
    for k in range(n_states):
        product = k % 10 == 0
        state = random_physical_state(rng, product=product)
        rep = ogd(state, seed)
        neg.append(-rep.ogd)
        det_gap.append(rep.det_joint - rep.det_local)
        rot.append(abs(ogd(state.transformed(_local_rotation(rng)), seed).ogd - rep.ogd))
        if product:
            prod.append(max(abs(rep.ogd), abs(rep.gqd), abs(rep.renyi2)))
    return [
        Check(6, "random states, max -ogd", _max(neg), "<=", 1e-9),
        Check(6, "random states, max det_joint - det_local", _max(det_gap), "<=", 1e-9),
        Check(6, "random states, local rotation invariance", _max(rot), "<=", 1e-5),
        Check(6, "product states, max |measure|", _max(prod), "<=", 1e-9),
    ]


def criterion_7(seed: int = 0) -> list[Check]:
    cc = ogd(family_state(CCCA(9, 1)), seed)
    ca = ogd(family_state(CCCA(9, -1)), seed)
    uncorrelated_d = ogd(TwoModeCov.from_standard_form(3, 2, 1, 0), seed)
    return [
        Check(7, "gqd(CC) - gqd(CA)", cc.gqd - ca.gqd, ">", 0.0),
        Check(7, "|Hmin_L(CC) - Hmin_L(CA)|", abs(cc.hmin_local - ca.hmin_local), "<=", 1e-6),
        Check(7, "|renyi2(CC) - renyi2(CA)|", abs(cc.renyi2 - ca.renyi2), "<=", 1e-6),
        Check(7, "renyi2 for d=0, c=1", abs(uncorrelated_d.renyi2), "<=", 1e-9),
    ]


def criterion_8(seed: int = 0, n_states: int = 20) -> list[Check]:
    rng = np.random.default_rng(seed + 8)
    local_gap, bside_gap = [], []
    for _ in range(n_states):
        data = _state_data(random_physical_state(rng))
        opt = minimize(_kernels.local_half_logdet, LOCAL_SPACE, seed, args=data)
        grid = grid_oracle(_kernels.local_half_logdet, LOCAL_SPACE, 31, args=data)
        local_gap.append(opt.value - grid.value)
        opt = minimize(_kernels.bside_vn_entropy, BSIDE_SPACE, seed, args=data)
        grid = grid_oracle(_kernels.bside_vn_entropy, BSIDE_SPACE, 201, args=data)
        bside_gap.append(opt.value - grid.value)
    return [
        Check(8, "local search minus 31^4 grid, max", _max(local_gap), "<=", 1e-12),
        Check(8, "B-side search minus 201^2 grid, max", _max(bside_gap), "<=", 1e-12),
    ]


def _random_joint(rng) -> JointMeasurement:
    def local():
        return LocalMeasurement(rng.uniform(0, np.pi), 10 ** rng.uniform(-2, 0))

    return JointMeasurement(rng.uniform(0, np.pi), rng.uniform(0, np.pi), rng.uniform(0, 1), local(), local())


def criterion_9(seed: int = 0, n_states: int = 100) -> list[Check]:
    rng = np.random.default_rng(seed + 9)
    det_rel, ent = [], []
    for _ in range(n_states):
        state = random_physical_state(rng)
        m = _random_joint(rng)
        full = outcome_cov(state, joint_povm_cov(m))
        ratio = np.linalg.det(full.matrix) / np.linalg.det(full.B)
        cond = np.linalg.det(conditional_cov_joint(state, m))
        det_rel.append(abs(ratio - cond) / abs(cond))
        via_schur = gaussian_entropy(schur_complement(full))
        ent.append(abs(via_schur - (gaussian_entropy(full) - gaussian_entropy(full.B))))
        ent.append(abs(conditional_entropy(state, m) - via_schur))
    return [
        Check(9, "det ratio vs conditional det, max rel", _max(det_rel), "<=", 1e-10),
        Check(9, "H(A|B) vs H(A,B) - H(B), max", _max(ent), "<=", 1e-10),
    ]


CRITERIA: dict[int, Callable[[int], list[Check]]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_all(seed: int = 0, corrupt: bool = False, only=None) -> list[Check]:
    """Run every criterion, or those in ``only``.  ``corrupt`` sabotages one tolerance (harness self-test)."""
    chosen = sorted(CRITERIA) if only is None else sorted(set(only))
    unknown = [k for k in chosen if k not in CRITERIA]
    if unknown:
        raise ValueError(f"unknown criteria {unknown}; choose from {sorted(CRITERIA)}")
    checks = []
    for k in chosen:
        checks.extend(CRITERIA[k](seed))
    if corrupt:
        checks[0] = replace(checks[0], bound=-1.0)
    return checks


def render(checks: list[Check]) -> str:
    head = f"{'#':>2}  {'check':<44} {'measured':>12} {'':>2} {'bound':<10} result"
    lines = [head, "-" * len(head)]
    lines.extend(c.row() for c in checks)
    n_fail = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"
