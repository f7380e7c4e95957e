"""Three standard-form state families with closed-form discord results.

``SymmetricT(a, t)``
    ``a = b``, ``c = -d = t sqrt(a^2 - 1)``; ``t = 1`` is a two-mode squeezed
    vacuum, entangled for ``t > sqrt((a-1)/(a+1))``.
``CCCA(c, q)``
    separable ``a = b = c + 1``, ``d = q c``; ``q = 1`` is the
    correlated-correlated state, ``q = -1`` correlated-anticorrelated.
``Asymmetric(b, v, s)``
    separable ``a = b + v``, ``c = |s|``, ``d = s``.

:func:`closed_form_ogd` evaluates the analytic optimal conditional
determinants for each family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Union

from scipy.optimize import minimize_scalar

from .symplectic import StandardFormParams, TwoModeCov

BRANCH_GUARD = 1e-12


class FamilyDomainError(ValueError):
    pass


@dataclass(frozen=True)
class SymmetricT:
    a: float
    t: float

    name = "symmetric_t"

    def __post_init__(self):
        if not (self.a >= 1.0 and 0.0 <= self.t <= 1.0):
            raise FamilyDomainError(f"symmetric_t needs a >= 1 and 0 <= t <= 1, got a={self.a}, t={self.t}")

    def standard_form(self) -> StandardFormParams:
        c = self.t * math.sqrt(self.a * self.a - 1.0)
        return StandardFormParams(self.a, self.a, c, -c)

    @property
    def threshold(self) -> float:
        """Separability boundary ``t = sqrt((a-1)/(a+1))``."""
        return math.sqrt((self.a - 1.0) / (self.a + 1.0))


@dataclass(frozen=True)
class CCCA:
    c: float
    q: float

    name = "cc_ca"

    def __post_init__(self):
        if not (self.c > 0.0 and -1.0 <= self.q <= 1.0):
            raise FamilyDomainError(f"cc_ca needs c > 0 and -1 <= q <= 1, got c={self.c}, q={self.q}")

    def standard_form(self) -> StandardFormParams:
        return StandardFormParams(self.c + 1.0, self.c + 1.0, self.c, self.q * self.c)

    @property
    def threshold(self) -> float:
        """``(1 + 2c)^(-1/2)``: above it in ``q`` the discord vanishes."""
        return 1.0 / math.sqrt(1.0 + 2.0 * self.c)


@dataclass(frozen=True)
class Asymmetric:
    b: float
    v: float
    s: float

    name = "asymmetric"

    def __post_init__(self):
        if not (self.b >= 1.0 and self.v >= 0.0 and abs(self.s) <= self.b - 1.0 + BRANCH_GUARD):
            raise FamilyDomainError(
                f"asymmetric needs b >= 1, v >= 0, |s| <= b - 1, got b={self.b}, v={self.v}, s={self.s}"
            )

    def standard_form(self) -> StandardFormParams:
        return StandardFormParams(self.b + self.v, self.b, abs(self.s), self.s)


FamilyParams = Union[SymmetricT, CCCA, Asymmetric]
FAMILIES = {cls.name: cls for cls in (SymmetricT, CCCA, Asymmetric)}


def make_family(name: str, **params: float) -> FamilyParams:
    try:
        cls = FAMILIES[name]
    except KeyError:
        raise FamilyDomainError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    expected = {f.name for f in fields(cls)}
    if set(params) != expected:
        raise FamilyDomainError(f"family {name!r} takes parameters {sorted(expected)}, got {sorted(params)}")
    return cls(**{k: float(v) for k, v in params.items()})


def family_parameter_names(name: str) -> list[str]:
    return [f.name for f in fields(FAMILIES[name])]


def family_state(family: FamilyParams) -> TwoModeCov:
    return family.standard_form().cov()


@dataclass(frozen=True)
class ClosedForm:
    ogd: float
    det_local: float
    det_joint: float
    branch: str
    l_joint: float


def _symmetric_t(f: SymmetricT) -> ClosedForm:
    a, t = f.a, f.t
    loc = 1.0 + a + (1.0 - a) * t * t
    root = math.sqrt(a * a - 1.0)
    if t < f.threshold - BRANCH_GUARD:
        joint = (1.0 + a) * (1.0 - t * t)
        den = 1.0 + t * t - a * (1.0 - t * t)
        l_joint = (1.0 - a * t * t - a - t * t + 2.0 * t * root) / den if den != 0.0 else 1.0
        branch = "separable"
    else:
        joint = 2.0 * (a - t * root)
        l_joint = 0.0
        branch = "entangled"
    ogd = math.log(loc) - math.log(joint)
    return ClosedForm(ogd, loc * loc, joint * joint, branch, l_joint)


def ccca_local_det(c: float, q: float) -> tuple[float, float, float]:
    """Optimal local conditional determinant and its ``(L_A, L_B)``.

    For ``|q| <= (1 + 2c)^(-1/2)`` B is measured by homodyne and the optimal
    ``L_A`` is ``sqrt(1 + 2c) / (1 + c)``.
    """
    if abs(q) > 1.0 / math.sqrt(1.0 + 2.0 * c):
        l_a = math.sqrt(2.0 / (2.0 + c - c * q * q))
        num = (1.0 + c) * (q * q - 1.0) + c * abs(q) * math.sqrt(4.0 + 2.0 * c - 2.0 * c * q * q)
        l_b = num / ((1.0 + c) ** 2 - (1.0 + c * c) * q * q)
    else:
        l_a = math.sqrt(1.0 + 2.0 * c) / (1.0 + c)
        l_b = 0.0
    det = (1.0 + l_a + c * (1.0 + l_b) / (1.0 + c + l_b)) * (
        1.0 + c + 1.0 / l_a - c * c * q * q * l_b / ((1.0 + c) * l_b + 1.0)
    )
    return det, l_a, l_b


def ccca_joint_det(c: float, q: float, l: float) -> float:
    """Conditional determinant for a two-mode-squeezed POVM with parameter ``l``."""
    num = 4.0 * (1.0 + l) * (1.0 + l + 2.0 * c * l) * (1.0 + l + c * l - c * q * l) * (1.0 + c + l + c * q)
    return num / (1.0 + 2.0 * l + 2.0 * c * l + l * l) ** 2


def ccca_l_formula(c: float, q: float) -> float:
    """Closed-form candidate for the joint ``l``; exact at ``q = -1`` and ``q = 1`` only."""
    return (q - 1.0 + math.sqrt(4.0 + 4.0 * c - 4.0 * c * q * q)) / (3.0 + 2.0 * c * (1.0 - q) - q)


def ccca_joint_min(c: float, q: float) -> tuple[float, float]:
    """Minimum over ``l in [0, 1]`` of :func:`ccca_joint_det`, with its argmin."""
    res = minimize_scalar(
        lambda l: ccca_joint_det(c, q, l), bounds=(0.0, 1.0), method="bounded", options={"xatol": 1e-12}
    )
    candidates = [(float(res.fun), float(res.x)), (ccca_joint_det(c, q, 0.0), 0.0), (ccca_joint_det(c, q, 1.0), 1.0)]
    return min(candidates)


def _ccca(f: CCCA) -> ClosedForm:
    det_local, _, _ = ccca_local_det(f.c, f.q)
    if f.q >= f.threshold - BRANCH_GUARD:
        return ClosedForm(0.0, det_local, det_local, "zero", 1.0 if f.q == 1.0 else math.nan)
    det_joint, l_joint = ccca_joint_min(f.c, f.q)
    ogd = 0.5 * (math.log(det_local) - math.log(det_joint))
    return ClosedForm(ogd, det_local, det_joint, "two_mode_squeezed", l_joint)


def asymmetric_conditional_vars(b: float, v: float, s: float) -> tuple[float, float]:
    """Isotropic conditional variances ``(local, joint)`` for ``s < 0``."""
    local = 1.0 + b + v - s * s / (1.0 + b)
    joint = 1.0 + b + v - s * s / (b - 1.0) if s != 0.0 else local
    return local, joint


def _asymmetric(f: Asymmetric) -> ClosedForm:
    b, v, s = f.b, f.v, f.s
    local, joint = asymmetric_conditional_vars(b, v, s)
    if s >= -BRANCH_GUARD:
        return ClosedForm(0.0, local * local, local * local, "zero", 1.0)
    ogd = math.log(1.0 + 2.0 * s * s / ((1.0 + b) * (b * b - s * s - 1.0 - v + b * v)))
    l_joint = (b - 1.0 + s) / (b - 1.0 - s)
    return ClosedForm(ogd, local * local, joint * joint, "two_mode_squeezed", l_joint)


def closed_form_ogd(family: FamilyParams) -> ClosedForm:
    if isinstance(family, SymmetricT):
        return _symmetric_t(family)
    if isinstance(family, CCCA):
        return _ccca(family)
    if isinstance(family, Asymmetric):
        return _asymmetric(family)
    raise FamilyDomainError(f"not a state family: {family!r}")
