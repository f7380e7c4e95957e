"""Two-mode Gaussian covariance matrices and symplectic linear algebra.

Units: the vacuum covariance is the identity, so the uncertainty relation
reads ``nu >= 1`` for every symplectic eigenvalue ``nu``.  Quadratures are
ordered ``(x_A, p_A, x_B, p_B)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SYMMETRY_ATOL = 1e-12
PHYSICALITY_TOL = 1e-9

J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
J4 = np.block([[J2, np.zeros((2, 2))], [np.zeros((2, 2)), J2]])


class UnphysicalStateError(ValueError):
    """Raised when a covariance matrix violates the uncertainty relation."""


class SymmetryError(ValueError):
    """Raised when a covariance matrix is not symmetric."""


def rotation(theta: float) -> np.ndarray:
    """Single-mode phase rotation ``[[cos, -sin], [sin, cos]]``."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def beamsplitter(eta: float) -> np.ndarray:
    """Beamsplitter of transmissivity ``eta`` acting on ``(x_A, p_A, x_B, p_B)``."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"beamsplitter transmissivity must lie in [0, 1], got {eta}")
    t, r = np.sqrt(eta), np.sqrt(1.0 - eta)
    return np.array(
        [
            [t, 0.0, -r, 0.0],
            [0.0, t, 0.0, -r],
            [r, 0.0, t, 0.0],
            [0.0, r, 0.0, t],
        ]
    )


def phase_rotation(phi_a: float, phi_b: float) -> np.ndarray:
    """Independent phase shifts on the two modes (block-diagonal rotation)."""
    out = np.zeros((4, 4))
    out[:2, :2] = rotation(phi_a)
    out[2:, 2:] = rotation(phi_b)
    return out


def single_mode_squeezer(r: float) -> np.ndarray:
    return np.diag([np.exp(-r), np.exp(r)])


def is_symplectic(s: np.ndarray, atol: float = 1e-12) -> bool:
    return bool(np.allclose(s.T @ J4 @ s, J4, atol=atol, rtol=0.0))


def _check_symmetric(m: np.ndarray) -> None:
    if not np.allclose(m, m.T, atol=SYMMETRY_ATOL, rtol=0.0):
        raise SymmetryError(
            f"symmetry violation: max |m - m^T| = {np.max(np.abs(m - m.T)):.3e}"
        )


@dataclass(frozen=True)
class StandardFormParams:
    """Standard form ``A = a*I``, ``B = b*I``, ``C = diag(c, d)``.

    The canonical ordering produced by :func:`standard_form_reduce` is
    ``c >= |d|``.
    """

    a: float
    b: float
    c: float
    d: float

    def cov(self) -> "TwoModeCov":
        return TwoModeCov.from_standard_form(self.a, self.b, self.c, self.d)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


class TwoModeCov:
    """Immutable symmetric 4x4 covariance matrix with blocks ``A``, ``B``, ``C``.

    Construction checks symmetry only; use :func:`physicality_check` or
    :meth:`require_physical` for the uncertainty relation.
    """

    __slots__ = ("_m",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 covariance matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("covariance matrix has non-finite entries")
        _check_symmetric(m)
        m = 0.5 * (m + m.T)
        m.setflags(write=False)
        self._m = m

    @classmethod
    def from_blocks(cls, a_block, b_block, c_block) -> "TwoModeCov":
        a_block, b_block, c_block = (np.asarray(x, dtype=float) for x in (a_block, b_block, c_block))
        return cls(np.block([[a_block, c_block], [c_block.T, b_block]]))

    @classmethod
    def from_standard_form(cls, a: float, b: float, c: float, d: float) -> "TwoModeCov":
        return cls.from_blocks(np.diag([a, a]), np.diag([b, b]), np.diag([c, d]))

    @classmethod
    def vacuum(cls) -> "TwoModeCov":
        return cls(np.eye(4))

    @classmethod
    def tmsv(cls, r: float) -> "TwoModeCov":
        """Two-mode squeezed vacuum: ``a = cosh 2r``, ``c = -d = sinh 2r``."""
        ch, sh = np.cosh(2 * r), np.sinh(2 * r)
        return cls.from_standard_form(ch, ch, sh, -sh)

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def A(self) -> np.ndarray:
        return self._m[:2, :2]

    @property
    def B(self) -> np.ndarray:
        return self._m[2:, 2:]

    @property
    def C(self) -> np.ndarray:
        return self._m[:2, 2:]

    def transformed(self, s: np.ndarray) -> "TwoModeCov":
        """Covariance after the linear map ``s``: ``s @ sigma @ s.T``."""
        return TwoModeCov(s @ self._m @ s.T)

    def __add__(self, other) -> "TwoModeCov":
        other = other.matrix if isinstance(other, TwoModeCov) else np.asarray(other, dtype=float)
        return TwoModeCov(self._m + other)

    def __eq__(self, other) -> bool:
        return isinstance(other, TwoModeCov) and np.array_equal(self._m, other._m)

    def __hash__(self) -> int:
        return hash(self._m.tobytes())

    def __repr__(self) -> str:
        return f"TwoModeCov({np.array2string(self._m, precision=6, separator=', ')})"

    def require_physical(self) -> "TwoModeCov":
        nu1, nu2 = symplectic_eigenvalues(self)
        if not physicality_check(self):
            raise UnphysicalStateError(
                f"unphysical covariance: smallest symplectic eigenvalue nu2 = {nu2:.12g} < 1"
            )
        return self


def symplectic_eigenvalues(cov) -> tuple[float, float]:
    """Return ``(nu1, nu2)`` with ``nu1 >= nu2``.

    Uses the real matrix ``(J sigma)^2`` whose eigenvalues are ``-nu_k^2``,
    each appearing twice.
    """
    m = cov.matrix if isinstance(cov, TwoModeCov) else np.asarray(cov, dtype=float)
    _check_symmetric(m)
    js = J4 @ m
    ev = np.sort(-np.real(np.linalg.eigvals(js @ js)))
    ev = np.maximum(ev, 0.0)
    nu2 = np.sqrt(0.5 * (ev[0] + ev[1]))
    nu1 = np.sqrt(0.5 * (ev[2] + ev[3]))
    return float(nu1), float(nu2)


def physicality_check(cov) -> bool:
    m = cov.matrix if isinstance(cov, TwoModeCov) else np.asarray(cov, dtype=float)
    if np.min(np.linalg.eigvalsh(0.5 * (m + m.T))) <= 0.0:
        return False
    return symplectic_eigenvalues(m)[1] >= 1.0 - PHYSICALITY_TOL


def local_invariants(cov) -> tuple[float, float, float, float]:
    """``(det A, det B, det C, det sigma)``, unchanged by local symplectics."""
    m = cov.matrix if isinstance(cov, TwoModeCov) else np.asarray(cov, dtype=float)
    return (
        float(np.linalg.det(m[:2, :2])),
        float(np.linalg.det(m[2:, 2:])),
        float(np.linalg.det(m[:2, 2:])),
        float(np.linalg.det(m)),
    )


def _symplectic_normalizer(m: np.ndarray) -> np.ndarray:
    """``(det m)^(1/4) m^(-1/2)``: unit-determinant map sending ``m`` to ``sqrt(det m) I``."""
    w, v = np.linalg.eigh(m)
    if np.min(w) <= 0.0:
        raise ArithmeticError("local block is not positive definite; input is unphysical")
    return (w[0] * w[1]) ** 0.25 * (v / np.sqrt(w)) @ v.T


def standard_form_reduce(cov: TwoModeCov, rtol: float = 1e-9) -> StandardFormParams:
    """Standard-form parameters of a physical two-mode covariance matrix.

    Each local block is mapped to a multiple of the identity by a
    single-mode symplectic, after which local rotations diagonalize the
    correlation block through its singular values.  The sign convention is
    ``c >= |d|``; the sign of ``d`` is that of ``det C``.  The result is
    checked against the local invariants ``det A``, ``det B``, ``det C`` and
    ``det sigma``.
    """
    m = cov.matrix if isinstance(cov, TwoModeCov) else np.asarray(cov, dtype=float)
    s_a = _symplectic_normalizer(m[:2, :2])
    s_b = _symplectic_normalizer(m[2:, 2:])
    c_prime = s_a @ m[:2, 2:] @ s_b.T
    sv = np.linalg.svd(c_prime, compute_uv=False)
    det_a, det_b, det_c, det_s = local_invariants(m)
    a, b = np.sqrt(det_a), np.sqrt(det_b)
    d = float(sv[1]) if det_c >= 0.0 else -float(sv[1])
    params = StandardFormParams(float(a), float(b), float(sv[0]), d)

    ref = np.array([det_a, det_b, det_c, det_s])
    got = np.array(local_invariants(params.cov()))
    tol = rtol * max(1.0, float(np.max(np.abs(ref))))
    if np.max(np.abs(got - ref)) > 10 * tol:
        raise ArithmeticError("standard-form reduction failed to reproduce the invariants")
    return params


def partial_transpose(cov: TwoModeCov) -> TwoModeCov:
    """Mirror ``p_B -> -p_B``; maps standard form ``d`` to ``-d``."""
    return cov.transformed(np.diag([1.0, 1.0, 1.0, -1.0]))


def is_entangled(state) -> bool:
    """PPT test: entangled iff the partial transpose violates ``nu >= 1``.

    Accepts :class:`StandardFormParams` or :class:`TwoModeCov`.
    """
    cov = state.cov() if isinstance(state, StandardFormParams) else state
    return symplectic_eigenvalues(partial_transpose(cov))[1] < 1.0 - PHYSICALITY_TOL


def two_mode_squeezer(r: float) -> np.ndarray:
    ch, sh = np.cosh(r), np.sinh(r)
    return np.block([[ch * np.eye(2), sh * np.diag([1.0, -1.0])], [sh * np.diag([1.0, -1.0]), ch * np.eye(2)]])


def _local(rng: np.random.Generator, max_squeeze: float) -> np.ndarray:
    out = np.zeros((4, 4))
    for k in (0, 2):
        r = rng.uniform(-max_squeeze, max_squeeze)
        out[k : k + 2, k : k + 2] = rotation(rng.uniform(0, np.pi)) @ single_mode_squeezer(r) @ rotation(
            rng.uniform(0, np.pi)
        )
    return out


def random_physical_state(
    rng: np.random.Generator, max_nu: float = 5.0, max_squeeze: float = 0.8, product: bool = False
) -> TwoModeCov:
    """Williamson construction ``S diag(nu1, nu1, nu2, nu2) S^T`` with random symplectic ``S``.

    ``product=True`` leaves out the two-mode part, giving ``C = 0``.
    """
    nu = rng.uniform(1.0, max_nu, size=2)
    thermal = np.diag([nu[0], nu[0], nu[1], nu[1]])
    s = _local(rng, max_squeeze)
    if not product:
        s = (
            _local(rng, max_squeeze)
            @ beamsplitter(rng.uniform(0.0, 1.0))
            @ phase_rotation(rng.uniform(0, np.pi), rng.uniform(0, np.pi))
            @ two_mode_squeezer(rng.uniform(-max_squeeze, max_squeeze))
            @ s
        )
    return TwoModeCov(s @ thermal @ s.T)
