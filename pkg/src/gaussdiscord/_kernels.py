"""Compiled hot-loop objectives.

Every measurement POVM covariance here has the form ``P^T Lam P`` with ``P``
orthogonal and ``Lam = diag(L_A, 1/L_A, L_B, 1/L_B)``.  Writing
``D = diag(1, sqrt L_A, 1, sqrt L_B)`` the inverse outcome covariance is

    (sigma + P^T Lam P)^-1 = P^T D W^-1 D P,   W = D (P sigma P^T) D + D Lam D,

and ``D Lam D = diag(L_A, 1, L_B, 1)``.  ``W`` stays bounded and positive
definite as ``L -> 0``, so the conditional covariance of mode A,
``G^-1 = ((sigma + mu)^-1)_AA^-1``, is evaluated without the ``1/L``
cancellations of the literal Schur complement and exactly at ``L = 0``.

Parameter layouts (search vectors):
    joint : (phi_A, phi_B, eta, theta_A, theta_B, L_A, L_B)
    local : (theta_A, theta_B, L_A, L_B)
    bside : (theta_B, L_B)
``data`` is ``sigma.ravel()`` (16 entries), optionally followed by ``V_s``.
"""

import numpy as np
from numba import njit

_CACHE = True


@njit(cache=_CACHE)
def _put_rot(p, i, j, angle, scale):
    c = scale * np.cos(angle)
    s = scale * np.sin(angle)
    p[i, j] = c
    p[i, j + 1] = -s
    p[i + 1, j] = s
    p[i + 1, j + 1] = c


@njit(cache=_CACHE)
def orthogonal_frame(phi_a, phi_b, eta, th_a, th_b):
    """``P = Q^T B(eta) R(phi_A, phi_B)`` with ``Q = R(theta_A) (+) R(theta_B)``.

    Blockwise ``P = [[t R(phi_A - theta_A), -r R(phi_B - theta_A)],
    [r R(phi_A - theta_B), t R(phi_B - theta_B)]]`` with ``t = sqrt(eta)``,
    ``r = sqrt(1 - eta)``.
    """
    if eta < 0.0:
        eta = 0.0
    elif eta > 1.0:
        eta = 1.0
    t = np.sqrt(eta)
    r = np.sqrt(1.0 - eta)
    p = np.empty((4, 4))
    _put_rot(p, 0, 0, phi_a - th_a, t)
    _put_rot(p, 0, 2, phi_b - th_a, -r)
    _put_rot(p, 2, 0, phi_a - th_b, r)
    _put_rot(p, 2, 2, phi_b - th_b, t)
    return p


@njit(cache=_CACHE)
def _cholesky4(w, low):
    for j in range(4):
        s = w[j, j]
        for k in range(j):
            s -= low[j, k] * low[j, k]
        if s <= 0.0:
            return False
        d = np.sqrt(s)
        low[j, j] = d
        for i in range(j + 1, 4):
            s = w[i, j]
            for k in range(j):
                s -= low[i, k] * low[j, k]
            low[i, j] = s / d
    return True


@njit(cache=_CACHE)
def inverse_conditional(sigma, p, la, lb):
    """Return ``G`` (2x2), the inverse conditional covariance of mode A.

    ``G`` is filled with NaN when ``W`` is not positive definite.
    """
    ps = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            acc = 0.0
            for k in range(4):
                acc += p[i, k] * sigma[k, j]
            ps[i, j] = acc
    tau = np.empty((4, 4))
    for i in range(4):
        for j in range(i + 1):
            acc = 0.0
            for k in range(4):
                acc += ps[i, k] * p[j, k]
            tau[i, j] = acc
            tau[j, i] = acc
    dvec = np.array([1.0, np.sqrt(la), 1.0, np.sqrt(lb)])
    lam = np.array([la, 1.0, lb, 1.0])
    w = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            w[i, j] = dvec[i] * tau[i, j] * dvec[j]
        w[i, i] += lam[i]
    low = np.zeros((4, 4))
    g = np.empty((2, 2))
    if not _cholesky4(w, low):
        g[:, :] = np.nan
        return g
    y = np.empty((4, 2))
    for k in range(2):
        for i in range(4):
            s = dvec[i] * p[i, k]
            for j in range(i):
                s -= low[i, j] * y[j, k]
            y[i, k] = s / low[i, i]
    for a in range(2):
        for b in range(2):
            s = 0.0
            for i in range(4):
                s += y[i, a] * y[i, b]
            g[a, b] = s
    return g


@njit(cache=_CACHE)
def bside_conditional(sigma, th_b, lb):
    """``A - C (B + mu_B)^-1 C^T`` for a rank-one measurement on B only.

    Rescaled as in the joint case: ``K = C Q D``, ``W = D Q^T B Q D + diag(L, 1)``.
    """
    c, s = np.cos(th_b), np.sin(th_b)
    q = np.array([[c, -s], [s, c]])
    d = np.array([1.0, np.sqrt(lb)])
    bq = np.empty((2, 2))
    for i in range(2):
        for j in range(2):
            bq[i, j] = sigma[2 + i, 2] * q[0, j] + sigma[2 + i, 3] * q[1, j]
    w = np.empty((2, 2))
    for i in range(2):
        for j in range(2):
            w[i, j] = d[i] * (q[0, i] * bq[0, j] + q[1, i] * bq[1, j]) * d[j]
    w[0, 0] += lb
    w[1, 1] += 1.0
    k = np.empty((2, 2))
    for i in range(2):
        for j in range(2):
            k[i, j] = (sigma[i, 2] * q[0, j] + sigma[i, 3] * q[1, j]) * d[j]
    det = w[0, 0] * w[1, 1] - w[0, 1] * w[1, 0]
    out = np.empty((2, 2))
    for i in range(2):
        for j in range(2):
            acc = 0.0
            acc += k[i, 0] * w[1, 1] * k[j, 0]
            acc -= k[i, 0] * w[0, 1] * k[j, 1]
            acc -= k[i, 1] * w[1, 0] * k[j, 0]
            acc += k[i, 1] * w[0, 0] * k[j, 1]
            out[i, j] = sigma[i, j] - acc / det
    return out


@njit(cache=_CACHE)
def _det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


@njit(cache=_CACHE)
def _half_logdet_cond(g):
    det = _det2(g)
    if not det > 0.0:
        return np.inf
    return -0.5 * np.log(det)


@njit(cache=_CACHE)
def _mutual_info(g, vs):
    # 0.5 ln det(I + vs G)
    det = 1.0 + vs * (g[0, 0] + g[1, 1]) + vs * vs * _det2(g)
    return 0.5 * np.log(det)


@njit(cache=_CACHE)
def _sigma(data):
    return data[:16].copy().reshape((4, 4))


@njit(cache=_CACHE)
def joint_half_logdet(x, data):
    """``0.5 ln det`` of the conditional outcome covariance, joint measurement."""
    p = orthogonal_frame(x[0], x[1], x[2], x[3], x[4])
    return _half_logdet_cond(inverse_conditional(_sigma(data), p, x[5], x[6]))


@njit(cache=_CACHE)
def local_half_logdet(x, data):
    p = orthogonal_frame(0.0, 0.0, 1.0, x[0], x[1])
    return _half_logdet_cond(inverse_conditional(_sigma(data), p, x[2], x[3]))


@njit(cache=_CACHE)
def joint_neg_mutual_info(x, data):
    p = orthogonal_frame(x[0], x[1], x[2], x[3], x[4])
    g = inverse_conditional(_sigma(data), p, x[5], x[6])
    return -_mutual_info(g, data[16])


@njit(cache=_CACHE)
def local_neg_mutual_info(x, data):
    p = orthogonal_frame(0.0, 0.0, 1.0, x[0], x[1])
    g = inverse_conditional(_sigma(data), p, x[2], x[3])
    return -_mutual_info(g, data[16])


@njit(cache=_CACHE)
def bside_half_logdet(x, data):
    """``0.5 ln det (A - C (B + mu_B)^-1 C^T)``."""
    det = _det2(bside_conditional(_sigma(data), x[0], x[1]))
    if not det > 0.0:
        return np.inf
    return 0.5 * np.log(det)


@njit(cache=_CACHE)
def entropy_f(x):
    if x <= 1.0:
        return 0.0
    return 0.5 * (x + 1.0) * np.log(0.5 * (x + 1.0)) - 0.5 * (x - 1.0) * np.log(0.5 * (x - 1.0))


@njit(cache=_CACHE)
def bside_vn_entropy(x, data):
    """``F(sqrt det sigma_A)``, von Neumann entropy of the conditional state."""
    det = _det2(bside_conditional(_sigma(data), x[0], x[1]))
    if not det > 0.0:
        return np.inf
    return entropy_f(np.sqrt(det))


KERNELS = (
    joint_half_logdet,
    local_half_logdet,
    joint_neg_mutual_info,
    local_neg_mutual_info,
    bside_half_logdet,
    bside_vn_entropy,
)


def kernel_id(fn):
    """Index of ``fn`` in :data:`KERNELS`, or None for any other callable."""
    for i, k in enumerate(KERNELS):
        if fn is k:
            return i
    return None


@njit(cache=_CACHE)
def evaluate(kind, x, data):
    """Call kernel number ``kind``; lets compiled drivers take a plain integer."""
    if kind == 0:
        return joint_half_logdet(x, data)
    if kind == 1:
        return local_half_logdet(x, data)
    if kind == 2:
        return joint_neg_mutual_info(x, data)
    if kind == 3:
        return local_neg_mutual_info(x, data)
    if kind == 4:
        return bside_half_logdet(x, data)
    return bside_vn_entropy(x, data)
