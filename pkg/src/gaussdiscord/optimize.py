"""Seeded multi-start bounded Nelder-Mead and a brute-force grid oracle.

The simplex core is written once in plain Python/NumPy and compiled with
numba for the measurement kernels in :mod:`gaussdiscord._kernels`; any other
Python callable runs through the uncompiled copy of the same routine, so both
paths follow identical arithmetic.

Non-periodic coordinates are projected onto their box after every trial
move.  Periodic coordinates move freely (the objective is periodic in them)
and are wrapped into ``[lo, hi)`` only in the returned argmin.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numba import njit, types
from numba.extending import overload
from scipy.stats import qmc

from . import _kernels

XATOL = 1e-10
FATOL = 1e-12
# looser stopping rule for the exploratory pass over all starts
SCOUT_XATOL = 1e-5
SCOUT_FATOL = 1e-9
MAX_EVALS_PER_DIM = 4000
MAX_RESTARTS = 4
POLISH_TOP = 4
GRID_BUDGET = 100_000_000


class EvaluationError(FloatingPointError):
    """The objective returned a non-finite value."""

    def __init__(self, point):
        self.point = np.array(point, dtype=float)
        super().__init__(f"objective is non-finite at {self.point.tolist()}")


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class SearchSpace:
    bounds: tuple[tuple[float, float], ...]
    periodic_mask: tuple[bool, ...] = field(default=())

    def __post_init__(self):
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        object.__setattr__(self, "bounds", bounds)
        mask = tuple(bool(m) for m in self.periodic_mask) or (False,) * len(bounds)
        object.__setattr__(self, "periodic_mask", mask)
        if len(mask) != len(bounds):
            raise ConfigurationError("periodic_mask must have one flag per bound")
        for lo, hi in bounds:
            if not lo < hi:
                raise ConfigurationError(f"empty interval [{lo}, {hi}]")

    @property
    def dim(self) -> int:
        return len(self.bounds)

    @property
    def lo(self) -> np.ndarray:
        return np.array([b[0] for b in self.bounds])

    @property
    def hi(self) -> np.ndarray:
        return np.array([b[1] for b in self.bounds])

    @property
    def periodic(self) -> np.ndarray:
        return np.array(self.periodic_mask, dtype=np.bool_)

    def wrap(self, x) -> np.ndarray:
        """Fold periodic coordinates into ``[lo, hi)`` and clip the rest."""
        x = np.array(x, dtype=float)
        lo, hi, per = self.lo, self.hi, self.periodic
        width = hi - lo
        x[per] = lo[per] + np.mod(x[per] - lo[per], width[per])
        x[~per] = np.clip(x[~per], lo[~per], hi[~per])
        return x


@dataclass(frozen=True)
class OptResult:
    argmin: np.ndarray
    value: float
    evaluations: int
    converged: bool


def _call(f, x, data):
    return f(x, data)


@overload(_call)
def _call_compiled(f, x, data):
    # compiled drivers receive kernels by their integer id, which keeps the
    # signature free of function types and the on-disk cache valid
    if isinstance(f, types.Integer):
        return lambda f, x, data: _kernels.evaluate(f, x, data)
    return None


@njit(cache=True)
def _project(x, lo, hi, periodic):
    for i in range(x.size):
        if not periodic[i]:
            if x[i] < lo[i]:
                x[i] = lo[i]
            elif x[i] > hi[i]:
                x[i] = hi[i]
    return x


@njit(cache=True)
def _expand(y, base, active):
    x = base.copy()
    for k in range(active.size):
        x[active[k]] = y[k]
    return x


def _nelder_mead(f, x0, data, base, active, lo, hi, periodic, step, xatol, fatol, max_evals):
    """Adaptive-coefficient Nelder-Mead with projection onto the box.

    The simplex lives in the coordinates listed in ``active``; the objective
    sees them scattered into a copy of ``base``.  Returns
    ``(y, fy, evals, converged, ok)``; ``ok`` is False when the objective
    produced a non-finite value, in which case ``y`` is the offending point.
    """
    n = x0.size
    alpha = 1.0
    beta = 1.0 + 2.0 / n
    gamma = 0.75 - 1.0 / (2.0 * n)
    delta = 1.0 - 1.0 / n

    sim = np.empty((n + 1, n))
    fs = np.empty(n + 1)
    sim[0] = _project(x0.copy(), lo, hi, periodic)
    for i in range(n):
        v = sim[0].copy()
        v[i] = v[i] + step[i]
        if not periodic[i] and v[i] > hi[i]:
            v[i] = sim[0][i] - step[i]
        sim[i + 1] = _project(v, lo, hi, periodic)
    evals = 0
    for i in range(n + 1):
        fs[i] = _call(f, _expand(sim[i], base, active), data)
        evals += 1
        if not np.isfinite(fs[i]):
            return sim[i].copy(), fs[i], evals, False, False

    converged = False
    while evals < max_evals:
        order = np.argsort(fs, kind="mergesort")
        sim = sim[order]
        fs = fs[order]

        diam = 0.0
        for i in range(1, n + 1):
            for j in range(n):
                d = abs(sim[i, j] - sim[0, j])
                if d > diam:
                    diam = d
        if diam <= xatol and fs[n] - fs[0] <= fatol:
            converged = True
            break

        centroid = np.zeros(n)
        for i in range(n):
            centroid += sim[i]
        centroid /= n

        xr = _project(centroid + alpha * (centroid - sim[n]), lo, hi, periodic)
        fr = _call(f, _expand(xr, base, active), data)
        evals += 1
        if not np.isfinite(fr):
            return xr, fr, evals, False, False

        if fr < fs[0]:
            xe = _project(centroid + beta * (xr - centroid), lo, hi, periodic)
            fe = _call(f, _expand(xe, base, active), data)
            evals += 1
            if not np.isfinite(fe):
                return xe, fe, evals, False, False
            if fe < fr:
                sim[n] = xe
                fs[n] = fe
            else:
                sim[n] = xr
                fs[n] = fr
            continue
        if fr < fs[n - 1]:
            sim[n] = xr
            fs[n] = fr
            continue

        if fr < fs[n]:
            xc = _project(centroid + gamma * (xr - centroid), lo, hi, periodic)
            fc = _call(f, _expand(xc, base, active), data)
            evals += 1
            if not np.isfinite(fc):
                return xc, fc, evals, False, False
            accept = fc <= fr
        else:
            xc = _project(centroid - gamma * (centroid - sim[n]), lo, hi, periodic)
            fc = _call(f, _expand(xc, base, active), data)
            evals += 1
            if not np.isfinite(fc):
                return xc, fc, evals, False, False
            accept = fc < fs[n]
        if accept:
            sim[n] = xc
            fs[n] = fc
            continue

        for i in range(1, n + 1):
            sim[i] = _project(sim[0] + delta * (sim[i] - sim[0]), lo, hi, periodic)
            fs[i] = _call(f, _expand(sim[i], base, active), data)
            evals += 1
            if not np.isfinite(fs[i]):
                return sim[i].copy(), fs[i], evals, False, False

    best = 0
    for i in range(1, n + 1):
        if fs[i] < fs[best]:
            best = i
    return sim[best].copy(), fs[best], evals, converged, True


_nelder_mead_compiled = njit(cache=True)(_nelder_mead)




def _run_local(objective, y0, data, frame, step, max_evals, compiled, xatol=XATOL, fatol=FATOL):
    base, active, lo, hi, per = frame
    nm = _nelder_mead_compiled if compiled else _nelder_mead
    y, fy, evals, converged, ok = nm(objective, y0, data, base, active, lo, hi, per, step, xatol, fatol, max_evals)
    if not ok:
        raise EvaluationError(_expand(np.asarray(y), base, active))
    return np.asarray(y), float(fy), int(evals), bool(converged)


def default_starts(dim: int) -> int:
    return 32 if dim >= 5 else 16


def start_points(space: SearchSpace, seed: int, n_starts: int | None = None) -> np.ndarray:
    """Scrambled Sobol points in the box, deterministic for a given seed."""
    n = default_starts(space.dim) if n_starts is None else n_starts
    if n == 0:
        return np.empty((0, space.dim))
    sampler = qmc.Sobol(d=space.dim, scramble=True, seed=seed)
    m = int(math.ceil(math.log2(max(n, 2))))
    pts = sampler.random_base2(m)[:n]
    return qmc.scale(pts, space.lo, space.hi)


def minimize(
    objective: Callable,
    space: SearchSpace,
    seed: int = 0,
    args=None,
    n_starts: int | None = None,
    extra_starts: Sequence[Sequence[float]] = (),
    n_polish: int = POLISH_TOP,
    fixed: dict[int, float] | None = None,
) -> OptResult:
    """Minimize ``objective`` over ``space`` from many low-discrepancy starts.

    ``objective`` is called as ``objective(x)`` or, when ``args`` is given,
    ``objective(x, args)``.  Compiled kernels from :mod:`gaussdiscord._kernels`
    must be given their ``data`` array through ``args``.

    Every start (``extra_starts`` first, then ``n_starts`` Sobol points) runs
    the simplex to the loose ``SCOUT_XATOL``/``SCOUT_FATOL``.  The ``n_polish``
    best runs are then restarted from their own optimum with a fresh, smaller
    simplex and the full ``XATOL``/``FATOL`` until a restart stops improving.
    Ties go to the earliest start.

    ``fixed`` pins coordinates to given values; the simplex then runs in the
    remaining ones and Sobol starts are drawn in that subspace.
    """
    kind = _kernels.kernel_id(objective)
    compiled = kind is not None and args is not None
    if compiled:
        data = np.ascontiguousarray(args, dtype=float)
        fun = kind
    else:
        data = np.zeros(0)
        if args is None:
            fun = lambda x, _d: float(objective(x))  # noqa: E731
        else:
            fun = lambda x, _d: float(objective(x, args))  # noqa: E731

    fixed = dict(fixed or {})
    active = np.array([i for i in range(space.dim) if i not in fixed], dtype=np.int64)
    if active.size == 0:
        raise ConfigurationError("every coordinate is fixed")
    base = np.zeros(space.dim)
    for i, v in fixed.items():
        base[i] = v
    sub = SearchSpace(
        bounds=tuple(space.bounds[i] for i in active),
        periodic_mask=tuple(space.periodic_mask[i] for i in active),
    )
    frame = (base, active, sub.lo, sub.hi, sub.periodic)

    step0 = 0.1 * (sub.hi - sub.lo)
    max_evals = MAX_EVALS_PER_DIM * sub.dim
    starts = [sub.wrap(np.asarray(s, dtype=float)[active]) for s in extra_starts]
    starts.extend(start_points(sub, seed, n_starts))
    if not starts:
        raise ConfigurationError("no start points")

    runs = []
    total = 0
    for x0 in starts:
        x, fx, evals, conv = _run_local(
            fun, np.asarray(x0, dtype=float), data, frame, step0, max_evals, compiled, SCOUT_XATOL, SCOUT_FATOL
        )
        total += evals
        runs.append((fx, x, conv))

    order = sorted(range(len(runs)), key=lambda i: (runs[i][0], i))
    best_i, best = None, None
    for i in order[: max(1, n_polish)]:
        fx, x, conv = runs[i]
        step = step0
        for _ in range(MAX_RESTARTS):
            step = np.maximum(0.1 * step, 1e3 * XATOL)
            x2, f2, evals, conv2 = _run_local(fun, x, data, frame, step, max_evals, compiled)
            total += evals
            improved = f2 < fx - FATOL
            if f2 <= fx:
                x, fx, conv = x2, f2, conv2
            if not improved:
                break
        if best is None or fx < best[0] or (fx == best[0] and i < best_i):
            best_i, best = i, (fx, x, conv)

    argmin = _expand(sub.wrap(best[1]), base, active)
    value = _kernels.evaluate(fun, argmin, data) if compiled else fun(argmin, data)
    total += 1
    if not np.isfinite(value):
        raise EvaluationError(argmin)
    return OptResult(argmin=argmin, value=float(value), evaluations=total, converged=best[2])


@njit(cache=True)
def _grid_scan(kind, data, axes, counts):
    dim = counts.size
    idx = np.zeros(dim, dtype=np.int64)
    x = np.empty(dim)
    best = np.inf
    best_x = np.empty(dim)
    total = 1
    for c in counts:
        total *= c
    for flat in range(total):
        rem = flat
        for k in range(dim - 1, -1, -1):
            idx[k] = rem % counts[k]
            rem //= counts[k]
        for k in range(dim):
            x[k] = axes[k, idx[k]]
        v = _kernels.evaluate(kind, x, data)
        if v < best:
            best = v
            best_x[:] = x
    return best_x, best, total


def grid_oracle(objective: Callable, space: SearchSpace, points_per_dim: int, args=None) -> OptResult:
    """Exhaustive evaluation on the tensor grid (endpoints included)."""
    if points_per_dim < 3:
        raise ConfigurationError("points_per_dim must be at least 3")
    total = points_per_dim**space.dim
    if total > GRID_BUDGET:
        raise ConfigurationError(f"grid of {total} points exceeds budget {GRID_BUDGET}")
    axes = np.array([np.linspace(lo, hi, points_per_dim) for lo, hi in space.bounds])
    kind = _kernels.kernel_id(objective)
    if kind is not None and args is not None:
        counts = np.full(space.dim, points_per_dim, dtype=np.int64)
        x, value, n = _grid_scan(kind, np.ascontiguousarray(args, dtype=float), axes, counts)
        return OptResult(argmin=np.asarray(x), value=float(value), evaluations=int(n), converged=True)

    best_x, best_f = None, np.inf
    for pt in itertools.product(*axes):
        x = np.array(pt)
        v = float(objective(x) if args is None else objective(x, args))
        if v < best_f:
            best_x, best_f = x, v
    return OptResult(argmin=best_x, value=best_f, evaluations=total, converged=True)
