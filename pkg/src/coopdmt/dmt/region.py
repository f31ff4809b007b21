"""Numerical infima of outage-region exponents.

Each protocol's high-SNR outage event is a region of exponential orders
``(v, u, f)``; its diversity is the infimum of the summed orders over that
region. The searches here are deterministic nested grids: a coarse grid,
then ``PASSES - 1`` refinements around the best candidates, each 10x finer.
Region boundaries count as feasible (infima over the closure).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

__all__ = [
    "ExponentTuple",
    "nested_grid_min",
    "region_infimum_naf",
    "region_infimum_ddf",
    "region_infimum_ddf_multi",
    "region_infimum_cma",
]

PASSES = 3
TOP_K = 8
FEAS_TOL = 1e-12
MAX_N = 4


@dataclass(frozen=True)
class ExponentTuple:
    """Exponential orders of ``1/|g_j|^2`` (``v``) and ``1/|h|^2`` (``u``) plus DDF fractions."""

    v: tuple
    u: tuple = ()
    f: tuple = ()

    def __post_init__(self):
        if min(self.v + self.u + self.f, default=0.0) < 0:
            raise ValueError("exponential orders and fractions are nonnegative")
        if any(b < a for a, b in zip(self.f, self.f[1:])):
            raise ValueError("cumulative fractions must be nondecreasing")


def _grid(lo, hi, step):
    axes = [np.unique(np.clip(np.append(np.arange(a, b, s), b), a, b))
            for a, b, s in zip(lo, hi, step)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def nested_grid_min(fn, lo, hi, resolution: float, passes: int = PASSES, top_k: int = TOP_K):
    """Minimize ``fn`` (vectorized over rows, ``inf`` when infeasible) over a box.

    Returns ``(value, argmin)``. The final grid step equals ``resolution``.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    step = np.minimum(resolution * 10.0 ** (passes - 1), np.maximum(hi - lo, resolution))
    pts = _grid(lo, hi, step)
    vals = fn(pts)
    best_pts, best_vals = _top(pts, vals, top_k)
    for _ in range(passes - 1):
        new_step = step / 10.0
        cand = [_grid(np.maximum(c - step, lo), np.minimum(c + step, hi), new_step)
                for c in best_pts]
        pts = np.concatenate(cand + [best_pts])
        vals = fn(pts)
        best_pts, best_vals = _top(pts, vals, top_k)
        step = new_step
    if not np.isfinite(best_vals[0]):
        raise RuntimeError("no feasible grid point")
    return float(best_vals[0]), best_pts[0]


def _top(pts, vals, k):
    order = np.lexsort((np.arange(len(vals)), vals))[:k]
    return pts[order], vals[order]


def _check_r(r):
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"multiplexing gain {r} outside [0, 1]")


def region_infimum_naf(r: float, resolution: float = 1e-3) -> float:
    """Single-relay NAF over ``(v1, s)`` with ``s = v2 + u``.

    Feasible when ``max(2 (1 - v1), 1 - s)^+ <= 2 r``; minimizes ``v1 + s``.
    """
    _check_r(r)

    def fn(p):
        v1, s = p[:, 0], p[:, 1]
        ok = np.maximum(np.maximum(2 * (1 - v1), 1 - s), 0.0) <= 2 * r + FEAS_TOL
        return np.where(ok, v1 + s, np.inf)

    return nested_grid_min(fn, [0, 0], [2, 2], resolution)[0]


def region_infimum_ddf(r: float, resolution: float = 1e-3) -> float:
    """Single-relay DDF over ``(f, v1)``, with ``v2`` solved exactly.

    ``f`` is the listening fraction, the relay link order is ``u = 1 - r/f``
    and the region is ``f (1-v1)^+ + (1-f) (1-min(v1, v2))^+ <= r``.
    """
    _check_r(r)
    if r == 0:
        return 2.0

    def fn(p):
        f, v1 = p[:, 0], p[:, 1]
        slack = r - f * np.maximum(1 - v1, 0.0)
        rest = 1.0 - f
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(rest > 0, slack / np.where(rest > 0, rest, 1.0), np.inf)
        ok = (slack >= -FEAS_TOL) & (np.maximum(1 - v1, 0.0) <= q + FEAS_TOL)
        v2 = np.where(rest > 0, np.maximum(1.0 - q, 0.0), 0.0)
        return np.where(ok, v1 + v2 + (1.0 - r / f), np.inf)

    return nested_grid_min(fn, [r, 0], [1, 2], resolution)[0]


def _order_simplex_min(cum, target):
    """Least ``sum(vt)`` with ``1 >= vt_1 >= ... >= vt_N >= 0`` and ``sum(w_j vt_j) >= target``.

    ``cum`` holds the cumulative weights ``F_k = w_1 + ... + w_k`` (rows are
    independent problems). Writing ``vt`` as a combination of the step
    vectors ``(1,..,1,0,..)`` turns this into a two-constraint LP whose
    vertices use one or two steps.
    """
    m, n = cum.shape
    if target <= 0:
        return np.zeros(m)
    k = np.arange(1, n + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        y = target / cum
    best = np.min(np.where((cum > 0) & (y <= 1.0 + FEAS_TOL), k * y, np.inf), axis=1)
    for a, b in combinations(range(n), 2):
        fa, fb = cum[:, a], cum[:, b]
        den = fb - fa
        with np.errstate(divide="ignore", invalid="ignore"):
            yb = (target - fa) / den
            cost = (a + 1) * (1 - yb) + (b + 1) * yb
        ok = (den > 0) & (yb >= -FEAS_TOL) & (yb <= 1.0 + FEAS_TOL)
        best = np.minimum(best, np.where(ok, cost, np.inf))
    return best


def region_infimum_ddf_multi(n: int, r: float, resolution: float = 1e-3) -> float:
    """DDF with ``n - 1`` relays over the cumulative decode fractions.

    Relay ``j`` can only have decoded by ``f_{j-1}`` if its source-link order
    is at least ``1 - r / f_{j-1}``, which is the only inter-node cost; the
    destination orders are then optimized exactly for each fraction vector.
    """
    if not 2 <= n <= MAX_N:
        raise ValueError(f"n must lie in [2, {MAX_N}]")
    _check_r(r)
    if r == 0:
        return float(n)

    def fn(p):
        ok = np.all(np.diff(p, axis=1) >= 0, axis=1) if p.shape[1] > 1 else np.ones(len(p), bool)
        with np.errstate(divide="ignore"):
            u = np.sum(np.maximum(1.0 - r / p, 0.0), axis=1)
        cum = np.concatenate([p, np.ones((len(p), 1))], axis=1)
        return np.where(ok, u + _order_simplex_min(cum, 1.0 - r), np.inf)

    d = n - 1
    return nested_grid_min(fn, [0.0] * d, [1.0] * d, resolution)[0]


def region_infimum_cma(n: int, r: float, resolution: float = 1e-3) -> float:
    """Cooperative multiple access, minimized over the worst source subset.

    For a subset ``I`` of size ``m`` the region is
    ``sum_{j in I} ((m-1) v_j + sum_{i not in I} min(v_j, s_i)) >= m (N-1)(1-r)``
    where ``s_i`` merges ``v_i`` with the largest order of the links into
    node ``i``; the cost is ``sum_{j in I} v_j + sum_{i not in I} s_i``.
    By symmetry one subset per size suffices.
    """
    if not 2 <= n <= MAX_N:
        raise ValueError(f"n must lie in [2, {MAX_N}]")
    _check_r(r)
    need_per = (n - 1) * (1.0 - r)
    best = np.inf
    for m in range(1, n + 1):

        def fn(p, m=m):
            v, s = p[:, :m], p[:, m:]
            lhs = (m - 1) * v.sum(axis=1)
            if s.shape[1]:
                lhs = lhs + np.minimum(v[:, :, None], s[:, None, :]).sum(axis=(1, 2))
            ok = lhs >= m * need_per - FEAS_TOL
            return np.where(ok, p.sum(axis=1), np.inf)

        best = min(best, nested_grid_min(fn, [0.0] * n, [2.0] * n, resolution)[0])
    return float(best)
