"""Brute-force estimates of the symmetry coefficient.

Every estimate is the Bregman ratio D(x, y) / D(y, x) of an explicit pair,
so it can only over-estimate the infimum.  These routines deliberately
avoid the root-finding path in :mod:`bregsym.symmetry`; they search the
ratio directly.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .catalog import PowerAbs, ReferenceFunction, as_points, bregman
from .symmetry import bregman_ratio_1d

BLOCK = 4096
_MIN_DIVERGENCE = 1e-300
# pairs closer than this (relative) are dominated by rounding in D
_MIN_SEPARATION = 1e-6
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, eq=False)
class OracleEstimate:
    alpha_hat: float
    witness_x: np.ndarray
    witness_y: np.ndarray
    samples: int
    seed: int
    refined: bool


def ratio(f: ReferenceFunction, x, y) -> float:
    """D_f(x, y) / D_f(y, x) for x != y."""
    X, _ = as_points(f, x)
    Y, _ = as_points(f, y)
    if np.array_equal(X, Y):
        raise ValueError("ratio is undefined for x == y")
    return float(bregman(f, X, Y) / bregman(f, Y, X))


def _golden_max(fun, a, b, tol=1e-13, max_iter=200):
    """Maximize a unimodal function on [a, b] by golden-section search."""
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fun(d)
    return c if fc >= fd else d


def alpha_grid_1d(p: float, resolution: int = 100_000, refine: bool = True) -> OracleEstimate:
    """alpha(|.|^p) for p > 2 as the minimum of min(f_p, 1/f_p) over a uniform
    grid on [-1, 1], optionally sharpened by golden-section search on the
    grid cell (f_p is unimodal there)."""
    p = float(p)
    if not p > 2.0:
        raise ValueError("alpha_grid_1d needs p > 2; reduce p < 2 by its conjugate first")
    if int(resolution) != resolution or resolution < 10:
        raise ValueError("resolution must be an integer >= 10")
    u = np.linspace(-1.0, 1.0, int(resolution))
    fu = bregman_ratio_1d(p, u)
    i = int(np.argmin(np.minimum(fu, 1.0 / fu)))
    best = float(u[i])
    if refine:
        lo = float(u[max(i - 1, 0)])
        hi = min(float(u[min(i + 1, len(u) - 1)]), 0.0)
        if lo < hi:
            cand = _golden_max(lambda t: bregman_ratio_1d(p, t), lo, hi)
            if bregman_ratio_1d(p, cand) > bregman_ratio_1d(p, best):
                best = cand
    h = PowerAbs(p)
    # D(1, u) / D(u, 1) = 1 / f_p(u)
    if bregman_ratio_1d(p, best) >= 1.0:
        wx, wy = np.array([1.0]), np.array([best])
    else:
        wx, wy = np.array([best]), np.array([1.0])
    return OracleEstimate(ratio(h, wx, wy), wx, wy, int(resolution), 0, bool(refine))


def quasiconcavity_check(p: float, grid_size: int = 1001) -> bool:
    """True when f_p sampled on [-1, 1] rises to a single peak at some u < 0
    and then falls, up to a 1e-12 relative tolerance."""
    p = float(p)
    if not p > 2.0:
        raise ValueError("quasiconcavity_check needs p > 2")
    if int(grid_size) != grid_size or grid_size < 100:
        raise ValueError("grid_size must be an integer >= 100")
    u = np.linspace(-1.0, 1.0, int(grid_size))
    fu = bregman_ratio_1d(p, u)
    if not np.all(np.isfinite(fu)):
        return False
    tol = 1e-12 * float(np.max(np.abs(fu)))
    k = int(np.argmax(fu))
    diffs = np.diff(fu)
    rising = np.all(diffs[:k] >= -tol)
    falling = np.all(diffs[k:] <= tol)
    return bool(rising and falling and u[k] < 0.0)


# ---------------------------------------------------------------------------
# sampling in R^n

def _block_rng(seed: int, block: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(block,))
    return np.random.Generator(np.random.Philox(ss))


def _draw(rng, count, dim):
    out = []
    for _ in range(2):
        d = rng.standard_normal((count, dim))
        n = np.linalg.norm(d, axis=1, keepdims=True)
        n[n == 0.0] = 1.0
        mag = 10.0 ** rng.uniform(-3.0, 3.0, size=(count, 1))
        out.append(d / n * mag)
    return out


def _pair_ratios(f, X, Y):
    """Directed ratio D(X, Y) / D(Y, X) per row; inf where the pair is rejected."""
    dxy = f.divergence(X, Y)
    dyx = f.divergence(Y, X)
    sep = np.linalg.norm(X - Y, axis=-1)
    size = np.linalg.norm(X, axis=-1) + np.linalg.norm(Y, axis=-1)
    ok = (dxy > _MIN_DIVERGENCE) & (dyx > _MIN_DIVERGENCE) & (sep >= _MIN_SEPARATION * size)
    ok &= np.isfinite(dxy) & np.isfinite(dyx)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        r = np.where(ok, dxy / np.where(ok, dyx, 1.0), np.inf)
    return r


def _scan_block(f, seed, block, count):
    X, Y = _draw(_block_rng(seed, block), BLOCK, f.dim)
    X, Y = X[:count], Y[:count]
    r = _pair_ratios(f, X, Y)
    r_rev = _pair_ratios(f, Y, X)
    i = int(np.argmin(r))
    j = int(np.argmin(r_rev))
    if r_rev[j] < r[i]:
        return float(r_rev[j]), Y[j], X[j]
    return float(r[i]), X[i], Y[i]


def _refine(f, x, y, best, levels, max_sweeps=50):
    n = f.dim
    z = np.concatenate([x, y])
    for level in range(levels):
        s = 0.5 ** (level + 1)
        for _ in range(max_sweeps):
            cands = []
            for i in range(2 * n):
                for fac in (1.0 + s, 1.0 - s):
                    c = z.copy()
                    c[i] *= fac
                    cands.append(c)
            for part in (slice(0, n), slice(n, 2 * n)):
                for fac in (1.0 + s, 1.0 - s):
                    c = z.copy()
                    c[part] *= fac
                    cands.append(c)
            C = np.array(cands)
            r = _pair_ratios(f, C[:, :n], C[:, n:])
            k = int(np.argmin(r))
            if not r[k] < best * (1.0 - 64.0 * np.finfo(float).eps):
                break
            best, z = float(r[k]), C[k]
    return z[:n], z[n:]


def alpha_sample_nd(f: ReferenceFunction, samples: int = 100_000, seed: int = 0,
                    refine_steps: int = 40, workers: int = 1) -> OracleEstimate:
    """Sampled upper estimate of alpha(f).

    Pairs (x, y) have independent uniformly random directions and norms
    log-uniform on [1e-3, 1e3].  Sample blocks use counter-style streams
    keyed by (seed, block), so any sample count reproduces the prefix of a
    larger run and the result does not depend on ``workers``.  The best pair
    is then improved by ``refine_steps`` levels of multiplicative coordinate
    search with steps 2^-1, 2^-2, ...
    """
    if int(samples) != samples or samples < 1:
        raise ValueError("samples must be a positive integer")
    if int(seed) != seed or seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    if int(refine_steps) != refine_steps or refine_steps < 0:
        raise ValueError("refine_steps must be a nonnegative integer")
    samples, seed = int(samples), int(seed)
    nblocks = -(-samples // BLOCK)
    counts = [min(BLOCK, samples - b * BLOCK) for b in range(nblocks)]

    def job(b):
        return _scan_block(f, seed, b, counts[b])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            results = list(pool.map(job, range(nblocks)))
    else:
        results = [job(b) for b in range(nblocks)]
    # first block wins ties
    best, x, y = min(results, key=lambda t: t[0])
    if not math.isfinite(best):
        raise ArithmeticError("no admissible sample pair was drawn")
    if refine_steps:
        x, y = _refine(f, x, y, best, int(refine_steps))
    x, y = np.array(x), np.array(y)
    return OracleEstimate(ratio(f, x, y), x, y, samples, seed, bool(refine_steps))
