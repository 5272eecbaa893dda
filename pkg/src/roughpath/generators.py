"""Path generators: Brownian bridges, oscillatory tent packets, a divergence
witness, and smooth test paths.

All generators are pure functions of their parameters (and seed), so outputs
are bit-reproducible and safe to share across threads.
"""

import math

import numpy as np

from .dyadic import DyadicPath
from .errors import BadExponents, NonFinite, ResolutionTooCoarse


def gen_brownian(K: int, seed: int) -> DyadicPath:
    """Standard Brownian motion sampled on the level-K dyadic grid.

    Midpoint (bridge) construction: level j fills the midpoints between the
    level-(j-1) points, each from an independent counter-based stream keyed by
    (seed, j).  Grid values carry the exact Brownian finite-dimensional laws,
    g(0) = 0, and refining K leaves the coarser values unchanged for a fixed
    seed.
    """
    if K < 1:
        raise ResolutionTooCoarse("K must be >= 1")
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    n = 1 << K
    w = np.zeros(n + 1)
    w[n] = _level_normals(seed, 0, 1)[0]
    for j in range(1, K + 1):
        step = 1 << (K - j)
        mids = np.arange(step, n, 2 * step)
        z = _level_normals(seed, j, mids.size)
        w[mids] = 0.5 * (w[mids - step] + w[mids + step]) + 2.0 ** (-(j + 1) / 2) * z
    return DyadicPath(w, K)


def _level_normals(seed: int, level: int, count: int) -> np.ndarray:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, level], dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key))
    return gen.standard_normal(count)


def oscillation_levels(alpha: float, A: float, m_max: int) -> list[int]:
    """Packet frequency offsets n_m: the smallest integers >= (A + alpha*m)/(1 - alpha)."""
    return [math.ceil((A + alpha * m) / (1.0 - alpha) - 1e-12) for m in range(1, m_max + 1)]


def gen_oscillatory(alpha: float, beta: float, A: float, m_max: int, K: int) -> DyadicPath:
    """High-frequency tent-packet path.

    Packet m lives on [2**-m, 2**-m+1] and consists of 2**n_m congruent tents
    of width 2**-(n_m+m) and height 2**-(n_m+m+1)*alpha, with n_m from
    ``oscillation_levels``.  Tent signs are fixed to +1.  The path vanishes at
    every grid point outside the packet supports.
    """
    if not (alpha > 0 and beta > 0 and alpha + beta < 1):
        raise BadExponents("need alpha, beta > 0 and alpha + beta < 1")
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    if A < 0:
        raise ValueError("A must be >= 0")
    n_m = oscillation_levels(alpha, A, m_max)
    needed = n_m[-1] + m_max + 2
    if K < needed:
        raise ResolutionTooCoarse(f"K={K} too coarse; need K >= {needed}")
    w = np.zeros((1 << K) + 1)
    for m in range(1, m_max + 1):
        kappa = n_m[m - 1] + m        # tent level: width 2**-kappa
        height = 2.0 ** (-(kappa + 1) * alpha)
        start = 1 << (K - m)          # grid index of 2**-m
        stop = 1 << (K - m + 1)       # grid index of 2**-(m-1)
        idx = np.arange(start, stop + 1)
        period = 1 << (K - kappa)
        phase = ((idx - start) % period) / period
        w[idx] += height * (1.0 - np.abs(2.0 * phase - 1.0))
    return DyadicPath(w, K)


def counterexample_base_level(alpha: float, beta: float) -> int:
    """Coarsest tent layer index of the divergence witness construction."""
    gamma = alpha + beta
    return math.floor((1.0 / gamma) * math.log2(4.0 / (2.0 ** (1.0 - gamma) - 1.0)) + 1.0)


def gen_counterexample(alpha: float, beta: float, K: int) -> DyadicPath:
    """Path in the alpha-Hölder class whose existence diagnostic diverges.

    Layer k > k0 places, on every level-k dyadic cell inside the geometric
    band J_k = [2**-k(1-gamma), 2**-(k-1)(1-gamma)] (gamma = alpha + beta), a
    tent of height 2**-(k+1)*alpha on the first half of the cell.  Layers run
    to the finest level the grid can represent so every resolvable diagnostic
    level keeps receiving fresh oscillation.
    """
    if not (alpha > 0 and beta > 0 and alpha + beta < 1):
        raise BadExponents("need alpha, beta > 0 and alpha + beta < 1")
    k0 = counterexample_base_level(alpha, beta)
    if K < k0 + 4:
        raise ResolutionTooCoarse(f"K={K} too coarse; need K >= {k0 + 4}")
    gamma = alpha + beta
    w = np.zeros((1 << K) + 1)
    for k in range(k0 + 1, K - 1):
        right = 2.0 ** (-(k - 1) * (1.0 - gamma))
        left = 2.0 ** (-k * (1.0 - gamma))
        scale = 1 << k
        m_lo = math.ceil(left * scale - 1e-9)
        m_hi = math.floor(right * scale + 1e-9) - 1
        if m_hi < m_lo:
            continue
        height = 2.0 ** (-(k + 1) * alpha)
        half = 1 << (K - k - 1)       # samples per half cell
        quarter = 1 << (K - k - 2)
        for m in range(m_lo, m_hi + 1):
            base = m << (K - k)
            ramp = np.arange(quarter + 1) / quarter
            w[base : base + quarter + 1] = height * ramp
            w[base + quarter : base + half + 1] = height * ramp[::-1]
    return DyadicPath(w, K)


_ANALYTIC = {
    "linear": lambda t: t,
    "square": lambda t: t * t,
    "sine": np.sin,
}


def gen_analytic(kind, K: int) -> DyadicPath:
    """Sample a smooth reference path: 'linear', 'square', 'sine', or any
    vectorized callable on [0, 1]."""
    fn = _ANALYTIC.get(kind, kind) if isinstance(kind, str) else kind
    if isinstance(fn, str):
        raise ValueError(f"unknown analytic path kind {kind!r}")
    t = np.linspace(0.0, 1.0, (1 << K) + 1)
    vals = np.asarray(fn(t), dtype=float)
    if not np.isfinite(vals).all():
        raise NonFinite("analytic path produced non-finite samples")
    return DyadicPath(vals, K)
