"""Stochastic oracles: minimum-window sampling and the circle-coverage dual.

Everything is a pure function of (seed, streams, samples): each stream gets
an independent child of the same SeedSequence and the per-stream counts are
merged in stream order, so results are reproducible bit for bit.  Confidence
intervals are Wilson score intervals, which behave correctly near 0 and 1
where the saturation tests live.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exactnum import DomainError

Z_95 = 1.959963984540054  # two-sided 95% normal quantile

_CHUNK = 250_000


@dataclass(frozen=True)
class SimConfig:
    N: int
    k: int
    samples: int
    seed: int = 0
    streams: int = 1

    def __post_init__(self):
        if not 2 <= self.k <= self.N:
            raise DomainError(f"need 2 <= k <= N, got k={self.k}, N={self.N}")
        if self.samples < 1:
            raise DomainError("samples must be >= 1")
        if self.streams < 1:
            raise DomainError("streams must be >= 1")


@dataclass
class CdfEstimate:
    w: float
    p_hat: float
    ci_low: float
    ci_high: float
    samples: int


def wilson_interval(count: int, n: int, z: float = Z_95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion; always brackets count/n."""
    if n < 1:
        raise DomainError("need at least one trial")
    p_hat = count / n
    denom = 1 + z * z / n
    center = (p_hat + z * z / (2 * n)) / denom
    half = z * math.sqrt(p_hat * (1 - p_hat) / n + z * z / (4 * n * n)) / denom
    # the algebraic bounds contain p_hat; guard the float rounding at 0 and 1
    lo = min(max(0.0, center - half), p_hat)
    hi = max(min(1.0, center + half), p_hat)
    return lo, hi


# ---------------------------------------------------------------------------
# Window statistics
# ---------------------------------------------------------------------------


def w_linear(points, k: int) -> float:
    """Minimum width of an interval window containing k of the given points."""
    xs = sorted(points)
    n = len(xs)
    if not 2 <= k <= n:
        raise DomainError(f"need 2 <= k <= len(points), got k={k}, n={n}")
    return min(xs[i + k - 1] - xs[i] for i in range(n - k + 1))


def w_circular(points, k: int) -> float:
    """Minimum width of a circular arc window containing k of the points."""
    xs = sorted(points)
    n = len(xs)
    if not 2 <= k <= n:
        raise DomainError(f"need 2 <= k <= len(points), got k={k}, n={n}")
    best = min(xs[i + k - 1] - xs[i] for i in range(n - k + 1))
    wrap = min(xs[i + k - 1 - n] + 1 - xs[i] for i in range(n - k + 1, n))
    return min(best, wrap)


def sample_w_linear(N: int, k: int, rng) -> float:
    return w_linear(rng.random(N), k)


def sample_w_circular(N: int, k: int, rng) -> float:
    return w_circular(rng.random(N), k)


def _w_batch_from_points(points: np.ndarray, k: int, circular: bool) -> np.ndarray:
    xs = np.sort(np.atleast_2d(points), axis=1)
    n = xs.shape[1]
    w = (xs[:, k - 1 :] - xs[:, : n - k + 1]).min(axis=1)
    if circular:
        wrap = (xs[:, : k - 1] + 1.0 - xs[:, n - k + 1 :]).min(axis=1)
        w = np.minimum(w, wrap)
    return w


def _w_batch(rng, m: int, N: int, k: int, circular: bool) -> np.ndarray:
    return _w_batch_from_points(rng.random((m, N)), k, circular)


def _stream_sizes(samples: int, streams: int) -> list[int]:
    base, extra = divmod(samples, streams)
    return [base + (1 if i < extra else 0) for i in range(streams)]


def empirical_cdf(config: SimConfig, kind: str, w_grid) -> list[CdfEstimate]:
    """One sampling pass; counts W <= w for every grid value at once."""
    if kind not in ("linear", "circular"):
        raise DomainError(f"kind must be 'linear' or 'circular', got {kind!r}")
    grid = np.asarray(sorted(float(w) for w in w_grid))
    counts = np.zeros(len(grid), dtype=np.int64)
    children = np.random.SeedSequence(config.seed).spawn(config.streams)
    for size, child in zip(_stream_sizes(config.samples, config.streams), children):
        rng = np.random.default_rng(child)
        remaining = size
        while remaining > 0:
            m = min(_CHUNK, remaining)
            remaining -= m
            w = _w_batch(rng, m, config.N, config.k, kind == "circular")
            counts += (w[:, None] <= grid[None, :]).sum(axis=0)
    out = []
    for wv, c in zip(grid, counts):
        lo, hi = wilson_interval(int(c), config.samples)
        out.append(CdfEstimate(float(wv), c / config.samples, lo, hi, config.samples))
    return out


# ---------------------------------------------------------------------------
# Coverage dual
# ---------------------------------------------------------------------------


def min_coverage_depth(starts: np.ndarray, arc_len: float) -> np.ndarray:
    """Minimum coverage depth over the circle, per row of arc start points.

    Each row places arcs [u, u + arc_len) on the unit circle.  The depth at
    angle 0 counts wrapping arcs; sweeping the 2N endpoints in angular order
    with +1/-1 events gives the depth on every intermediate segment.  Only
    segments of positive length count (coincident endpoints would otherwise
    produce spurious zero-length dips).
    """
    starts = np.atleast_2d(starts)
    raw_ends = starts + arc_len
    wrapped = raw_ends > 1.0
    ends = np.where(wrapped, raw_ends - 1.0, raw_ends)
    depth0 = wrapped.sum(axis=1)
    positions = np.concatenate([starts, ends], axis=1)
    deltas = np.concatenate(
        [np.ones_like(starts, dtype=np.int64), -np.ones_like(ends, dtype=np.int64)], axis=1
    )
    # stable sort keeps +1 (start) events ahead of -1 at coincident positions
    order = np.argsort(positions, axis=1, kind="stable")
    pos_sorted = np.take_along_axis(positions, order, axis=1)
    running = np.cumsum(np.take_along_axis(deltas, order, axis=1), axis=1)
    seg_len = np.diff(pos_sorted, axis=1, append=pos_sorted[:, :1] + 1.0)
    depth = depth0[:, None] + running
    n_arcs = starts.shape[1]
    return np.where(seg_len > 0, depth, n_arcs + 1).min(axis=1)


def coverage_dual(N: int, k: int, w: float, samples: int, seed: int = 0, streams: int = 1) -> CdfEstimate:
    """Estimate P(N arcs of length 1-w cover every point >= N+1-k times).

    This coverage probability equals the survival function of the circular
    scan statistic, 1 - P(W_c(k) <= w).
    """
    if not 2 <= k <= N:
        raise DomainError(f"need 2 <= k <= N, got k={k}, N={N}")
    if not 0 < w < 1:
        raise DomainError(f"need 0 < w < 1, got {w}")
    arc_len = 1.0 - w
    need = N + 1 - k
    hits = 0
    children = np.random.SeedSequence(seed).spawn(streams)
    for size, child in zip(_stream_sizes(samples, streams), children):
        rng = np.random.default_rng(child)
        remaining = size
        while remaining > 0:
            m = min(_CHUNK, remaining)
            remaining -= m
            starts = rng.random((m, N))
            hits += int((min_coverage_depth(starts, arc_len) >= need).sum())
    lo, hi = wilson_interval(hits, samples)
    return CdfEstimate(w, hits / samples, lo, hi, samples)
