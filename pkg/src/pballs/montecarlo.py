"""Monte Carlo oracle: exact uniform sampling on B_p^n and estimation of f(n, p).

Sampling uses the generalized-normal construction: draw G_i ~ Gamma(1/p)
(so that sign_i * G_i^{1/p} has density proportional to exp(-|u|^p)), an
independent standard exponential w, and set

    x_i = sign_i * (G_i / (sum_j G_j + w))^{1/p},

which is exactly uniform on the unit p-ball; p = inf reduces to independent
uniforms on [-1, 1].  Streams are counter-based (Philox keyed by
(seed, stream index)) and combined in index order, so estimates are
deterministic for a given (seed, streams) no matter how work is scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pball import as_exponent, check_dimension

__all__ = ["MCConfig", "MCEstimate", "sample_ball", "estimate_f", "estimate_f_factored"]

# Fixed sub-batch height; part of the deterministic draw order.
_CHUNK_ROWS = 1 << 17


@dataclass(frozen=True)
class MCConfig:
    """Sample count, seed, and independent substream count."""

    samples: int = 1_000_000
    seed: int = 0
    streams: int = 8

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.streams < 1:
            raise ValueError("streams must be >= 1")
        if self.samples % self.streams:
            raise ValueError(
                f"samples ({self.samples}) must be divisible by streams ({self.streams})"
            )


@dataclass(frozen=True)
class MCEstimate:
    """Empirical mean with its standard error (unbiased sample variance)."""

    mean: float
    std_error: float
    samples: int


def _stream_rng(seed: int, key: tuple) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=seed, spawn_key=key)
    return np.random.Generator(np.random.Philox(seq))


def sample_ball(n, p, rng: np.random.Generator, size: int | None = None):
    """Draw uniform points from the unit p-ball in R^n.

    Returns shape (n,) for size=None, else (size, n).  Membership
    sum |x_i|^p <= 1 holds by construction.
    """
    n = check_dimension(n)
    e = as_exponent(p)
    m = 1 if size is None else int(size)
    if m < 1:
        raise ValueError("size must be >= 1")
    if math.isinf(e.p):
        x = rng.uniform(-1.0, 1.0, size=(m, n))
    else:
        inv_p = 1.0 / e.p
        g = rng.standard_gamma(inv_p, size=(m, n))
        signs = 2.0 * rng.integers(0, 2, size=(m, n)).astype(np.float64) - 1.0
        w = rng.standard_exponential(size=m)
        radius = (g.sum(axis=1) + w) ** inv_p
        x = signs * g**inv_p / radius[:, None]
    return x[0] if size is None else x


class _MeanAccumulator:
    """Streaming mean/variance from per-chunk sums, combined in call order."""

    def __init__(self):
        self.total = 0.0
        self.total_sq = 0.0
        self.count = 0

    def add(self, values: np.ndarray):
        self.total += float(values.sum())
        self.total_sq += float((values * values).sum())
        self.count += values.size

    def estimate(self) -> MCEstimate:
        mean = self.total / self.count
        if self.count > 1:
            var = max(self.total_sq - self.count * mean * mean, 0.0) / (self.count - 1)
        else:
            var = 0.0
        return MCEstimate(mean, math.sqrt(var / self.count), self.count)


def _stream_chunks(per_stream: int):
    done = 0
    while done < per_stream:
        m = min(_CHUNK_ROWS, per_stream - done)
        yield m
        done += m


def estimate_f(n, p, config: MCConfig = MCConfig()) -> MCEstimate:
    """Estimate f(n, p) as the mean of <x, y>^2 over independent uniform pairs.

    x is uniform on B_p^n, y on B_q^n with q the conjugate exponent; the
    estimator is unbiased for the normalized double integral defining f.
    """
    n = check_dimension(n)
    e = as_exponent(p)
    eq = e.conjugate()
    per_stream = config.samples // config.streams
    acc = _MeanAccumulator()
    for stream in range(config.streams):
        rng = _stream_rng(config.seed, (stream,))
        for m in _stream_chunks(per_stream):
            x = sample_ball(n, e, rng, size=m)
            y = sample_ball(n, eq, rng, size=m)
            inner = np.einsum("ij,ij->i", x, y)
            acc.add(inner * inner)
    return acc.estimate()


def _coordinate_sq_mean(n: int, e, config: MCConfig, side: int) -> MCEstimate:
    per_stream = config.samples // config.streams
    acc = _MeanAccumulator()
    for stream in range(config.streams):
        rng = _stream_rng(config.seed, (side, stream))
        for m in _stream_chunks(per_stream):
            x = sample_ball(n, e, rng, size=m)
            acc.add(x[:, 0] * x[:, 0])
    return acc.estimate()


def estimate_f_factored(n, p, config: MCConfig = MCConfig()) -> MCEstimate:
    """Estimate f(n, p) as n * E[x_1^2] * E[y_1^2].

    Uses the coordinate-symmetry factorization of the double integral:
    the two coordinate moments are estimated on disjoint substreams
    (config.samples each side) and their standard errors propagated through
    the product.
    """
    n = check_dimension(n)
    e = as_exponent(p)
    eq = e.conjugate()
    a = _coordinate_sq_mean(n, e, config, side=0)
    b = _coordinate_sq_mean(n, eq, config, side=1)
    mean = n * a.mean * b.mean
    std_error = n * math.sqrt(
        (b.mean * a.std_error) ** 2 + (a.mean * b.std_error) ** 2
    )
    return MCEstimate(mean, std_error, config.samples)
