"""Paired Monte Carlo estimates of the same-level and cross-level connection probabilities.

Both indicators are read off the same sampled configuration. Edge ``j`` of
sample ``i`` is open iff a SplitMix64-derived word keyed by ``(seed, i, j)``
falls below ``p``, so any split of the sample range across workers yields
the same estimate.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from statistics import NormalDist

from . import kernels
from .errors import InvalidParameters
from .graph import Graph
from .model import build_bunkbed


@dataclass(frozen=True)
class McEstimate:
    samples: int
    p: float
    mean_same: float
    mean_cross: float
    mean_diff: float
    ci_same: float
    ci_cross: float
    ci_diff: float
    seed: int
    confidence: float
    hits_same: int
    hits_cross: int
    hits_both: int

    def to_json(self) -> dict:
        out = {}
        for key, value in asdict(self).items():
            if isinstance(value, float):
                value = float(f"{value:.12g}") if math.isfinite(value) else None
            out[key] = value
        return out


def wilson_half_width(successes: int, n: int, z: float) -> float:
    """Half the length of the Wilson score interval."""
    phat = successes / n
    return z * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / (1 + z * z / n)


def wilson_interval(successes: int, n: int, z: float) -> tuple[float, float]:
    phat = successes / n
    center = (phat + z * z / (2 * n)) / (1 + z * z / n)
    half = wilson_half_width(successes, n, z)
    return center - half, center + half


def open_threshold(p: float) -> int:
    """Integer cut so that ``word >> 11 < threshold`` has probability ``p`` (to 2^-53)."""
    return math.ceil(p * 2.0**53)


def _z(confidence: float) -> float:
    return NormalDist().inv_cdf(0.5 + confidence / 2)


def estimate(
    g: Graph,
    h,
    u: int,
    v: int,
    p: float,
    samples: int,
    seed: int,
    confidence: float = 0.95,
    workers: int = 1,
) -> McEstimate:
    """Estimate ``P(u+ ~ v+)``, ``P(u+ ~ v-)`` and their difference from ``samples`` paired draws."""
    if not isinstance(p, (int, float)) or not 0 < p < 1:
        raise InvalidParameters(f"p must lie in (0, 1), got {p!r}")
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 1:
        raise InvalidParameters(f"samples must be a positive integer, got {samples!r}")
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise InvalidParameters(f"seed must be an integer in [0, 2^64), got {seed!r}")
    if not 0 < confidence < 1:
        raise InvalidParameters(f"confidence must lie in (0, 1), got {confidence!r}")
    if workers < 1:
        raise InvalidParameters(f"workers must be >= 1, got {workers}")

    bb = build_bunkbed(g, h)
    source, target_a, target_b = bb.upper(u), bb.upper(v), bb.lower(v)
    edge_u = [a for a, _ in bb.layer_edges]
    edge_v = [b for _, b in bb.layer_edges]
    base_u = [a for a, _ in bb.transversal_edges]
    base_v = [b for _, b in bb.transversal_edges]
    threshold = open_threshold(float(p))

    def run(bounds):
        lo, hi = bounds
        return kernels.mc_counts(
            bb.num_vertices + 1, edge_u, edge_v, base_u, base_v, source, target_a, target_b,
            seed, lo, hi, threshold,
        )

    step = -(-samples // workers)
    ranges = [(lo, min(samples, lo + step)) for lo in range(0, samples, step)]
    if len(ranges) == 1:
        parts = [run(ranges[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, ranges))
    same = sum(x[0] for x in parts)
    cross = sum(x[1] for x in parts)
    both = sum(x[2] for x in parts)

    n = samples
    z = _z(confidence)
    mean_same = same / n
    mean_cross = cross / n
    mean_diff = mean_same - mean_cross
    # diff_i is in {-1, 0, 1}; the squared sum counts samples where exactly one event holds
    if n > 1:
        sq = same + cross - 2 * both
        var = max(sq - n * mean_diff * mean_diff, 0.0) / (n - 1)
        ci_diff = z * math.sqrt(var / n)
    else:
        ci_diff = math.inf
    return McEstimate(
        samples=n,
        p=float(p),
        mean_same=mean_same,
        mean_cross=mean_cross,
        mean_diff=mean_diff,
        ci_same=wilson_half_width(same, n, z),
        ci_cross=wilson_half_width(cross, n, z),
        ci_diff=ci_diff,
        seed=seed,
        confidence=confidence,
        hits_same=same,
        hits_cross=cross,
        hits_both=both,
    )
