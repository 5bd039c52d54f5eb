"""Exact connection probabilities on bunkbed graphs by exhaustive enumeration.

Probabilities are kept as open-edge-count histograms: ``counts[k]`` is the
number of layer-edge configurations with exactly ``k`` open edges on which
the event holds, so the probability at ``p`` is
``sum(counts[k] * p**k * (1 - p)**(M - k))``. Evaluation is exact over
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .errors import InvalidParameters, LabelOutOfRange, TooLarge
from .graph import Graph
from .model import BunkbedGraph, build_bunkbed

DEFAULT_CAP = 26
MAX_CAP = 62


def as_rational(x) -> Fraction:
    """Exact rational from a Fraction, int, ``"a/b"`` or decimal string, or float (via its repr)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidParameters(f"not a probability: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    try:
        return Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidParameters(f"not a rational number: {x!r}") from None


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _bernstein(counts: Sequence[int], p) -> Fraction:
    p = as_rational(p)
    a, b = p.numerator, p.denominator
    m = len(counts) - 1
    # over the common denominator b^m: sum c_k a^k (b - a)^(m - k)
    total = sum(c * a**k * (b - a) ** (m - k) for k, c in enumerate(counts) if c)
    return Fraction(total, b**m)


@dataclass(frozen=True)
class ReliabilityPolynomial:
    """Event probability as a function of ``p``, stored as configuration counts."""

    M: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.M + 1:
            raise InvalidParameters(f"expected {self.M + 1} counts, got {len(self.counts)}")
        for k, c in enumerate(self.counts):
            if not 0 <= c <= math.comb(self.M, k):
                raise InvalidParameters(f"count {c} at k={k} outside [0, C({self.M},{k})]")

    def __call__(self, p) -> Fraction:
        return _bernstein(self.counts, p)

    def total(self) -> int:
        return sum(self.counts)

    def is_zero(self) -> bool:
        return not any(self.counts)

    def is_one(self) -> bool:
        return all(c == math.comb(self.M, k) for k, c in enumerate(self.counts))

    def __sub__(self, other: "ReliabilityPolynomial") -> "SignedReliabilityPolynomial":
        if self.M != other.M:
            raise InvalidParameters(f"degree mismatch {self.M} vs {other.M}")
        return SignedReliabilityPolynomial(self.M, tuple(a - b for a, b in zip(self.counts, other.counts)))

    def to_json(self) -> dict:
        return {"M": self.M, "counts": [str(c) for c in self.counts]}

    @classmethod
    def from_json(cls, doc: dict) -> "ReliabilityPolynomial":
        return cls(int(doc["M"]), tuple(int(c) for c in doc["counts"]))


@dataclass(frozen=True)
class SignedReliabilityPolynomial:
    """Coefficientwise difference of two reliability polynomials of equal ``M``."""

    M: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.M + 1:
            raise InvalidParameters(f"expected {self.M + 1} counts, got {len(self.counts)}")
        for k, c in enumerate(self.counts):
            if abs(c) > math.comb(self.M, k):
                raise InvalidParameters(f"|count| {c} at k={k} exceeds C({self.M},{k})")

    def __call__(self, p) -> Fraction:
        return _bernstein(self.counts, p)

    def is_zero(self) -> bool:
        return not any(self.counts)

    def to_json(self) -> dict:
        return {"M": self.M, "counts": [str(c) for c in self.counts]}

    @classmethod
    def from_json(cls, doc: dict) -> "SignedReliabilityPolynomial":
        return cls(int(doc["M"]), tuple(int(c) for c in doc["counts"]))


def multiply_by_p_power(poly: ReliabilityPolynomial, j: int) -> ReliabilityPolynomial:
    """``p**j * poly`` as a degree-``M + j`` polynomial: ``j`` extra edges that must all be open."""
    return ReliabilityPolynomial(poly.M + j, (0,) * j + tuple(poly.counts))


def elevate(poly: ReliabilityPolynomial, j: int) -> ReliabilityPolynomial:
    """Same function of ``p`` over ``M + j`` edges, the extra ``j`` edges being irrelevant."""
    counts = [0] * (poly.M + j + 1)
    for k, c in enumerate(poly.counts):
        if c:
            for i in range(j + 1):
                counts[k + i] += c * math.comb(j, i)
    return ReliabilityPolynomial(poly.M + j, tuple(counts))


def evaluate(poly, p) -> Fraction:
    """Exact value of ``poly`` at ``p``; no floating point is involved."""
    return poly(p)


def check_cap(bits: int, cap: int) -> None:
    if not 0 <= cap <= MAX_CAP:
        raise InvalidParameters(f"enumeration cap must be in 0..{MAX_CAP}, got {cap}")
    if bits > cap:
        raise TooLarge(bits, cap)


def count_free_edges(
    num_nodes: int,
    free_edges: Sequence[tuple[int, int]],
    base_edges: Sequence[tuple[int, int]],
    source: int,
    target_a: int,
    target_b: int,
    workers: int = 1,
) -> tuple[list[int], list[int]]:
    """Histograms over open-count of the free edges for ``source~target_a`` and ``source~target_b``.

    With ``workers > 1`` the highest-index free edges are fixed per chunk and
    chunks run on a thread pool; the merged histogram does not depend on the
    worker count.
    """
    free_u = [a for a, _ in free_edges]
    free_v = [b for _, b in free_edges]
    base_u = [a for a, _ in base_edges]
    base_v = [b for _, b in base_edges]
    nfree = len(free_edges)
    split = 0
    if workers > 1 and nfree > 8:
        split = min(nfree - 8, max(1, (4 * workers - 1).bit_length()))
    if split == 0:
        return kernels.count_connections(num_nodes, free_u, free_v, base_u, base_v, source, target_a, target_b)

    low = nfree - split

    def chunk(prefix: int):
        bu, bv = list(base_u), list(base_v)
        for j in range(split):
            if prefix >> j & 1:
                bu.append(free_u[low + j])
                bv.append(free_v[low + j])
        ca, cb = kernels.count_connections(
            num_nodes, free_u[:low], free_v[:low], bu, bv, source, target_a, target_b
        )
        return prefix.bit_count(), ca, cb

    total_a = [0] * (nfree + 1)
    total_b = [0] * (nfree + 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for shift, ca, cb in pool.map(chunk, range(1 << split)):
            for k in range(low + 1):
                total_a[k + shift] += ca[k]
                total_b[k + shift] += cb[k]
    return total_a, total_b


def _check_vertex(bb: BunkbedGraph, x: int) -> None:
    if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= bb.num_vertices:
        raise LabelOutOfRange(x, bb.num_vertices)


def _pair_counts(bb: BunkbedGraph, source: int, target_a: int, target_b: int, cap: int, workers: int):
    for x in (source, target_a, target_b):
        _check_vertex(bb, x)
    check_cap(bb.num_layer_edges, cap)
    return count_free_edges(
        bb.num_vertices + 1, bb.layer_edges, bb.transversal_edges, source, target_a, target_b, workers
    )


def exact_reliability(
    bb: BunkbedGraph, source: int, target: int, cap: int = DEFAULT_CAP, workers: int = 1
) -> ReliabilityPolynomial:
    """Exact probability that layered vertices ``source`` and ``target`` are joined by an open path."""
    counts, _ = _pair_counts(bb, source, target, target, cap, workers)
    return ReliabilityPolynomial(bb.num_layer_edges, tuple(counts))


def bunkbed_polynomials(
    g: Graph, h, u: int, v: int, cap: int = DEFAULT_CAP, workers: int = 1
) -> tuple[ReliabilityPolynomial, ReliabilityPolynomial]:
    """Same-level ``u+~v+`` and cross-level ``u+~v-`` polynomials from one enumeration pass."""
    bb = build_bunkbed(g, h)
    same, cross = _pair_counts(bb, bb.upper(u), bb.upper(v), bb.lower(v), cap, workers)
    m = bb.num_layer_edges
    return ReliabilityPolynomial(m, tuple(same)), ReliabilityPolynomial(m, tuple(cross))


def bunkbed_difference(
    g: Graph, h, u: int, v: int, cap: int = DEFAULT_CAP, workers: int = 1
) -> SignedReliabilityPolynomial:
    same, cross = bunkbed_polynomials(g, h, u, v, cap, workers)
    return same - cross


@dataclass(frozen=True)
class GridReport:
    values: tuple[tuple[Fraction, Fraction], ...]
    minimum: Fraction | None
    argmin: Fraction | None

    @property
    def passed(self) -> bool:
        return all(value >= 0 for _, value in self.values)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "minimum": None if self.minimum is None else format_rational(self.minimum),
            "argmin": None if self.argmin is None else format_rational(self.argmin),
            "values": [
                {"p": format_rational(p), "value": format_rational(val), "sign": (val > 0) - (val < 0)}
                for p, val in self.values
            ],
        }


def verify_nonnegative_on_grid(d, grid: Iterable) -> GridReport:
    """Exact sign of ``d`` at each grid point; PASS iff every value is >= 0."""
    values = tuple((p, d(p)) for p in (as_rational(x) for x in grid))
    if not values:
        return GridReport((), None, None)
    argmin, minimum = min(values, key=lambda pv: pv[1])
    return GridReport(values, minimum, argmin)


def identity_points(m: int) -> list[Fraction]:
    """``m + 1`` distinct rationals in (0, 1): enough to pin down a degree-``m`` polynomial."""
    return [Fraction(i, m + 2) for i in range(1, m + 2)]


def default_grid() -> list[Fraction]:
    return [Fraction(i, 10) for i in range(1, 10)]
