"""Exact checks of the path identities on ``P_n`` with terminals ``1`` and ``n``.

With ``m = max(H)``, every open route from ``1+`` to ``n±`` passes ``m±`` and
then needs all ``n - m`` layer edges beyond ``m`` on the target's side, and
``m+``/``m-`` are always joined. So

    P(1+ ~ n+) = P(1+ ~ m+) p^(n-m) = P(1+ ~ m-) p^(n-m) = P(1+ ~ n-).

Each link is checked by exact evaluation at enough rational points to
determine the polynomials involved, and again coefficientwise after
rewriting both sides over a common number of edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyH, InvalidParameters
from .exact import (
    DEFAULT_CAP,
    ReliabilityPolynomial,
    elevate,
    exact_reliability,
    format_rational,
    identity_points,
    multiply_by_p_power,
)
from .graph import Graph, path_graph
from .model import TransversalSet, build_bunkbed

LINKS = ("same_n=same_m*p^(n-m)", "same_m=cross_m", "cross_n=cross_m*p^(n-m)")


@dataclass(frozen=True)
class PathInstance:
    n: int
    h: TransversalSet

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InvalidParameters(f"path length must be >= 1 vertex, got {self.n!r}")
        object.__setattr__(self, "h", TransversalSet.of(self.h, self.n))

    @property
    def graph(self) -> Graph:
        return path_graph(self.n)


def max_transversal(h) -> int | None:
    members = tuple(h)
    return max(members) if members else None


@dataclass
class FactorizationReport:
    n: int
    h: tuple[int, ...]
    m: int
    links: dict[str, bool]
    coefficient_links: dict[str, bool]
    points: list[Fraction]
    polynomials: dict[str, ReliabilityPolynomial] = field(repr=False)

    @property
    def passed(self) -> bool:
        return all(self.links.values()) and all(self.coefficient_links.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "H": list(self.h),
            "m": self.m,
            "factor_exponent": self.n - self.m,
            "links": {name: "PASS" if ok else "FAIL" for name, ok in self.links.items()},
            "coefficient_links": {name: "PASS" if ok else "FAIL" for name, ok in self.coefficient_links.items()},
            "points": [format_rational(p) for p in self.points],
            "polynomials": {name: poly.to_json() for name, poly in self.polynomials.items()},
            "verdict": "PASS" if self.passed else "FAIL",
        }


@dataclass
class EqualityReport:
    n: int
    h: tuple[int, ...]
    m: int
    same: ReliabilityPolynomial
    cross: ReliabilityPolynomial

    @property
    def passed(self) -> bool:
        return self.same.counts == self.cross.counts

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "H": list(self.h),
            "m": self.m,
            "same": self.same.to_json(),
            "cross": self.cross.to_json(),
            "difference": (self.same - self.cross).to_json(),
            "verdict": "PASS" if self.passed else "FAIL",
        }


def _instance(inst) -> PathInstance:
    return inst if isinstance(inst, PathInstance) else PathInstance(*inst)


def check_path_factorization(inst: PathInstance, cap: int = DEFAULT_CAP) -> FactorizationReport:
    inst = _instance(inst)
    m = max_transversal(inst.h)
    if m is None:
        raise EmptyH()
    bb = build_bunkbed(inst.graph, inst.h)
    polys = {
        "same_n": exact_reliability(bb, bb.upper(1), bb.upper(inst.n), cap),
        "cross_n": exact_reliability(bb, bb.upper(1), bb.lower(inst.n), cap),
        "same_m": exact_reliability(bb, bb.upper(1), bb.upper(m), cap),
        "cross_m": exact_reliability(bb, bb.upper(1), bb.lower(m), cap),
    }
    tail = inst.n - m
    total = bb.num_layer_edges
    # the products have degree <= M + tail, so that many + 1 points decide equality
    points = identity_points(total + tail)

    def times_tail(name, p):
        return polys[name](p) * p**tail

    links = {
        LINKS[0]: all(polys["same_n"](p) == times_tail("same_m", p) for p in points),
        LINKS[1]: all(polys["same_m"](p) == polys["cross_m"](p) for p in points),
        LINKS[2]: all(polys["cross_n"](p) == times_tail("cross_m", p) for p in points),
    }
    coefficient_links = {
        LINKS[0]: elevate(polys["same_n"], tail) == multiply_by_p_power(polys["same_m"], tail),
        LINKS[1]: polys["same_m"] == polys["cross_m"],
        LINKS[2]: elevate(polys["cross_n"], tail) == multiply_by_p_power(polys["cross_m"], tail),
    }
    return FactorizationReport(inst.n, inst.h.members, m, links, coefficient_links, points, polys)


def check_path_equality(inst: PathInstance, cap: int = DEFAULT_CAP) -> EqualityReport:
    """Same-level and cross-level polynomials for terminals 1 and n, which must coincide."""
    inst = _instance(inst)
    m = max_transversal(inst.h)
    if m is None:
        raise EmptyH()
    bb = build_bunkbed(inst.graph, inst.h)
    same = exact_reliability(bb, bb.upper(1), bb.upper(inst.n), cap)
    cross = exact_reliability(bb, bb.upper(1), bb.lower(inst.n), cap)
    return EqualityReport(inst.n, inst.h.members, m, same, cross)
