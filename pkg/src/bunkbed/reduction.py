"""Reduction of a forest instance to a path instance, certified by brute force.

Relabel the unique ``u``-``v`` path as ``1..ell``. Freeze the layer edges
off that path (the *outside* configuration). A path vertex ``z`` gets an
effective transversal when ``z+`` and ``z-`` are joined using only open
outside edges and the transversals of ``H``. Given the outside configuration,
connecting ``1+`` to ``ell±`` in the forest's bunkbed is then the same event
as in the bunkbed of ``P_ell`` with the effective transversal set, and
summing the conditional polynomials over all outside configurations gives
back the unconditional ones.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple

from . import kernels
from .dsu import DisjointSet
from .errors import DisconnectedTerminals, InvalidParameters, NotAForest
from .exact import DEFAULT_CAP, ReliabilityPolynomial, bunkbed_polynomials, check_cap, count_free_edges
from .graph import Forest, Graph, is_forest, path_graph, unique_path
from .model import BunkbedGraph, EdgeConfiguration, as_transversals, build_bunkbed, connected


@dataclass(frozen=True)
class PathDecomposition:
    """Split of the layer edges of ``graph``'s bunkbed into path and outside edges.

    ``path_edge_indices[j]`` is the forest layer edge that plays the role of
    layer edge ``j`` of ``P_ell``: upper copies along the path first, then
    lower copies. ``relabel[x - 1]`` is the new label of original vertex ``x``.
    """

    graph: Graph
    u: int
    v: int
    path_vertices: tuple[int, ...]
    relabel: tuple[int, ...]
    path_edge_indices: tuple[int, ...]
    outside_edge_indices: tuple[int, ...]
    is_forest: bool = True

    @property
    def ell(self) -> int:
        return len(self.path_vertices)

    @property
    def num_outside(self) -> int:
        return len(self.outside_edge_indices)

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "u": self.u,
            "v": self.v,
            "path": list(self.path_vertices),
            "relabel": list(self.relabel),
            "path_edge_indices": list(self.path_edge_indices),
            "outside_edge_indices": list(self.outside_edge_indices),
        }


@dataclass(frozen=True)
class OutsideConfiguration:
    """Open subset of ``outside_edge_indices``; bit ``i`` is ``outside_edge_indices[i]``."""

    mask: int
    size: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.size:
            raise InvalidParameters(f"outside mask {self.mask:#x} does not fit in {self.size} bits")

    def to_hex(self) -> str:
        return format(self.mask, "x")


@dataclass(frozen=True)
class PathConfiguration:
    """Open subset of ``path_edge_indices``; identical to a layer-edge mask of ``P_ell``."""

    mask: int
    size: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.size:
            raise InvalidParameters(f"path mask {self.mask:#x} does not fit in {self.size} bits")


@dataclass(frozen=True)
class ReducedTransversalSet:
    members: tuple[int, ...]


class Equivalence(NamedTuple):
    a_plus: bool
    b_plus: bool
    a_minus: bool
    b_minus: bool

    @property
    def agrees(self) -> bool:
        return self.a_plus == self.b_plus and self.a_minus == self.b_minus


def decompose(f: Forest | Graph, u: int, v: int, allow_non_forest: bool = False) -> PathDecomposition:
    """Relabel along the ``u``-``v`` path and classify every layer edge.

    Non-forests are rejected with :class:`NotAForest` unless
    ``allow_non_forest`` is set, in which case a shortest path is used, chords
    between path vertices count as outside edges, and a warning is issued.
    """
    if isinstance(f, Forest):
        g, acyclic = f.graph, True
    else:
        g, acyclic = f, is_forest(f)
        if not acyclic:
            if not allow_non_forest:
                raise NotAForest("the reduction is only valid for forests")
            warnings.warn("decomposing a graph with cycles; chords are treated as outside edges", stacklevel=2)
    path = unique_path(g, u, v)
    if path is None:
        raise DisconnectedTerminals(u, v)
    position = {w: i for i, w in enumerate(path)}
    upper_path: list[int] = [-1] * (len(path) - 1)
    outside: list[int] = []
    m = g.m
    for i, (a, b) in enumerate(g.edges):
        if a in position and b in position:
            lo, hi = sorted((position[a], position[b]))
            if hi == lo + 1:
                upper_path[lo] = i
                continue
            # a chord between path vertices means a cycle
            if acyclic:
                raise AssertionError(f"edge {a}-{b} joins non-consecutive path vertices in a forest")
        outside.append(i)
    outside_layer = sorted(outside + [i + m for i in outside])
    path_layer = tuple(upper_path) + tuple(i + m for i in upper_path)

    relabel = [0] * g.n
    for i, w in enumerate(path):
        relabel[w - 1] = i + 1
    rest = [x for x in g.vertices if x not in position]
    for j, x in enumerate(rest):
        relabel[x - 1] = len(path) + 1 + j
    return PathDecomposition(g, u, v, tuple(path), tuple(relabel), path_layer, tuple(outside_layer), acyclic)


@lru_cache(maxsize=4096)
def reduced_polynomials(ell: int, h_prime: tuple[int, ...]) -> tuple[ReliabilityPolynomial, ReliabilityPolynomial]:
    """Same/cross polynomials of ``P_ell`` with transversals ``h_prime`` for terminals 1 and ell."""
    return bunkbed_polynomials(path_graph(ell), h_prime, 1, ell)


@lru_cache(maxsize=4096)
def _reduced_indicators(ell: int, h_prime: tuple[int, ...]) -> tuple[bytes, bytes]:
    bb = build_bunkbed(path_graph(ell), h_prime)
    return _indicators(bb.num_vertices + 1, bb.layer_edges, bb.transversal_edges, 1, ell, 2 * ell)


def _indicators(num_nodes, free, base, source, target_a, target_b):
    return kernels.connection_indicators(
        num_nodes,
        [a for a, _ in free],
        [b for _, b in free],
        [a for a, _ in base],
        [b for _, b in base],
        source,
        target_a,
        target_b,
    )


class _Reducer:
    """Per-(decomposition, H) precomputation shared by the single-configuration operations."""

    def __init__(self, pd: PathDecomposition, h) -> None:
        self.pd = pd
        self.h = as_transversals(h, pd.graph.n)
        self.bb: BunkbedGraph = build_bunkbed(pd.graph, self.h)
        n = pd.graph.n
        self.n = n
        self.num_nodes = 2 * n + 1
        self.outside = [self.bb.layer_edges[i] for i in pd.outside_edge_indices]
        self.path_edges = [self.bb.layer_edges[i] for i in pd.path_edge_indices]
        self.transversals = list(self.bb.transversal_edges)
        self.upper_path = pd.path_vertices
        self.lower_path = tuple(w + n for w in pd.path_vertices)
        self.h_on_path = {pd.relabel[w - 1] for w in self.h.members if w in pd.path_vertices}

    def outside_config(self, out_cfg) -> OutsideConfiguration:
        if isinstance(out_cfg, OutsideConfiguration):
            if out_cfg.size != self.pd.num_outside:
                raise InvalidParameters(f"outside configuration has {out_cfg.size} bits, expected {self.pd.num_outside}")
            return out_cfg
        return OutsideConfiguration(int(out_cfg), self.pd.num_outside)

    def open_outside(self, mask: int) -> list[tuple[int, int]]:
        return [e for i, e in enumerate(self.outside) if mask >> i & 1]

    def h_prime(self, mask: int, opened=None) -> tuple[int, ...]:
        dsu = DisjointSet(self.num_nodes)
        for a, b in self.transversals:
            dsu.union(a, b)
        for a, b in self.open_outside(mask) if opened is None else opened:
            dsu.union(a, b)
        find = dsu.find
        return tuple(i + 1 for i, (a, b) in enumerate(zip(self.upper_path, self.lower_path)) if find(a) == find(b))

    def conditional(self, mask: int, opened=None) -> tuple[list[int], list[int]]:
        base = self.transversals + (self.open_outside(mask) if opened is None else opened)
        u, v = self.pd.u, self.pd.v
        return count_free_edges(self.num_nodes, self.path_edges, base, u, v, v + self.n)

    def indicators(self, mask: int, opened=None) -> tuple[bytes, bytes]:
        base = self.transversals + (self.open_outside(mask) if opened is None else opened)
        u, v = self.pd.u, self.pd.v
        return _indicators(self.num_nodes, self.path_edges, base, u, v, v + self.n)


def compute_h_prime(pd: PathDecomposition, h, out_cfg) -> ReducedTransversalSet:
    """Path positions ``z`` whose two copies are joined off the path, given ``out_cfg``."""
    r = _Reducer(pd, h)
    return ReducedTransversalSet(r.h_prime(r.outside_config(out_cfg).mask))


def check_equivalence(pd: PathDecomposition, h, out_cfg, path_cfg) -> Equivalence:
    """Evaluate the forest event and the reduced path event for one pair of configurations."""
    r = _Reducer(pd, h)
    out = r.outside_config(out_cfg)
    size = len(pd.path_edge_indices)
    pc = path_cfg if isinstance(path_cfg, PathConfiguration) else PathConfiguration(int(path_cfg), size)
    if pc.size != size:
        raise InvalidParameters(f"path configuration has {pc.size} bits, expected {size}")

    full = 0
    for i, j in enumerate(pd.outside_edge_indices):
        if out.mask >> i & 1:
            full |= 1 << j
    for i, j in enumerate(pd.path_edge_indices):
        if pc.mask >> i & 1:
            full |= 1 << j
    cfg = EdgeConfiguration(full, r.bb.num_layer_edges)
    bb = r.bb
    u, v = pd.u, pd.v
    a_plus = connected(bb, cfg, bb.upper(u), bb.upper(v))
    a_minus = connected(bb, cfg, bb.upper(u), bb.lower(v))

    ell = pd.ell
    reduced = build_bunkbed(path_graph(ell), r.h_prime(out.mask))
    reduced_cfg = EdgeConfiguration(pc.mask, reduced.num_layer_edges)
    b_plus = connected(reduced, reduced_cfg, reduced.upper(1), reduced.upper(ell))
    b_minus = connected(reduced, reduced_cfg, reduced.upper(1), reduced.lower(ell))
    return Equivalence(a_plus, b_plus, a_minus, b_minus)


def conditional_reliability(
    pd: PathDecomposition, h, out_cfg, cap: int = DEFAULT_CAP
) -> tuple[ReliabilityPolynomial, ReliabilityPolynomial]:
    """Same/cross polynomials over the path edges only, with ``out_cfg`` frozen."""
    check_cap(len(pd.path_edge_indices), cap)
    r = _Reducer(pd, h)
    same, cross = r.conditional(r.outside_config(out_cfg).mask)
    m = len(pd.path_edge_indices)
    return ReliabilityPolynomial(m, tuple(same)), ReliabilityPolynomial(m, tuple(cross))


@dataclass
class OutsideRecord:
    mask: int
    h_prime: tuple[int, ...]
    contains_h: bool
    equivalent: bool
    conditional_matches: bool
    sign_ok: bool

    @property
    def certified(self) -> bool:
        return self.contains_h and self.equivalent and self.conditional_matches and self.sign_ok


@dataclass
class ReductionReport:
    decomposition: PathDecomposition
    h: tuple[int, ...]
    records: list[OutsideRecord]
    tower_same: bool
    tower_cross: bool
    composed: tuple[ReliabilityPolynomial, ReliabilityPolynomial] = field(repr=False)
    unconditional: tuple[ReliabilityPolynomial, ReliabilityPolynomial] = field(repr=False)
    full_sweep: bool = True

    @property
    def containment_ok(self) -> bool:
        return all(r.contains_h for r in self.records)

    @property
    def equivalence_ok(self) -> bool:
        return all(r.equivalent for r in self.records)

    @property
    def conditional_ok(self) -> bool:
        return all(r.conditional_matches for r in self.records)

    @property
    def sign_ok(self) -> bool:
        return all(r.sign_ok for r in self.records)

    @property
    def tower_ok(self) -> bool:
        return self.tower_same and self.tower_cross

    @property
    def passed(self) -> bool:
        rows_ok = self.containment_ok and self.equivalence_ok and self.conditional_ok and self.sign_ok
        return rows_ok and (self.tower_ok or not self.full_sweep)

    def to_json(self) -> dict:
        pd = self.decomposition
        return {
            "ell": pd.ell,
            "relabel": list(pd.relabel),
            "path": list(pd.path_vertices),
            "H": list(self.h),
            "h_prime_by_outcfg": {format(r.mask, "x"): list(r.h_prime) for r in self.records},
            "rows": [
                {
                    "outside_config": format(r.mask, "x"),
                    "h_prime": list(r.h_prime),
                    "containment": r.contains_h,
                    "equivalence": r.equivalent,
                    "conditional_equality": r.conditional_matches,
                    "conditional_sign": r.sign_ok,
                }
                for r in self.records
            ],
            "containment": self.containment_ok,
            "equivalence": self.equivalence_ok,
            "conditional_equality": self.conditional_ok,
            "tower": {"same": self.tower_same, "cross": self.tower_cross} if self.full_sweep else None,
            "composed": [p.to_json() for p in self.composed] if self.full_sweep else None,
            "unconditional": [p.to_json() for p in self.unconditional],
            "verdict": "PASS" if self.passed else "FAIL",
        }


def _certify_mask(r: _Reducer, mask: int) -> tuple[OutsideRecord, list[int], list[int]]:
    pd = r.pd
    ell = pd.ell
    opened = r.open_outside(mask)
    h_prime = r.h_prime(mask, opened)
    contains = r.h_on_path.issubset(h_prime)
    equivalent = r.indicators(mask, opened) == _reduced_indicators(ell, h_prime)
    same, cross = r.conditional(mask, opened)
    red_same, red_cross = reduced_polynomials(ell, h_prime)
    matches = tuple(same) == red_same.counts and tuple(cross) == red_cross.counts
    if h_prime:
        sign_ok = same == cross
    else:
        sign_ok = not any(cross)
    return OutsideRecord(mask, h_prime, contains, equivalent, matches, sign_ok), same, cross


def iter_outside_masks(pd: PathDecomposition) -> Iterator[int]:
    return iter(range(1 << pd.num_outside))


def certify_reduction(
    f: Forest | Graph, h, u: int, v: int, masks=None, cap: int = DEFAULT_CAP, allow_non_forest: bool = False
) -> ReductionReport:
    """Certify the reduction for every outside configuration (or just ``masks``).

    The tower check needs all outside configurations; with a strict subset it
    is skipped and reported as not run.
    """
    pd = decompose(f, u, v, allow_non_forest=allow_non_forest)
    g = pd.graph
    check_cap(2 * g.m, cap)
    r = _Reducer(pd, h)
    selected = list(iter_outside_masks(pd)) if masks is None else sorted({r.outside_config(x).mask for x in masks})
    full_sweep = len(selected) == 1 << pd.num_outside

    total = 2 * g.m
    composed_same = [0] * (total + 1)
    composed_cross = [0] * (total + 1)
    records = []
    for mask in selected:
        record, same, cross = _certify_mask(r, mask)
        records.append(record)
        shift = mask.bit_count()
        for k, (cs, cc) in enumerate(zip(same, cross)):
            composed_same[k + shift] += cs
            composed_cross[k + shift] += cc

    unconditional = bunkbed_polynomials(g, r.h, u, v, cap)
    composed = (
        ReliabilityPolynomial(total, tuple(composed_same)) if full_sweep else unconditional[0],
        ReliabilityPolynomial(total, tuple(composed_cross)) if full_sweep else unconditional[1],
    )
    tower_same = full_sweep and composed[0] == unconditional[0]
    tower_cross = full_sweep and composed[1] == unconditional[1]
    return ReductionReport(pd, r.h.members, records, tower_same, tower_cross, composed, unconditional, full_sweep)


@dataclass
class TowerReport:
    same: bool
    cross: bool
    composed: tuple[ReliabilityPolynomial, ReliabilityPolynomial]
    unconditional: tuple[ReliabilityPolynomial, ReliabilityPolynomial]

    @property
    def passed(self) -> bool:
        return self.same and self.cross

    def to_json(self) -> dict:
        return {
            "same": "PASS" if self.same else "FAIL",
            "cross": "PASS" if self.cross else "FAIL",
            "composed": [p.to_json() for p in self.composed],
            "unconditional": [p.to_json() for p in self.unconditional],
        }


def verify_tower(f: Forest | Graph, h, u: int, v: int, cap: int = DEFAULT_CAP) -> TowerReport:
    """Recompose the unconditional polynomials from the conditional ones and compare exactly."""
    pd = decompose(f, u, v)
    g = pd.graph
    check_cap(2 * g.m, cap)
    r = _Reducer(pd, h)
    total = 2 * g.m
    same_total = [0] * (total + 1)
    cross_total = [0] * (total + 1)
    for mask in iter_outside_masks(pd):
        same, cross = r.conditional(mask)
        shift = mask.bit_count()
        for k in range(len(same)):
            same_total[k + shift] += same[k]
            cross_total[k + shift] += cross[k]
    composed = (ReliabilityPolynomial(total, tuple(same_total)), ReliabilityPolynomial(total, tuple(cross_total)))
    unconditional = bunkbed_polynomials(g, r.h, u, v, cap)
    return TowerReport(composed[0] == unconditional[0], composed[1] == unconditional[1], composed, unconditional)
