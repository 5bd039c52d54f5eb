"""The doubled graph G± and connectivity of layered vertices under an edge configuration.

Layered vertices are integers: the upper copy of ``v`` is ``v`` and the lower
copy is ``n + v`` (index 0 is unused). Layer edges are indexed with the
upper-layer copies of the base edges first, then the lower-layer copies, so
``layer_edges[i]`` and ``layer_edges[i + m]`` are the two copies of base edge ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .dsu import DisjointSet
from .errors import InvalidParameters, LabelOutOfRange
from .graph import Edge, Graph


@dataclass(frozen=True)
class TransversalSet:
    members: tuple[int, ...]

    @classmethod
    def of(cls, labels: Iterable[int], n: int | None = None) -> "TransversalSet":
        members = tuple(sorted(set(labels)))
        if n is not None:
            for x in members:
                if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= n:
                    raise LabelOutOfRange(x, n)
        return cls(members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v) -> bool:
        return v in self.members


def as_transversals(h, n: int) -> TransversalSet:
    if isinstance(h, TransversalSet):
        return TransversalSet.of(h.members, n)
    return TransversalSet.of(h, n)


@dataclass(frozen=True)
class BunkbedGraph:
    base: Graph
    transversals: TransversalSet
    layer_edges: tuple[Edge, ...]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def num_vertices(self) -> int:
        return 2 * self.base.n

    @property
    def num_layer_edges(self) -> int:
        return len(self.layer_edges)

    @property
    def transversal_edges(self) -> tuple[Edge, ...]:
        n = self.base.n
        return tuple((v, n + v) for v in self.transversals)

    def upper(self, v: int) -> int:
        self._check(v)
        return v

    def lower(self, v: int) -> int:
        self._check(v)
        return self.base.n + v

    def mirror(self, x: int) -> int:
        n = self.base.n
        return x + n if x <= n else x - n

    def label(self, x: int) -> str:
        """Human form of a layered vertex, e.g. ``"3+"`` or ``"3-"``."""
        n = self.base.n
        return f"{x}+" if x <= n else f"{x - n}-"

    def _check(self, v: int) -> None:
        if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= self.base.n:
            raise LabelOutOfRange(v, self.base.n)


def build_bunkbed(g: Graph, h) -> BunkbedGraph:
    """Stack two copies of ``g`` and join ``v+``/``v-`` for every ``v`` in ``h``."""
    hs = as_transversals(h, g.n)
    n = g.n
    upper = tuple(g.edges)
    lower = tuple((a + n, b + n) for a, b in g.edges)
    return BunkbedGraph(g, hs, upper + lower)


@dataclass(frozen=True)
class EdgeConfiguration:
    """Open/closed state of every layer edge; bit ``i`` refers to ``layer_edges[i]``."""

    open_mask: int
    size: int

    def __post_init__(self) -> None:
        if self.open_mask < 0 or self.open_mask >> self.size:
            raise InvalidParameters(f"mask {self.open_mask:#x} does not fit in {self.size} bits")

    @classmethod
    def from_open(cls, bb: BunkbedGraph, indices: Iterable[int]) -> "EdgeConfiguration":
        mask = 0
        for i in indices:
            if not 0 <= i < bb.num_layer_edges:
                raise InvalidParameters(f"layer edge index {i} out of range")
            mask |= 1 << i
        return cls(mask, bb.num_layer_edges)

    @classmethod
    def from_hex(cls, text: str, size: int) -> "EdgeConfiguration":
        try:
            mask = int(text, 16)
        except ValueError:
            raise InvalidParameters(f"not a hexadecimal mask: {text!r}") from None
        return cls(mask, size)

    def to_hex(self) -> str:
        return format(self.open_mask, "x")

    def is_open(self, i: int) -> bool:
        return bool(self.open_mask >> i & 1)

    def open_count(self) -> int:
        return self.open_mask.bit_count()

    def mirrored(self) -> "EdgeConfiguration":
        """Swap the upper and lower halves of the mask."""
        half = self.size // 2
        low = self.open_mask & ((1 << half) - 1)
        return EdgeConfiguration((low << half) | (self.open_mask >> half), self.size)


def components(bb: BunkbedGraph, cfg: EdgeConfiguration) -> DisjointSet:
    if cfg.size != bb.num_layer_edges:
        raise InvalidParameters(f"configuration has {cfg.size} bits, graph has {bb.num_layer_edges} layer edges")
    dsu = DisjointSet(bb.num_vertices + 1)
    for a, b in bb.transversal_edges:
        dsu.union(a, b)
    mask = cfg.open_mask
    for i, (a, b) in enumerate(bb.layer_edges):
        if mask >> i & 1:
            dsu.union(a, b)
    return dsu


def connected(bb: BunkbedGraph, cfg: EdgeConfiguration, a: int, b: int) -> bool:
    """Is there an open path from layered vertex ``a`` to ``b``?"""
    for x in (a, b):
        if not 1 <= x <= bb.num_vertices:
            raise LabelOutOfRange(x, bb.num_vertices)
    if a == b:
        return True
    return components(bb, cfg).connected(a, b)
