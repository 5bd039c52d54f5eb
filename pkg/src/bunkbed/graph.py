"""Base graphs on dense labels ``1..n``: validation, acyclicity, paths, random trees."""

from __future__ import annotations

import heapq
import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .dsu import DisjointSet
from .errors import DuplicateEdge, InvalidParameters, LabelOutOfRange, NotAForest, SelfLoop

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertices ``1..n``.

    ``edges`` is canonical: each pair is ``(small, large)`` and the tuple is
    sorted, so edge ``i`` means the same thing everywhere.
    """

    n: int
    edges: tuple[Edge, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    def components(self) -> list[list[int]]:
        dsu = DisjointSet(self.n + 1)
        for a, b in self.edges:
            dsu.union(a, b)
        groups: dict[int, list[int]] = {}
        for v in self.vertices:
            groups.setdefault(dsu.find(v), []).append(v)
        return sorted(groups.values())

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class Forest:
    """A :class:`Graph` known to be acyclic."""

    graph: Graph

    def __post_init__(self) -> None:
        if not is_forest(self.graph):
            raise NotAForest(f"graph with edges {[list(e) for e in self.graph.edges]} has a cycle")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges


def _check_label(x, n: int, edge=None) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= n:
        raise LabelOutOfRange(x, n, edge)
    return x


def validate(edges: Iterable[Sequence[int]], n: int) -> Graph:
    """Build a canonical :class:`Graph` from a raw edge list.

    Raises :class:`SelfLoop`, :class:`DuplicateEdge` or
    :class:`LabelOutOfRange`, each naming the offending edge.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise InvalidParameters(f"vertex count must be a non-negative integer, got {n!r}")
    seen: set[Edge] = set()
    for raw in edges:
        raw = tuple(raw)
        if len(raw) != 2:
            raise InvalidParameters(f"edge {list(raw)} does not have two endpoints")
        a, b = (_check_label(x, n, raw) for x in raw)
        if a == b:
            raise SelfLoop(raw)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise DuplicateEdge(raw)
        seen.add(key)
    return Graph(n, tuple(sorted(seen)))


def is_forest(g: Graph) -> bool:
    """True iff ``g`` is acyclic, i.e. ``|E| + #components == n``."""
    dsu = DisjointSet(g.n + 1)
    for a, b in g.edges:
        if not dsu.union(a, b):
            return False
    return True


def path_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParameters(f"path needs at least one vertex, got n={n}")
    return Graph(n, tuple((i, i + 1) for i in range(1, n)))


def unique_path(f: Forest | Graph, u: int, v: int) -> list[int] | None:
    """The vertex sequence from ``u`` to ``v`` (inclusive), or None if disconnected.

    On a graph with cycles this returns *a* shortest path.
    """
    g = f.graph if isinstance(f, Forest) else f
    _check_label(u, g.n)
    _check_label(v, g.n)
    if u == v:
        return [u]
    adj = g.adjacency()
    prev = {u: u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                if y == v:
                    queue.clear()
                    break
                queue.append(y)
    if v not in prev:
        return None
    path = [v]
    while path[-1] != u:
        path.append(prev[path[-1]])
    return path[::-1]


def prufer_decode(seq: Sequence[int], n: int) -> list[Edge]:
    """Edges of the labeled tree on ``1..n`` encoded by a Prüfer sequence of length n-2."""
    if n <= 1:
        return []
    if len(seq) != n - 2:
        raise InvalidParameters(f"Prüfer sequence for n={n} must have length {n - 2}")
    degree = [1] * (n + 1)
    for x in seq:
        degree[_check_label(x, n)] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((min(a, b), max(a, b)))
    return sorted(edges)


def _rng(seed: int) -> random.Random:
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise InvalidParameters(f"seed must be an integer in [0, 2^64), got {seed!r}")
    return random.Random(seed)


def random_tree(n: int, seed: int) -> Forest:
    """Uniform random labeled tree on ``1..n`` by decoding a uniform Prüfer sequence."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidParameters(f"n must be >= 1, got {n!r}")
    rng = _rng(seed)
    seq = [rng.randint(1, n) for _ in range(max(n - 2, 0))]
    return Forest(Graph(n, tuple(prufer_decode(seq, n))))


def random_forest(n: int, k: int, seed: int) -> Forest:
    """Random forest on ``1..n`` with exactly ``k`` components.

    The labels are shuffled and cut into ``k`` nonempty blocks at uniformly
    chosen positions; each block gets a uniform random tree. The result is
    *not* uniform over all k-component forests.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidParameters(f"n must be >= 1, got {n!r}")
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= n:
        raise InvalidParameters(f"component count must satisfy 1 <= k <= n, got k={k!r}, n={n}")
    rng = _rng(seed)
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    cuts = sorted(rng.sample(range(1, n), k - 1))
    edges: list[Edge] = []
    for lo, hi in zip([0, *cuts], [*cuts, n]):
        block = labels[lo:hi]
        size = len(block)
        seq = [rng.randint(1, size) for _ in range(max(size - 2, 0))]
        for a, b in prufer_decode(seq, size):
            x, y = block[a - 1], block[b - 1]
            edges.append((min(x, y), max(x, y)))
    return Forest(Graph(n, tuple(sorted(edges))))


def all_labeled_trees(n: int) -> Iterator[Forest]:
    """Every labeled tree on ``1..n`` (n^(n-2) of them), in Prüfer-sequence order."""
    if n < 1:
        raise InvalidParameters(f"n must be >= 1, got {n}")
    for seq in itertools.product(range(1, n + 1), repeat=max(n - 2, 0)):
        yield Forest(Graph(n, tuple(prufer_decode(seq, n))))
