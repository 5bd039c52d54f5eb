"""Pure-Python kernels; the reference the compiled ``_ckernels`` must match bit for bit.

All kernels work on a node array of size ``num_nodes``. ``base_*`` edges are
always open; ``free_*`` edges are enumerated (bit ``i`` of a mask opens free
edge ``i``). Each call reports, per mask or per open-edge count, whether
``source`` reaches ``target_a`` and ``target_b``.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def _base_roots(num_nodes, base_u, base_v):
    parent = list(range(num_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in zip(base_u, base_v):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    return [find(x) for x in range(num_nodes)]


def _scan(num_nodes, free_u, free_v, base_u, base_v, source, target_a, target_b):
    """Yield ``(mask, reaches_a, reaches_b)`` for every mask over the free edges."""
    roots = _base_roots(num_nodes, base_u, base_v)
    edges = [(roots[a], roots[b]) for a, b in zip(free_u, free_v)]
    s, ta, tb = roots[source], roots[target_a], roots[target_b]
    for mask in range(1 << len(edges)):
        parent = roots[:]
        m, i = mask, 0
        while m:
            if m & 1:
                a, b = edges[i]
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a != b:
                    parent[b] = a
            m >>= 1
            i += 1
        x = s
        while parent[x] != x:
            x = parent[x]
        y = ta
        while parent[y] != y:
            y = parent[y]
        z = tb
        while parent[z] != z:
            z = parent[z]
        yield mask, x == y, x == z


def count_connections(num_nodes, free_u, free_v, base_u, base_v, source, target_a, target_b):
    """Histogram of satisfying masks by number of open free edges, for both targets."""
    size = len(free_u) + 1
    counts_a = [0] * size
    counts_b = [0] * size
    for mask, hit_a, hit_b in _scan(num_nodes, free_u, free_v, base_u, base_v, source, target_a, target_b):
        k = mask.bit_count()
        if hit_a:
            counts_a[k] += 1
        if hit_b:
            counts_b[k] += 1
    return counts_a, counts_b


def connection_indicators(num_nodes, free_u, free_v, base_u, base_v, source, target_a, target_b):
    """Per-mask connection flags as two byte strings of length ``2**len(free_u)``."""
    size = 1 << len(free_u)
    flags_a = bytearray(size)
    flags_b = bytearray(size)
    for mask, hit_a, hit_b in _scan(num_nodes, free_u, free_v, base_u, base_v, source, target_a, target_b):
        flags_a[mask] = hit_a
        flags_b[mask] = hit_b
    return bytes(flags_a), bytes(flags_b)


def mix64(z: int) -> int:
    """SplitMix64 finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def draw_word(seed: int, sample: int, edge: int) -> int:
    """The random 64-bit word deciding ``edge`` in ``sample``; a pure function of its arguments."""
    stream = mix64(mix64(seed) + (sample + 1) * GOLDEN)
    return mix64(stream + (edge + 1) * GOLDEN)


def _mix64_np(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def _open_matrix(seed, start, stop, num_edges, threshold):
    samples = np.arange(start, stop, dtype=np.uint64)
    with np.errstate(over="ignore"):
        key = np.uint64(mix64(seed))
        stream = _mix64_np(key + (samples + np.uint64(1)) * np.uint64(GOLDEN))
        offsets = (np.arange(num_edges, dtype=np.uint64) + np.uint64(1)) * np.uint64(GOLDEN)
        words = _mix64_np(stream[:, None] + offsets[None, :])
    return (words >> np.uint64(11)) < np.uint64(threshold)


def mc_counts(num_nodes, edge_u, edge_v, base_u, base_v, source, target_a, target_b,
              seed, start, stop, threshold, chunk=4096):
    """Sample indices ``start..stop-1``; edge ``j`` is open iff ``draw_word >> 11 < threshold``.

    Returns ``(hits_a, hits_b, hits_both)``.
    """
    roots = _base_roots(num_nodes, base_u, base_v)
    edges = [(roots[a], roots[b]) for a, b in zip(edge_u, edge_v)]
    s, ta, tb = roots[source], roots[target_a], roots[target_b]
    hits_a = hits_b = both = 0
    for lo in range(start, stop, chunk):
        hi = min(stop, lo + chunk)
        opens = _open_matrix(seed, lo, hi, len(edges), threshold).tolist()
        for row in opens:
            parent = roots[:]
            for (a, b), is_open in zip(edges, row):
                if is_open:
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    while parent[b] != b:
                        parent[b] = parent[parent[b]]
                        b = parent[b]
                    if a != b:
                        parent[b] = a
            x = s
            while parent[x] != x:
                x = parent[x]
            y = ta
            while parent[y] != y:
                y = parent[y]
            z = tb
            while parent[z] != z:
                z = parent[z]
            ha, hb = x == y, x == z
            hits_a += ha
            hits_b += hb
            both += ha and hb
    return hits_a, hits_b, both
