# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels with the same signatures and results as ``_pykernels``.

Enumeration is a depth-first walk over the free edges with a rollback
union-find (union by size, no path compression, so unions can be undone).
Once the source reaches both targets every completion of the current
prefix satisfies both events, and the whole subtree is added in one step.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

BACKEND = "cython"

cdef int64_t BINOM[64][64]


cdef void _fill_binomials():
    cdef int r, j
    for r in range(64):
        for j in range(64):
            BINOM[r][j] = 0
        BINOM[r][0] = 1
        for j in range(1, r + 1):
            BINOM[r][j] = BINOM[r - 1][j - 1] + BINOM[r - 1][j]


_fill_binomials()


cdef struct Walk:
    int* parent
    int* size
    int* undo
    int top
    int* eu
    int* ev
    int nfree
    int s
    int ta
    int tb
    int64_t* ca
    int64_t* cb
    unsigned char* fa
    unsigned char* fb


cdef inline int _find(int* parent, int x) nogil:
    while parent[x] != x:
        x = parent[x]
    return x


cdef inline int _find_halving(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef inline bint _unite(Walk* w, int a, int b) nogil:
    a = _find(w.parent, a)
    b = _find(w.parent, b)
    if a == b:
        return False
    if w.size[a] < w.size[b]:
        a, b = b, a
    w.parent[b] = a
    w.size[a] += w.size[b]
    w.undo[w.top] = b
    w.top += 1
    return True


cdef inline void _rollback(Walk* w) nogil:
    w.top -= 1
    cdef int b = w.undo[w.top]
    cdef int a = w.parent[b]
    w.size[a] -= w.size[b]
    w.parent[b] = b


cdef void _count(Walk* w, int i, int k) noexcept nogil:
    cdef int rs = _find(w.parent, w.s)
    cdef bint ha = rs == _find(w.parent, w.ta)
    cdef bint hb = rs == _find(w.parent, w.tb)
    cdef int r, j
    if ha and hb:
        r = w.nfree - i
        for j in range(r + 1):
            w.ca[k + j] += BINOM[r][j]
            w.cb[k + j] += BINOM[r][j]
        return
    if i == w.nfree:
        if ha:
            w.ca[k] += 1
        if hb:
            w.cb[k] += 1
        return
    _count(w, i + 1, k)
    if _unite(w, w.eu[i], w.ev[i]):
        _count(w, i + 1, k + 1)
        _rollback(w)
    else:
        _count(w, i + 1, k + 1)


cdef void _flags(Walk* w, int i, uint64_t mask) noexcept nogil:
    cdef int rs = _find(w.parent, w.s)
    cdef bint ha = rs == _find(w.parent, w.ta)
    cdef bint hb = rs == _find(w.parent, w.tb)
    cdef uint64_t t, span
    if ha and hb:
        span = (<uint64_t>1) << (w.nfree - i)
        for t in range(span):
            w.fa[mask | (t << i)] = 1
            w.fb[mask | (t << i)] = 1
        return
    if i == w.nfree:
        w.fa[mask] = ha
        w.fb[mask] = hb
        return
    _flags(w, i + 1, mask)
    if _unite(w, w.eu[i], w.ev[i]):
        _flags(w, i + 1, mask | ((<uint64_t>1) << i))
        _rollback(w)
    else:
        _flags(w, i + 1, mask | ((<uint64_t>1) << i))


cdef int* _int_array(seq) except NULL:
    cdef Py_ssize_t n = len(seq), i
    cdef int* out = <int*>malloc((n + 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = seq[i]
    return out


cdef void _prepare(Walk* w, int num_nodes, base_u, base_v) except *:
    cdef int i, a, b
    for i in range(num_nodes):
        w.parent[i] = i
        w.size[i] = 1
    w.top = 0
    for a, b in zip(base_u, base_v):
        _unite(w, a, b)
    # base unions are never rolled back
    w.top = 0


cdef void _release(Walk* w):
    free(w.parent)
    free(w.size)
    free(w.undo)
    free(w.eu)
    free(w.ev)


cdef void _allocate(Walk* w, int num_nodes, free_u, free_v) except *:
    w.parent = <int*>malloc(num_nodes * sizeof(int))
    w.size = <int*>malloc(num_nodes * sizeof(int))
    w.undo = <int*>malloc((num_nodes + 1) * sizeof(int))
    w.eu = NULL
    w.ev = NULL
    if w.parent == NULL or w.size == NULL or w.undo == NULL:
        _release(w)
        raise MemoryError()
    w.eu = _int_array(free_u)
    w.ev = _int_array(free_v)
    w.nfree = len(free_u)


def count_connections(int num_nodes, free_u, free_v, base_u, base_v, int source, int target_a, int target_b):
    cdef Walk w
    cdef int nfree = len(free_u)
    cdef int j
    if nfree > 62:
        raise OverflowError("at most 62 free edges are supported")
    cdef int64_t* ca = <int64_t*>malloc((nfree + 1) * sizeof(int64_t))
    cdef int64_t* cb = <int64_t*>malloc((nfree + 1) * sizeof(int64_t))
    for j in range(nfree + 1):
        ca[j] = 0
        cb[j] = 0
    _allocate(&w, num_nodes, free_u, free_v)
    try:
        _prepare(&w, num_nodes, base_u, base_v)
        w.s, w.ta, w.tb = source, target_a, target_b
        w.ca, w.cb = ca, cb
        with nogil:
            _count(&w, 0, 0)
        return [ca[j] for j in range(nfree + 1)], [cb[j] for j in range(nfree + 1)]
    finally:
        _release(&w)
        free(ca)
        free(cb)


def connection_indicators(int num_nodes, free_u, free_v, base_u, base_v, int source, int target_a, int target_b):
    cdef Walk w
    cdef int nfree = len(free_u)
    if nfree > 30:
        raise OverflowError("at most 30 free edges are supported")
    cdef Py_ssize_t span = (<Py_ssize_t>1) << nfree
    fa = bytearray(span)
    fb = bytearray(span)
    cdef unsigned char[::1] va = fa
    cdef unsigned char[::1] vb = fb
    _allocate(&w, num_nodes, free_u, free_v)
    try:
        _prepare(&w, num_nodes, base_u, base_v)
        w.s, w.ta, w.tb = source, target_a, target_b
        w.fa = &va[0]
        w.fb = &vb[0]
        with nogil:
            _flags(&w, 0, 0)
    finally:
        _release(&w)
    return bytes(fa), bytes(fb)


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL


def mix64(uint64_t z):
    return _mix64(z)


def draw_word(uint64_t seed, uint64_t sample, uint64_t edge):
    cdef uint64_t stream = _mix64(_mix64(seed) + (sample + 1) * GOLDEN)
    return _mix64(stream + (edge + 1) * GOLDEN)


def mc_counts(int num_nodes, edge_u, edge_v, base_u, base_v, int source, int target_a, int target_b,
              uint64_t seed, uint64_t start, uint64_t stop, uint64_t threshold, chunk=None):
    cdef Walk w
    cdef int* roots = <int*>malloc(num_nodes * sizeof(int))
    cdef int* parent = <int*>malloc(num_nodes * sizeof(int))
    cdef uint64_t key, stream, i
    cdef int j, a, b, x, y, z, nedges
    cdef int64_t hits_a = 0, hits_b = 0, both = 0
    cdef bint ha, hb
    if roots == NULL or parent == NULL:
        free(roots)
        free(parent)
        raise MemoryError()
    _allocate(&w, num_nodes, edge_u, edge_v)
    try:
        _prepare(&w, num_nodes, base_u, base_v)
        nedges = w.nfree
        with nogil:
            for j in range(num_nodes):
                roots[j] = _find(w.parent, j)
            key = _mix64(seed)
            for i in range(start, stop):
                memcpy(parent, roots, num_nodes * sizeof(int))
                stream = _mix64(key + (i + 1) * GOLDEN)
                for j in range(nedges):
                    if (_mix64(stream + (<uint64_t>(j + 1)) * GOLDEN) >> 11) < threshold:
                        a = _find_halving(parent, w.eu[j])
                        b = _find_halving(parent, w.ev[j])
                        if a != b:
                            parent[b] = a
                x = _find_halving(parent, source)
                ha = x == _find_halving(parent, target_a)
                hb = x == _find_halving(parent, target_b)
                hits_a += ha
                hits_b += hb
                both += ha and hb
    finally:
        _release(&w)
        free(roots)
        free(parent)
    return hits_a, hits_b, both
