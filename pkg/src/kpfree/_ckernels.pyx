# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels (graphs with at most 64 vertices).

Same API and results as ``_pykernels``; vertex sets are ``uint64`` masks.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

from kpfree._pykernels import NodeLimitExceeded

BACKEND = "cython"
MAX_N = 64


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _pc(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef uint64_t _count(const uint64_t* adj, uint64_t mask, int t) noexcept nogil:
    cdef uint64_t total = 0, m = mask, cand
    cdef int v
    if t <= 0:
        return 1
    if t == 1:
        return _pc(mask)
    while m:
        v = __builtin_ctzll(m)
        m &= m - 1
        cand = m & adj[v]
        if t == 2:
            total += _pc(cand)
        elif _pc(cand) >= t - 1:
            total += _count(adj, cand, t - 1)
    return total


cdef bint _has(const uint64_t* adj, uint64_t mask, int t) noexcept nogil:
    cdef uint64_t m = mask, cand
    cdef int v
    if t <= 0:
        return True
    if t == 1:
        return mask != 0
    while m:
        v = __builtin_ctzll(m)
        m &= m - 1
        cand = m & adj[v]
        if t == 2:
            if cand:
                return True
        elif _pc(cand) >= t - 1 and _has(adj, cand, t - 1):
            return True
    return False


cdef uint64_t* _load(list adj) except NULL:
    cdef Py_ssize_t n = len(adj), i
    if n > 64:
        raise ValueError("compiled kernels support at most 64 vertices")
    cdef uint64_t* buf = <uint64_t*> malloc((n + 1) * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = <uint64_t> adj[i]
    return buf


def count_cliques(list adj, mask, int t):
    cdef uint64_t* a = _load(adj)
    try:
        return _count(a, <uint64_t> mask, t)
    finally:
        free(a)


def has_clique(list adj, mask, int t):
    cdef uint64_t* a = _load(adj)
    try:
        return _has(a, <uint64_t> mask, t)
    finally:
        free(a)


cdef bint _list(const uint64_t* adj, uint64_t cand, uint64_t acc, int need,
                list out, Py_ssize_t cap) except -1:
    cdef uint64_t m = cand, low
    cdef int v
    if need == 0:
        out.append(acc)
        return cap >= 0 and len(out) >= cap
    while m:
        if _pc(m) < need:
            return False
        low = m & (~m + 1)
        v = __builtin_ctzll(m)
        m ^= low
        if _list(adj, m & adj[v], acc | low, need - 1, out, cap):
            return True
    return False


def list_cliques(list adj, mask, int t, Py_ssize_t cap=-1):
    cdef list out = []
    if t <= 0:
        return [0]
    cdef uint64_t* a = _load(adj)
    try:
        _list(a, <uint64_t> mask, 0, t, out, cap)
    finally:
        free(a)
    return out


cdef struct PartCtx:
    const uint64_t* adj
    const int* order
    const int* parts
    uint64_t* classes
    int* assign
    int depth
    int k
    long long nodes
    long long node_limit
    bint overflow


cdef bint _part(PartCtx* ctx, int i) noexcept nogil:
    cdef int v, c
    cdef uint64_t bit, nv
    if i == ctx.depth:
        return True
    v = ctx.order[i]
    bit = (<uint64_t> 1) << v
    nv = ctx.adj[v]
    for c in range(ctx.k):
        ctx.nodes += 1
        if ctx.node_limit and ctx.nodes > ctx.node_limit:
            ctx.overflow = True
            return False
        if _has(ctx.adj, ctx.classes[c] & nv, ctx.parts[c] - 1):
            continue
        ctx.classes[c] |= bit
        ctx.assign[v] = c
        if _part(ctx, i + 1):
            return True
        if ctx.overflow:
            return False
        ctx.classes[c] ^= bit
        ctx.assign[v] = -1
    return False


def search_partition(list adj, order, parts, long long node_limit=0):
    cdef Py_ssize_t n = len(adj), k = len(parts), d = len(order), i
    cdef uint64_t* a = _load(adj)
    cdef int* ord_ = <int*> malloc((d + 1) * sizeof(int))
    cdef int* parts_ = <int*> malloc((k + 1) * sizeof(int))
    cdef uint64_t* classes = <uint64_t*> malloc((k + 1) * sizeof(uint64_t))
    cdef int* assign = <int*> malloc((n + 1) * sizeof(int))
    cdef PartCtx ctx
    cdef bint found
    try:
        for i in range(d):
            ord_[i] = order[i]
        for i in range(k):
            parts_[i] = parts[i]
            classes[i] = 0
        for i in range(n):
            assign[i] = -1
        ctx.adj = a
        ctx.order = ord_
        ctx.parts = parts_
        ctx.classes = classes
        ctx.assign = assign
        ctx.depth = <int> d
        ctx.k = <int> k
        ctx.nodes = 0
        ctx.node_limit = node_limit
        ctx.overflow = False
        with nogil:
            found = _part(&ctx, 0)
        if ctx.overflow:
            raise NodeLimitExceeded(ctx.nodes)
        result = [assign[i] for i in range(n)] if found else None
        return result, ctx.nodes
    finally:
        free(a)
        free(ord_)
        free(parts_)
        free(classes)
        free(assign)


cdef int _cover_bound(const uint64_t* adj, uint64_t rest, int cap) noexcept nogil:
    cdef int bound = 0, size, v, u
    cdef uint64_t clique, cand, low
    while rest:
        v = __builtin_ctzll(rest)
        clique = (<uint64_t> 1) << v
        cand = rest & adj[v]
        while cand:
            u = __builtin_ctzll(cand)
            clique |= (<uint64_t> 1) << u
            cand &= adj[u]
        size = _pc(clique)
        bound += size if size < cap else cap
        rest &= ~clique
    return bound


cdef class _MaxSearch:
    cdef const uint64_t* adj
    cdef int n, p
    cdef public int best
    cdef public long long count, nodes, node_limit
    cdef public list optima
    cdef Py_ssize_t collect

    cdef int rec(self, int i, uint64_t chosen, int size, uint64_t rest) except -1:
        cdef uint64_t bit
        self.nodes += 1
        if self.node_limit and self.nodes > self.node_limit:
            raise NodeLimitExceeded(self.nodes)
        if size + _cover_bound(self.adj, rest, self.p - 1) < self.best:
            return 0
        if i == self.n:
            if size > self.best:
                self.best = size
                self.count = 0
                self.optima = []
            self.count += 1
            if len(self.optima) < self.collect:
                self.optima.append(chosen)
            return 0
        bit = (<uint64_t> 1) << i
        rest ^= bit
        if not _has(self.adj, chosen & self.adj[i], self.p - 1):
            self.rec(i + 1, chosen | bit, size + 1, rest)
        self.rec(i + 1, chosen, size, rest)
        return 0


def max_kpfree(list adj, int p, Py_ssize_t collect=1, long long node_limit=0):
    cdef Py_ssize_t n = len(adj)
    cdef uint64_t* a = _load(adj)
    cdef _MaxSearch s = _MaxSearch()
    cdef uint64_t full = (~(<uint64_t> 0)) if n == 64 else (((<uint64_t> 1) << n) - 1)
    try:
        s.adj = a
        s.n = <int> n
        s.p = p
        s.best = -1
        s.count = 0
        s.nodes = 0
        s.node_limit = node_limit
        s.optima = []
        s.collect = collect
        s.rec(0, 0, 0, full)
        return s.best, s.optima, s.count, s.nodes
    finally:
        free(a)
