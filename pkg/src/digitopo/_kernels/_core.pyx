# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bit kernels for graphs with at most 64 vertices.

Mirrors ``_pure`` operation for operation; the two backends must return
byte-identical canonical forms and identical decisions (the parity tests
enforce this). Callers route larger graphs to the pure backend.
"""

import os

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.string cimport memset

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "compiled"

_EMPTY_KEY = (0).to_bytes(2, "big") + b"\x00"

_MEMO_CAP = int(os.environ.get("DIGITOPO_MEMO_CAP", "1000000"))
_contractible = {}


def clear_caches():
    _contractible.clear()


cdef inline int _popcount(unsigned long long x) nogil:
    return __builtin_popcountll(x)


# ---------------------------------------------------------------------------
# connectivity and subgraphs


cdef bint _connected_c(int n, unsigned long long* adj) nogil:
    if n == 0:
        return 0
    cdef unsigned long long full = (<unsigned long long>1 << n) - 1 if n < 64 else <unsigned long long>0xFFFFFFFFFFFFFFFF
    cdef unsigned long long seen = 1, frontier = 1, new
    cdef unsigned long long f
    cdef int v
    while frontier:
        new = 0
        f = frontier
        while f:
            v = __builtin_ctzll(f)
            f &= f - 1
            new |= adj[v]
        frontier = new & ~seen
        seen |= frontier
    return seen == full


cdef int _subgraph_c(int n, unsigned long long* adj, unsigned long long mask,
                     unsigned long long* out, int* names) nogil:
    """Extract the induced subgraph on ``mask``; returns its order.

    ``names[i]`` receives the parent index of new vertex i.
    """
    cdef int m = 0, i, j
    cdef unsigned long long mm = mask, r
    cdef int pos[64]
    while mm:
        i = __builtin_ctzll(mm)
        mm &= mm - 1
        pos[i] = m
        names[m] = i
        m += 1
    for j in range(m):
        r = adj[names[j]] & mask
        out[j] = 0
        while r:
            i = __builtin_ctzll(r)
            r &= r - 1
            out[j] |= <unsigned long long>1 << pos[i]
    return m


def connected(int n, rows):
    cdef unsigned long long adj[64]
    cdef int i
    for i in range(n):
        adj[i] = rows[i]
    return bool(_connected_c(n, adj))


# ---------------------------------------------------------------------------
# canonical form
#
# Partition as position array plus cell-end flags. Refinement splits cells
# stably by neighbor counts against each splitter cell, restarting whenever
# something split, exactly like the pure backend.


cdef void _refine_c(int n, unsigned long long* adj, int* pos, unsigned char* ends) nogil:
    cdef int changed = 1
    cdef unsigned long long smask
    cdef int counts[64]
    cdef int si_start, si_end, start, end, i, j, keyc, keyv
    while changed:
        changed = 0
        si_start = 0
        while si_start < n:
            si_end = si_start
            while not ends[si_end]:
                si_end += 1
            smask = 0
            for i in range(si_start, si_end + 1):
                smask |= <unsigned long long>1 << pos[i]
            start = 0
            while start < n:
                end = start
                while not ends[end]:
                    end += 1
                if end > start:
                    for i in range(start, end + 1):
                        counts[i] = _popcount(adj[pos[i]] & smask)
                    for i in range(start + 1, end + 1):
                        keyc = counts[i]
                        keyv = pos[i]
                        j = i - 1
                        while j >= start and counts[j] > keyc:
                            counts[j + 1] = counts[j]
                            pos[j + 1] = pos[j]
                            j -= 1
                        counts[j + 1] = keyc
                        pos[j + 1] = keyv
                    for i in range(start, end):
                        if counts[i] != counts[i + 1] and not ends[i]:
                            ends[i] = 1
                            changed = 1
                start = end + 1
            if changed:
                break
            si_start = si_end + 1


cdef bytes _pack_c(int n, unsigned long long* adj, int* pos):
    cdef int nbits = n * (n - 1) // 2
    cdef int nbytes = (nbits + 7) // 8
    cdef unsigned char buf[512]
    memset(buf, 0, nbytes)
    cdef int i, j, p = 0, s
    cdef unsigned long long ri
    for i in range(n):
        ri = adj[pos[i]]
        for j in range(i + 1, n):
            if (ri >> pos[j]) & 1:
                s = nbits - 1 - p
                buf[nbytes - 1 - (s >> 3)] |= 1 << (s & 7)
            p += 1
    return PyBytes_FromStringAndSize(<char*>buf, nbytes)


cdef class _CanonState:
    cdef unsigned long long adj[64]
    cdef int n
    cdef bytes best

    cdef void search(self, int* pos, unsigned char* ends):
        cdef int target_start = -1, target_end = -1
        cdef int start = 0, end, i, k
        cdef int n = self.n
        while start < n:
            end = start
            while not ends[end]:
                end += 1
            if end > start:
                target_start = start
                target_end = end
                break
            start = end + 1
        cdef bytes cand
        if target_start < 0:
            cand = _pack_c(n, self.adj, pos)
            if self.best is None or cand < self.best:
                self.best = cand
            return
        cdef int child_pos[64]
        cdef unsigned char child_ends[64]
        cdef int branched[64]
        cdef int nb = 0, bi, v
        cdef bint twin
        cdef unsigned long long diff
        for i in range(target_start, target_end + 1):
            v = pos[i]
            twin = 0
            for bi in range(nb):
                diff = self.adj[branched[bi]] ^ self.adj[v]
                if diff == 0 or diff == ((<unsigned long long>1 << branched[bi]) | (<unsigned long long>1 << v)):
                    twin = 1
                    break
            if twin:
                continue
            branched[nb] = v
            nb += 1
            for k in range(n):
                child_pos[k] = pos[k]
                child_ends[k] = ends[k]
            # individualize v at the front of the target cell
            k = target_start
            child_pos[k] = v
            bi = target_start
            for k in range(target_start, target_end + 1):
                if pos[k] != v:
                    bi += 1
                    child_pos[bi] = pos[k]
            child_ends[target_start] = 1
            _refine_c(n, self.adj, child_pos, child_ends)
            self.search(child_pos, child_ends)


cdef bytes _canon_c(int n, unsigned long long* adj):
    if n == 0:
        return _EMPTY_KEY
    header = n.to_bytes(2, "big")
    if n == 1:
        return header + b"\x00"

    # component decomposition
    cdef unsigned long long unseen = ((<unsigned long long>1 << n) - 1) if n < 64 else <unsigned long long>0xFFFFFFFFFFFFFFFF
    cdef unsigned long long seen, frontier, new, f
    cdef int v, m
    comps = []
    while unseen:
        seen = unseen & (~unseen + 1)
        frontier = seen
        while frontier:
            new = 0
            f = frontier
            while f:
                v = __builtin_ctzll(f)
                f &= f - 1
                new |= adj[v]
            frontier = new & unseen & ~seen
            seen |= frontier
        unseen &= ~seen
        comps.append(seen)
    cdef unsigned long long sub[64]
    cdef int names[64]
    if len(comps) > 1:
        keys = []
        for mask in comps:
            m = _subgraph_c(n, adj, <unsigned long long>mask, sub, names)
            keys.append(_canon_c(m, sub))
        keys.sort()
        return header + b"\x01" + b"".join(keys)

    # initial partition by ascending degree, index order within
    cdef int deg[64]
    cdef int pos[64]
    cdef unsigned char ends[64]
    cdef int i, j, keyd, keyv
    for i in range(n):
        deg[i] = _popcount(adj[i])
        pos[i] = i
        ends[i] = 0
    for i in range(1, n):
        keyd = deg[pos[i]]
        keyv = pos[i]
        j = i - 1
        while j >= 0 and (deg[pos[j]] > keyd or (deg[pos[j]] == keyd and pos[j] > keyv)):
            pos[j + 1] = pos[j]
            j -= 1
        pos[j + 1] = keyv
    for i in range(n - 1):
        if deg[pos[i]] != deg[pos[i + 1]]:
            ends[i] = 1
    ends[n - 1] = 1
    _refine_c(n, adj, pos, ends)

    cdef _CanonState state = _CanonState()
    state.n = n
    for i in range(n):
        state.adj[i] = adj[i]
    state.best = None
    state.search(pos, ends)
    return header + b"\x00" + state.best


def canon_bytes(int n, rows):
    if n > 64:
        raise ValueError("compiled kernel handles at most 64 vertices")
    cdef unsigned long long adj[64]
    cdef int i
    for i in range(n):
        adj[i] = rows[i]
    return _canon_c(n, adj)


# ---------------------------------------------------------------------------
# contractibility


def _memo_put(key, value):
    if len(_contractible) >= _MEMO_CAP:
        _contractible.clear()
    _contractible[key] = value


cdef bint _contract_c(int n, unsigned long long* adj):
    if n == 0:
        return 0
    if n == 1:
        return 1
    if not _connected_c(n, adj):
        return 0
    key = _canon_c(n, adj)
    hit = _contractible.get(key)
    if hit is not None:
        return hit
    cdef int order[64]
    cdef int deg[64]
    cdef int i, j, keyd, keyv, v, m
    for i in range(n):
        deg[i] = _popcount(adj[i])
        order[i] = i
    for i in range(1, n):
        keyv = order[i]
        keyd = deg[keyv]
        j = i - 1
        while j >= 0 and (deg[order[j]] > keyd or (deg[order[j]] == keyd and order[j] > keyv)):
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = keyv
    cdef unsigned long long sub[64]
    cdef int names[64]
    cdef unsigned long long full = ((<unsigned long long>1 << n) - 1) if n < 64 else <unsigned long long>0xFFFFFFFFFFFFFFFF
    cdef bint result = 0
    for i in range(n):
        v = order[i]
        m = _subgraph_c(n, adj, adj[v], sub, names)
        if not _contract_c(m, sub):
            continue
        m = _subgraph_c(n, adj, full ^ (<unsigned long long>1 << v), sub, names)
        if _contract_c(m, sub):
            result = 1
            break
    _memo_put(key, bool(result))
    return result


def is_contractible(int n, rows):
    if n > 64:
        raise ValueError("compiled kernel handles at most 64 vertices")
    cdef unsigned long long adj[64]
    cdef int i
    for i in range(n):
        adj[i] = rows[i]
    return bool(_contract_c(n, adj))


cdef bint _witness_c(int n, unsigned long long* adj, int* names, acc):
    if n == 1:
        return 1
    if not _connected_c(n, adj):
        return 0
    key = _canon_c(n, adj)
    if _contractible.get(key) is False:
        return 0
    cdef int order[64]
    cdef int deg[64]
    cdef int i, j, keyd, keyv, v, m, k
    for i in range(n):
        deg[i] = _popcount(adj[i])
        order[i] = i
    for i in range(1, n):
        keyv = order[i]
        keyd = deg[keyv]
        j = i - 1
        while j >= 0 and (deg[order[j]] > keyd or (deg[order[j]] == keyd and order[j] > keyv)):
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = keyv
    cdef unsigned long long rim_sub[64]
    cdef unsigned long long del_sub[64]
    cdef int rim_names[64]
    cdef int del_names[64]
    cdef int sub_names[64]
    cdef unsigned long long full = ((<unsigned long long>1 << n) - 1) if n < 64 else <unsigned long long>0xFFFFFFFFFFFFFFFF
    for i in range(n):
        v = order[i]
        m = _subgraph_c(n, adj, adj[v], rim_sub, rim_names)
        if not _contract_c(m, rim_sub):
            continue
        m = _subgraph_c(n, adj, full ^ (<unsigned long long>1 << v), del_sub, del_names)
        for k in range(m):
            sub_names[k] = names[del_names[k]]
        acc.append(names[v])
        if _witness_c(m, del_sub, sub_names, acc):
            return 1
        acc.pop()
    _memo_put(key, False)
    return 0


def contraction_order(int n, rows):
    if n > 64:
        raise ValueError("compiled kernel handles at most 64 vertices")
    if n == 0:
        return None
    cdef unsigned long long adj[64]
    cdef int names[64]
    cdef int i
    for i in range(n):
        adj[i] = rows[i]
        names[i] = i
    acc = []
    if _witness_c(n, adj, names, acc):
        return acc
    return None


# ---------------------------------------------------------------------------
# clique counting


cdef int _clique_dfs(unsigned long long* adj, long long* counts, int cap,
                     int size, unsigned long long cand) except -1:
    counts[size - 1] += 1
    if cand and size == cap:
        raise ValueError(f"clique larger than cap {cap}")
    cdef unsigned long long rest = cand
    cdef int u
    while rest:
        u = __builtin_ctzll(rest)
        rest &= rest - 1
        _clique_dfs(adj, counts, cap, size + 1, rest & adj[u])
    return 0


def clique_counts(int n, rows, int cap=9):
    if n > 64:
        raise ValueError("compiled kernel handles at most 64 vertices")
    cdef unsigned long long adj[64]
    cdef long long counts[64]
    cdef int i
    if cap > 64:
        raise ValueError("cap too large")
    for i in range(n):
        adj[i] = rows[i]
    for i in range(cap):
        counts[i] = 0
    cdef unsigned long long higher
    for i in range(n):
        higher = ~(((<unsigned long long>1) << (i + 1)) - 1) if i < 63 else 0
        _clique_dfs(adj, counts, cap, 1, adj[i] & higher)
    return [counts[i] for i in range(cap)]
