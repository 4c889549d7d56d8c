# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: clique-graph adjacency and bitset branch and bound.

Mirrors ``nbcws._purepy`` step for step (same coloring, same branching
order, same node accounting) on fixed-width uint64 bitsets.
"""

import numpy as np
from time import perf_counter

from libc.stdint cimport int32_t, int64_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

NAME = "cython"


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline bint _contains(const int64_t[::1] arr, int64_t key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = arr.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo < arr.shape[0] and arr[lo] == key


def adjacency_rows(vertices, int d, forbidden):
    cdef const int64_t[:, ::1] V = np.ascontiguousarray(vertices, dtype=np.int64)
    cdef const int64_t[::1] F = np.ascontiguousarray(forbidden, dtype=np.int64)
    cdef Py_ssize_t N = V.shape[0], m = V.shape[1]
    cdef Py_ssize_t W = (N + 63) // 64
    out = np.zeros((N, W), dtype=np.uint64)
    cdef uint64_t[:, ::1] o = out
    wts = (d ** np.arange(m - 1, -1, -1, dtype=np.int64)).astype(np.int64)
    cdef const int64_t[::1] w = wts
    cdef Py_ssize_t i, j, k
    cdef int64_t fwd, bwd, diff
    with nogil:
        for i in range(N):
            for j in range(i + 1, N):
                fwd = 0
                bwd = 0
                for k in range(m):
                    diff = (V[i, k] - V[j, k]) % d
                    if diff < 0:
                        diff += d
                    fwd += diff * w[k]
                    bwd += ((d - diff) % d) * w[k]
                if not _contains(F, fwd) and not _contains(F, bwd):
                    o[i, j >> 6] |= (<uint64_t>1) << (j & 63)
                    o[j, i >> 6] |= (<uint64_t>1) << (i & 63)
    return out


cdef struct Frame:
    uint64_t* P
    int32_t* verts
    int32_t* colors
    Py_ssize_t idx


cdef Py_ssize_t _color_sort(const uint64_t* adj, Py_ssize_t W, const uint64_t* P,
                            uint64_t* U, uint64_t* Q, int32_t* verts, int32_t* colors) noexcept nogil:
    cdef Py_ssize_t count = 0, w, qw, remaining = 0
    cdef int32_t k = 0
    cdef int v
    cdef uint64_t low
    for w in range(W):
        U[w] = P[w]
        if P[w]:
            remaining = 1
    while remaining:
        k += 1
        for w in range(W):
            Q[w] = U[w]
        qw = 0
        while qw < W:
            if Q[qw] == 0:
                qw += 1
                continue
            low = Q[qw] & (~Q[qw] + 1)
            v = <int>(qw * 64 + __builtin_ctzll(Q[qw]))
            for w in range(qw, W):
                Q[w] &= ~adj[v * W + w]
            Q[qw] ^= low
            U[qw] ^= low
            verts[count] = v
            colors[count] = k
            count += 1
        remaining = 0
        for w in range(W):
            if U[w]:
                remaining = 1
                break
    return count


def max_clique_search(rows, start, candidates, int lower_bound, long long max_nodes, double deadline):
    cdef const uint64_t[:, ::1] R = np.ascontiguousarray(rows, dtype=np.uint64)
    cdef const uint64_t[::1] cand = np.ascontiguousarray(candidates, dtype=np.uint64).reshape(-1)
    cdef Py_ssize_t N = R.shape[0]
    cdef Py_ssize_t W = R.shape[1] if N else 0
    C = list(start)
    best = None
    cdef Py_ssize_t best_size = lower_bound
    if len(C) > best_size:
        best = C[:]
        best_size = len(C)
    cdef bint empty0 = True
    cdef Py_ssize_t w
    for w in range(W):
        if cand[w]:
            empty0 = False
    if max_nodes == 0:
        return best, 0, empty0
    if N == 0:
        return best, 1, True

    cdef const uint64_t* adj = &R[0, 0]
    cdef Py_ssize_t base = len(C)
    cdef Py_ssize_t max_depth = N + 1
    cdef Frame* frames = <Frame*>malloc(max_depth * sizeof(Frame))
    cdef int32_t* path = <int32_t*>malloc(max_depth * sizeof(int32_t))
    cdef uint64_t* U = <uint64_t*>malloc(W * sizeof(uint64_t))
    cdef uint64_t* Q = <uint64_t*>malloc(W * sizeof(uint64_t))
    cdef uint64_t* newP = <uint64_t*>malloc(W * sizeof(uint64_t))
    cdef Py_ssize_t allocated = 0, depth = 0, plen = 0, i, cnt, idx
    cdef long long nodes = 0
    cdef bint complete = True, nonempty
    cdef int v
    if frames == NULL or path == NULL or U == NULL or Q == NULL or newP == NULL:
        free(frames); free(path); free(U); free(Q); free(newP)
        raise MemoryError()

    cdef Frame* f
    try:
        # root frame
        frames[0].P = <uint64_t*>malloc(W * sizeof(uint64_t))
        frames[0].verts = <int32_t*>malloc(N * sizeof(int32_t))
        frames[0].colors = <int32_t*>malloc(N * sizeof(int32_t))
        allocated = 1
        if frames[0].P == NULL or frames[0].verts == NULL or frames[0].colors == NULL:
            raise MemoryError()
        for w in range(W):
            frames[0].P[w] = cand[w]
        nodes = 1
        cnt = _color_sort(adj, W, frames[0].P, U, Q, frames[0].verts, frames[0].colors)
        frames[0].idx = cnt - 1
        depth = 1
        while depth > 0:
            f = &frames[depth - 1]
            idx = f.idx
            if idx < 0 or base + plen + f.colors[idx] <= best_size:
                depth -= 1
                if depth > 0:
                    plen -= 1
                    v = path[plen]
                    f = &frames[depth - 1]
                    f.P[v >> 6] &= ~((<uint64_t>1) << (v & 63))
                    f.idx -= 1
                continue
            v = f.verts[idx]
            nonempty = False
            for w in range(W):
                newP[w] = f.P[w] & adj[v * W + w]
                if newP[w]:
                    nonempty = True
            path[plen] = v
            plen += 1
            if not nonempty:
                if base + plen > best_size:
                    best = C + [path[i] for i in range(plen)]
                    best_size = base + plen
                plen -= 1
                f.P[v >> 6] &= ~((<uint64_t>1) << (v & 63))
                f.idx = idx - 1
                continue
            if (max_nodes >= 0 and nodes >= max_nodes) or ((nodes & 1023) == 0 and perf_counter() > deadline):
                complete = False
                break
            nodes += 1
            if depth == allocated:
                frames[depth].P = <uint64_t*>malloc(W * sizeof(uint64_t))
                frames[depth].verts = <int32_t*>malloc(N * sizeof(int32_t))
                frames[depth].colors = <int32_t*>malloc(N * sizeof(int32_t))
                allocated += 1
                if frames[depth].P == NULL or frames[depth].verts == NULL or frames[depth].colors == NULL:
                    raise MemoryError()
            memcpy(frames[depth].P, newP, W * sizeof(uint64_t))
            cnt = _color_sort(adj, W, frames[depth].P, U, Q, frames[depth].verts, frames[depth].colors)
            frames[depth].idx = cnt - 1
            depth += 1
    finally:
        for i in range(allocated):
            free(frames[i].P)
            free(frames[i].verts)
            free(frames[i].colors)
        free(frames); free(path); free(U); free(Q); free(newP)
    return best, nodes, complete
