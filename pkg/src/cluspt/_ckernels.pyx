# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: naive min-sum subset convolution and the root-vector
search of the root-enumeration solver. Semantics mirror ``_pykernels``."""

from libc.stdint cimport int32_t, int64_t
from libc.stdlib cimport free, malloc

import numpy as np

cdef int64_t INF = (<int64_t>1) << 60


def subset_convolve_batch(const int64_t[:, ::1] f, const int64_t[:, ::1] g, int u, int64_t cap):
    """Row-wise ``out[r, Y] = min(cap, min_{Z subset Y} f[r, Z] + g[r, Y \\ Z])``."""
    cdef Py_ssize_t rows = f.shape[0]
    cdef Py_ssize_t size = (<Py_ssize_t>1) << u
    if f.shape[1] != size or g.shape[1] != size or g.shape[0] != rows:
        raise ValueError("f and g must have shape (rows, 2**u)")
    out = np.empty((rows, size), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    cdef Py_ssize_t r, y, z
    cdef int64_t best, val
    with nogil:
        for r in range(rows):
            for y in range(size):
                best = cap
                z = y
                while True:
                    val = f[r, z] + g[r, y ^ z]
                    if val < best:
                        best = val
                    if z == 0:
                        break
                    z = (z - 1) & y
                o[r, y] = best
    return out


cdef inline bint _less(int64_t ka, int32_t va, int64_t kb, int32_t vb) noexcept nogil:
    return ka < kb or (ka == kb and va < vb)


cdef inline void _push(int64_t* hk, int32_t* hv, Py_ssize_t* size, int64_t key, int32_t v) noexcept nogil:
    cdef Py_ssize_t i = size[0]
    cdef Py_ssize_t p
    size[0] += 1
    while i > 0:
        p = (i - 1) >> 1
        if _less(key, v, hk[p], hv[p]):
            hk[i] = hk[p]
            hv[i] = hv[p]
            i = p
        else:
            break
    hk[i] = key
    hv[i] = v


cdef inline void _pop(int64_t* hk, int32_t* hv, Py_ssize_t* size) noexcept nogil:
    cdef Py_ssize_t n = size[0] - 1
    cdef int64_t key = hk[n]
    cdef int32_t v = hv[n]
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t c
    size[0] = n
    if n == 0:
        return
    while True:
        c = 2 * i + 1
        if c >= n:
            break
        if c + 1 < n and _less(hk[c + 1], hv[c + 1], hk[c], hv[c]):
            c += 1
        if _less(hk[c], hv[c], key, v):
            hk[i] = hk[c]
            hv[i] = hv[c]
            i = c
        else:
            break
    hk[i] = key
    hv[i] = v


cdef int64_t _evaluate(
    int n, const int32_t[::1] indptr, const int32_t[::1] nbr, const int64_t[::1] wt,
    const int32_t[::1] cluster_of, const int32_t[:, ::1] tparent,
    int32_t* root_vertex, int32_t* root_row, int source, int64_t bound,
    int64_t* dist, char* done, int64_t* hk, int32_t* hv,
) noexcept nogil:
    """Shortest-path cost in the auxiliary digraph for one root vector, or INF.

    Arc x->y exists iff y is a cluster root and lies in another cluster, or
    x is y's parent in the intra-cluster tree rooted at y's cluster root.
    Aborts with INF once the settled cost reaches ``bound``.
    """
    cdef Py_ssize_t hsize = 0
    cdef int i, x, y, cy, settled = 0
    cdef int32_t e
    cdef int64_t d, nd, total = 0
    for i in range(n):
        dist[i] = INF
        done[i] = 0
    dist[source] = 0
    _push(hk, hv, &hsize, 0, source)
    while hsize > 0:
        d = hk[0]
        x = hv[0]
        _pop(hk, hv, &hsize)
        if done[x]:
            continue
        done[x] = 1
        settled += 1
        total += d
        if total >= bound:
            return INF
        for e in range(indptr[x], indptr[x + 1]):
            y = nbr[e]
            if done[y]:
                continue
            cy = cluster_of[y]
            if cy == cluster_of[x]:
                if tparent[root_row[cy], y] != x:
                    continue
            elif root_vertex[cy] != y:
                continue
            nd = d + wt[e]
            if nd < dist[y]:
                dist[y] = nd
                _push(hk, hv, &hsize, nd, y)
    if settled != n:
        return INF
    return total


def fpt2_search(
    int n, const int32_t[::1] indptr, const int32_t[::1] nbr, const int64_t[::1] wt,
    const int32_t[::1] cluster_of, int k, const int32_t[::1] cand_ptr,
    const int32_t[::1] cand, const int32_t[:, ::1] tparent, int source,
):
    """Enumerate root vectors lexicographically; return ``(cost, choice, count)``.

    ``choice[c]`` indexes ``cand`` for cluster ``c``. Only strict improvements
    replace the incumbent, so the lexicographically first optimum wins.
    """
    cdef int64_t best = INF
    cdef int64_t cost, count = 0
    cdef int c
    cdef Py_ssize_t heap_cap = indptr[n] + n + 1
    cdef int32_t* idx = <int32_t*>malloc(k * sizeof(int32_t) + 1)
    cdef int32_t* best_idx = <int32_t*>malloc(k * sizeof(int32_t) + 1)
    cdef int32_t* root_vertex = <int32_t*>malloc(k * sizeof(int32_t) + 1)
    cdef int32_t* root_row = <int32_t*>malloc(k * sizeof(int32_t) + 1)
    cdef int64_t* dist = <int64_t*>malloc(n * sizeof(int64_t) + 1)
    cdef char* done = <char*>malloc(n + 1)
    cdef int64_t* hk = <int64_t*>malloc(heap_cap * sizeof(int64_t))
    cdef int32_t* hv = <int32_t*>malloc(heap_cap * sizeof(int32_t))
    if not (idx and best_idx and root_vertex and root_row and dist and done and hk and hv):
        free(idx); free(best_idx); free(root_vertex); free(root_row)
        free(dist); free(done); free(hk); free(hv)
        raise MemoryError()
    try:
        with nogil:
            for c in range(k):
                if cand_ptr[c + 1] == cand_ptr[c]:
                    count = -1
                idx[c] = 0
                best_idx[c] = 0
            if count == 0:
                while True:
                    for c in range(k):
                        root_row[c] = cand_ptr[c] + idx[c]
                        root_vertex[c] = cand[root_row[c]]
                    cost = _evaluate(n, indptr, nbr, wt, cluster_of, tparent, root_vertex,
                                     root_row, source, best, dist, done, hk, hv)
                    count += 1
                    if cost < best:
                        best = cost
                        for c in range(k):
                            best_idx[c] = idx[c]
                    c = k - 1
                    while c >= 0:
                        idx[c] += 1
                        if idx[c] < cand_ptr[c + 1] - cand_ptr[c]:
                            break
                        idx[c] = 0
                        c -= 1
                    if c < 0:
                        break
            else:
                count = 0
        choice = [best_idx[c] for c in range(k)]
    finally:
        free(idx); free(best_idx); free(root_vertex); free(root_row)
        free(dist); free(done); free(hk); free(hv)
    return best, choice, count
