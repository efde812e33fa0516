"""Pure-Python/numpy twins of the compiled kernels in ``_ckernels.pyx``.

Both modules must return identical results for identical inputs.
"""

from __future__ import annotations

import heapq
import itertools
from functools import lru_cache

import numpy as np

INF = 1 << 60
_ROW_CHUNK = 8


@lru_cache(maxsize=16)
def _subset_pairs(u: int):
    """All ``(Y, Z)`` with ``Z`` a subset of ``Y``, grouped by ``Y``; 3**u pairs."""
    ys = np.zeros(1, dtype=np.int64)
    zs = np.zeros(1, dtype=np.int64)
    for bit in range(u):
        b = np.int64(1 << bit)
        ys = np.concatenate([ys, ys | b, ys | b])
        zs = np.concatenate([zs, zs, zs | b])
    order = np.argsort(ys, kind="stable")
    ys, zs = ys[order], zs[order]
    starts = np.flatnonzero(np.r_[True, ys[1:] != ys[:-1]])
    return zs, ys ^ zs, starts


def subset_convolve_batch(f, g, u: int, cap: int):
    """Row-wise ``out[r, Y] = min(cap, min_{Z subset Y} f[r, Z] + g[r, Y \\ Z])``."""
    f = np.ascontiguousarray(f, dtype=np.int64)
    g = np.ascontiguousarray(g, dtype=np.int64)
    size = 1 << u
    if f.shape[1:] != (size,) or g.shape != f.shape:
        raise ValueError("f and g must have shape (rows, 2**u)")
    zs, rest, starts = _subset_pairs(u)
    out = np.empty_like(f)
    for lo in range(0, f.shape[0], _ROW_CHUNK):
        hi = lo + _ROW_CHUNK
        vals = f[lo:hi, zs] + g[lo:hi, rest]
        out[lo:hi] = np.minimum(np.minimum.reduceat(vals, starts, axis=1), cap)
    return out


def _evaluate(n, indptr, nbr, wt, cluster_of, tparent, root_vertex, root_row, source, bound):
    dist = [INF] * n
    done = [False] * n
    dist[source] = 0
    heap = [(0, source)]
    total = 0
    settled = 0
    while heap:
        d, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        settled += 1
        total += d
        if total >= bound:
            return INF
        cx = cluster_of[x]
        for e in range(indptr[x], indptr[x + 1]):
            y = nbr[e]
            if done[y]:
                continue
            cy = cluster_of[y]
            if cy == cx:
                if tparent[root_row[cy]][y] != x:
                    continue
            elif root_vertex[cy] != y:
                continue
            nd = d + wt[e]
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    if settled != n:
        return INF
    return total


def fpt2_search(n, indptr, nbr, wt, cluster_of, k, cand_ptr, cand, tparent, source):
    """Enumerate root vectors lexicographically; return ``(cost, choice, count)``."""
    indptr, nbr, wt = list(map(int, indptr)), list(map(int, nbr)), list(map(int, wt))
    cluster_of, cand_ptr, cand = list(map(int, cluster_of)), list(map(int, cand_ptr)), list(map(int, cand))
    tparent = [list(map(int, row)) for row in tparent]
    ranges = [range(cand_ptr[c + 1] - cand_ptr[c]) for c in range(k)]
    best = INF
    best_idx = [0] * k
    count = 0
    if any(len(r) == 0 for r in ranges):
        return best, best_idx, 0
    for idx in itertools.product(*ranges):
        root_row = [cand_ptr[c] + idx[c] for c in range(k)]
        root_vertex = [cand[r] for r in root_row]
        cost = _evaluate(n, indptr, nbr, wt, cluster_of, tparent, root_vertex, root_row, source, best)
        count += 1
        if cost < best:
            best = cost
            best_idx = list(idx)
    return best, best_idx, count
