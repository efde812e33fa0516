"""Root-enumeration solver parameterized by the vertices in non-singleton clusters.

For every choice of one root per cluster, an auxiliary digraph keeps only the
arcs a feasible tree with those roots could use: arcs into a cluster root
from outside its cluster, and the arcs of the root's intra-cluster
shortest-path tree. A shortest-path tree of that digraph from the source is
the best tree for the root vector; the minimum over all vectors is optimal.
"""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .. import kernels
from ..errors import BudgetExceededError, InfeasibleInstanceError
from ..graph import INFINITY, ClusteredInstance, require_tree_feasible, tree_from_edges
from .common import ExactResult, resolve_problem
from .tables import ClusterTables, cluster_tables

MAX_ROOT_VECTORS = 50_000_000


def candidate_roots(inst: ClusteredInstance, full_roots: bool = False) -> list[list[int]]:
    """Possible roots per cluster: the source for its own cluster, else
    boundary vertices (or every member when ``full_roots``)."""
    out = []
    for i, c in enumerate(inst.clusters):
        if i == inst.source_cluster:
            out.append([inst.source])
        elif full_roots:
            out.append(list(c))
        else:
            out.append([v for v in c if inst.is_boundary(v)])
    return out


def _csr(inst: ClusteredInstance):
    indptr = np.zeros(inst.n + 1, dtype=np.int32)
    nbr, wt = [], []
    for v in range(inst.n):
        for y, w, _ in inst.adjacency[v]:
            nbr.append(y)
            wt.append(w)
        indptr[v + 1] = len(nbr)
    return indptr, np.asarray(nbr, dtype=np.int32), np.asarray(wt, dtype=np.int64)


def _search_inputs(inst, tables: ClusterTables, cands):
    cand_ptr = np.zeros(len(cands) + 1, dtype=np.int32)
    flat = []
    for i, c in enumerate(cands):
        flat.extend(c)
        cand_ptr[i + 1] = len(flat)
    flat = np.asarray(flat, dtype=np.int32)
    tparent = np.full((max(len(flat), 1), inst.n), -1, dtype=np.int32)
    for row, r in enumerate(flat.tolist()):
        tparent[row] = tables.intra_parent[r]
    return cand_ptr, flat, tparent


def root_vector_tree(inst: ClusteredInstance, tables: ClusterTables, roots):
    """Shortest-path tree of the auxiliary digraph for ``roots`` as an edge list,
    or None when some vertex is unreachable."""
    owner = inst.cluster_of
    is_root = {r: i for i, r in enumerate(roots)}
    dist = [INFINITY] * inst.n
    parent = [-1] * inst.n
    done = [False] * inst.n
    s = inst.source
    dist[s] = 0
    heap = [(0, s)]
    while heap:
        d, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        for y, w, _ in inst.adjacency[x]:
            if done[y]:
                continue
            cy = owner[y]
            if cy == owner[x]:
                if tables.intra_parent[roots[cy]][y] != x:
                    continue
            elif is_root.get(y) != cy:
                continue
            if d + w < dist[y]:
                dist[y] = d + w
                parent[y] = x
                heapq.heappush(heap, (d + w, y))
    if not all(done):
        return None
    return [(parent[v], v) for v in range(inst.n) if v != s]


def fpt2_solve(
    inst: ClusteredInstance,
    problem: str | None = None,
    *,
    full_roots: bool = False,
    backend: str | None = None,
    threads: int = 1,
    max_vectors: int | None = None,
) -> ExactResult:
    """Exact optimum by enumerating root vectors in lexicographic order.

    Ties keep the lexicographically first optimal root vector, also when the
    enumeration is split across ``threads``.
    """
    problem, work = resolve_problem(inst, problem)
    require_tree_feasible(work)
    tables = cluster_tables(work)
    cands = candidate_roots(work, full_roots)
    total = math.prod(len(c) for c in cands)
    if max_vectors is None:
        max_vectors = MAX_ROOT_VECTORS
    if total > max_vectors:
        raise BudgetExceededError(f"{total} root vectors exceed the limit {max_vectors}")
    indptr, nbr, wt = _csr(work)
    owner = np.asarray(work.cluster_of, dtype=np.int32)
    mod = kernels.get_backend(backend)

    def run(cluster_lists):
        cand_ptr, flat, tparent = _search_inputs(work, tables, cluster_lists)
        cost, choice, count = mod.fpt2_search(work.n, indptr, nbr, wt, owner, work.k,
                                              cand_ptr, flat, tparent, work.source)
        return int(cost), [cluster_lists[c][j] for c, j in enumerate(choice)], int(count)

    split = next((i for i, c in enumerate(cands) if len(c) > 1), None)
    if threads <= 1 or split is None:
        best, roots, count = run(cands)
    else:
        chunks = [list(x) for x in np.array_split(np.asarray(cands[split]), min(threads, len(cands[split])))]
        jobs = [cands[:split] + [[int(v) for v in ch]] + cands[split + 1:] for ch in chunks]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
        position = [{v: j for j, v in enumerate(c)} for c in cands]
        count = sum(r[2] for r in results)
        best, roots, _ = min(results, key=lambda r: (r[0], [position[c][v] for c, v in enumerate(r[1])]))
    if best >= INFINITY:
        raise InfeasibleInstanceError("infeasible instance: no root vector reaches every vertex")
    edges = root_vector_tree(work, tables, roots)
    tree = tree_from_edges(inst, edges)
    if tree.cost != best or not tree.feasible:
        raise AssertionError(f"rebuilt tree costs {tree.cost}, search says {best}")
    stats = {"root_vectors": count, "roots": roots, "candidates": total, "problem": problem,
             "full_roots": full_roots, "backend": kernels.backend_name(mod)}
    return ExactResult(tree, best, "fpt2", stats)
