"""Subset-convolution dynamic program parameterized by the number of clusters.

Ground set ``U`` packs the clusters into bits ``0..k-1`` and ``b`` label bits
into ``k..k+b-1``; the label part of a subset encodes the vertex that
connects a group of clusters to the rest of the tree. ``OPT_{v,i}[C | A]``
is the cheapest clustered tree over the clusters in ``C`` rooted at ``v``
whose cluster tree has at most ``i`` levels of splitting.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .. import kernels
from ..approx import cluspt_approx_mst
from ..errors import BudgetExceededError
from ..graph import INFINITY, ClusteredInstance, require_tree_feasible, tree_from_edges
from .common import ExactResult, resolve_problem
from .convolution import subset_convolution_fast
from .tables import ClusterTables, cluster_tables

MAX_UNIVERSE = 24


@dataclass
class DpTable:
    """All levels of one round; ``values[i - 1][v, H]`` holds ``OPT_{v,i}[H]``."""

    k: int
    b: int
    n: int
    M: int
    values: list

    @property
    def u(self) -> int:
        return self.k + self.b

    @property
    def full_a(self) -> int:
        return ((1 << self.b) - 1) << self.k

    def mu(self, H: int) -> int | None:
        """Vertex encoded by the label bits of ``H``, or None past ``n - 1``."""
        a = H >> self.k
        return a if a < self.n else None

    def value(self, v: int, i: int, H: int) -> int:
        return int(self.values[i - 1][v, H])


def _label_bits(n: int) -> int:
    return max(1, (n - 1).bit_length())


def _eta(inst: ClusteredInstance) -> np.ndarray:
    size = np.array([len(c) for c in inst.clusters], dtype=np.int64)
    eta = np.zeros(1 << inst.k, dtype=np.int64)
    for bit in range(inst.k):
        eta[1 << bit: 1 << (bit + 1)] = eta[: 1 << bit] + size[bit]
    return eta


def _level_one(inst: ClusteredInstance, tables: ClusterTables, b: int, M: int) -> np.ndarray:
    k, n = inst.k, inst.n
    full_a = ((1 << b) - 1) << k
    out = np.full((n, 1 << (k + b)), M, dtype=np.int64)
    for v in range(n):
        out[v, (1 << inst.cluster_of[v]) | full_a] = min(tables.bfs_cost[v], M)
    return out


def _split_inputs(inst, tables, prev: np.ndarray, b: int, M: int, eta: np.ndarray):
    """Build ``f`` and ``g`` rows for every vertex at the next level.

    ``f[v, C | a]`` prices hanging the clusters ``C`` under ``v`` through the
    vertex ``a``; invalid combinations are forced to ``M``. ``f[v, 0] = 0``
    lets a level inherit the previous one unchanged.
    """
    k, n = inst.k, inst.n
    nc = 1 << k
    na = 1 << b
    full_a = (na - 1) << k
    prev_a = prev[:, full_a | np.arange(nc)]
    g = np.tile(prev_a, (1, na))

    masks = np.arange(nc)
    owner = np.asarray(inst.cluster_of)
    ell = np.minimum(np.asarray(tables.ell, dtype=np.int64), M)
    f = np.full((n, nc * na), M, dtype=np.int64)
    for a in range(n):
        has_a = (masks >> owner[a]) & 1 == 1
        block = np.minimum(np.minimum(ell[:, a, None] * eta[None, :], M) + prev_a[a][None, :], 2 * M)
        valid = has_a[None, :] & (((masks[None, :] >> owner[:, None]) & 1) == 0)
        f[:, a * nc:(a + 1) * nc] = np.where(valid, block, M)
    f[:, 0] = 0
    return f, g


def _convolve(f, g, u, M, backend, threads, fast):
    if fast:
        return subset_convolution_fast(f, g, u, M)
    mod = kernels.get_backend(backend)
    if threads <= 1 or f.shape[0] < 2:
        return np.asarray(mod.subset_convolve_batch(f, g, u, M))
    parts = np.array_split(np.arange(f.shape[0]), min(threads, f.shape[0]))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        chunks = list(pool.map(
            lambda idx: np.asarray(mod.subset_convolve_batch(
                np.ascontiguousarray(f[idx]), np.ascontiguousarray(g[idx]), u, M)),
            parts,
        ))
    return np.concatenate(chunks, axis=0)


def fpt1_tables(
    inst: ClusteredInstance,
    M: int,
    tables: ClusterTables | None = None,
    *,
    backend: str | None = None,
    threads: int = 1,
    fast_convolution: bool = False,
) -> DpTable:
    """Fill every level for one cap ``M``. ``inst`` must already be feasible."""
    tables = tables or cluster_tables(inst)
    k, n = inst.k, inst.n
    b = _label_bits(n)
    u = k + b
    if u > MAX_UNIVERSE:
        raise BudgetExceededError(f"universe of {u} elements exceeds the limit {MAX_UNIVERSE}")
    eta = _eta(inst)
    levels = [_level_one(inst, tables, b, M)]
    for _ in range(2, k + 1):
        f, g = _split_inputs(inst, tables, levels[-1], b, M, eta)
        levels.append(_convolve(f, g, u, M, backend, threads, fast_convolution))
    return DpTable(k, b, n, M, levels)


def _reconstruct(inst: ClusteredInstance, tables: ClusterTables, dp: DpTable, eta: np.ndarray):
    """Re-derive one optimal split per table entry, top-down.

    At each entry the splits are scanned in increasing subset order and the
    first that reproduces the stored value is taken.
    """
    k, M = dp.k, dp.M
    cmask = (1 << k) - 1
    owner = inst.cluster_of
    edges: list[tuple[int, int]] = []
    stack = [(inst.source, k, cmask)]
    while stack:
        v, i, C = stack.pop()
        target = dp.value(v, i, C | dp.full_a)
        if i == 1:
            parent = tables.intra_parent[v]
            edges.extend((parent[x], x) for x in inst.clusters[owner[v]] if x != v)
            continue
        Y = C | dp.full_a
        prev = dp.values[i - 2]
        Z = 0
        while True:
            rest = (Y ^ Z) & cmask
            g = int(prev[v, rest | dp.full_a])
            if Z == 0:
                fz = 0
            else:
                zc, a = Z & cmask, dp.mu(Z)
                if a is None or not (zc >> owner[a]) & 1 or (zc >> owner[v]) & 1:
                    fz = M
                else:
                    fz = min(min(tables.ell[v][a], M) * int(eta[zc]), M) + int(prev[a, zc | dp.full_a])
            if min(fz + g, M) == target:
                break
            Z = (Z - Y) & Y
            if Z == 0:
                raise AssertionError("no split reproduces the table value")
        if Z == 0:
            stack.append((v, i - 1, C))
            continue
        zc, a = Z & cmask, dp.mu(Z)
        edges.append((tables.ell_via[v][a], a))
        stack.append((a, i - 1, zc))
        stack.append((v, i - 1, (Y ^ Z) & cmask))
    return edges


def fpt1_solve(
    inst: ClusteredInstance,
    problem: str | None = None,
    *,
    fast_convolution: bool = False,
    backend: str | None = None,
    threads: int = 1,
    trace: TextIO | None = None,
) -> ExactResult:
    """Exact optimum by doubling the cap ``M`` until the root entry drops below it."""
    problem, work = resolve_problem(inst, problem)
    require_tree_feasible(work)
    tables = cluster_tables(work)
    if problem == "clubfs":
        upper = work.n * work.n
    else:
        upper = cluspt_approx_mst(work).tree.cost
    full = (1 << work.k) - 1
    M, rounds = 1, 0
    while True:
        rounds += 1
        dp = fpt1_tables(work, M, tables, backend=backend, threads=threads,
                         fast_convolution=fast_convolution)
        opt = dp.value(work.source, work.k, full | dp.full_a)
        if opt < M:
            break
        if M > upper:
            raise AssertionError(f"cap {M} exceeds the upper bound {upper} without a solution")
        M *= 2
    edges = _reconstruct(work, tables, dp, _eta(work))
    tree = tree_from_edges(inst, edges)
    if tree.cost != opt or not tree.feasible:
        raise AssertionError(f"reconstructed tree costs {tree.cost}, table says {opt}")
    if trace is not None:
        dump_trace(dp, trace)
    stats = {"rounds": rounds, "M": M, "universe": dp.u, "problem": problem,
             "backend": "fast" if fast_convolution else kernels.backend_name(kernels.get_backend(backend))}
    return ExactResult(tree, opt, "fpt1", stats)


def dump_trace(dp: DpTable, out: TextIO) -> None:
    """Write ``v i H value`` lines for every entry below the cap."""
    out.write(f"# k={dp.k} b={dp.b} M={dp.M}\n")
    for i, level in enumerate(dp.values, start=1):
        vs, hs = np.nonzero(level < dp.M)
        for v, H in zip(vs.tolist(), hs.tolist()):
            out.write(f"{v} {i} {H:#0{dp.u + 2}b} {int(level[v, H])}\n")
