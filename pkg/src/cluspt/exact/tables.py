"""Per-cluster distance tables shared by the two FPT solvers."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InfeasibleInstanceError
from ..graph import INFINITY, ClusteredInstance, sat_add, shortest_path_tree


@dataclass(frozen=True)
class ClusterTables:
    """Distances inside the induced cluster subgraphs.

    ``intra_dist[v][u]`` is the distance in ``G[R]`` where ``R`` is ``v``'s
    cluster (INFINITY for ``u`` outside ``R``), ``intra_parent[v]`` the
    matching shortest-path tree rooted at ``v``, ``bfs_cost[v]`` its cost.
    ``ell[v][y]`` is the length of the shortest path that stays in ``R`` and
    then takes one edge to ``y``; ``ell_via[v][y]`` is the last vertex in ``R``
    on that path (-1 when ``ell`` is INFINITY).
    """

    bfs_cost: tuple[int, ...]
    intra_dist: tuple[tuple[int, ...], ...]
    intra_parent: tuple[tuple[int, ...], ...]
    ell: tuple[tuple[int, ...], ...]
    ell_via: tuple[tuple[int, ...], ...]


def cluster_tables(inst: ClusteredInstance) -> ClusterTables:
    n = inst.n
    owner = inst.cluster_of
    dist_rows, parent_rows, cost = [], [], []
    views = [inst.induced(c) for c in inst.clusters]
    for v in range(n):
        spt = shortest_path_tree(views[owner[v]], v)
        row = spt.dist
        for u in inst.clusters[owner[v]]:
            if row[u] >= INFINITY:
                raise InfeasibleInstanceError(
                    f"infeasible instance: cluster {set(inst.clusters[owner[v]])} induces disconnected subgraph"
                )
        dist_rows.append(row)
        parent_rows.append(tuple(-1 if p is None else p for p in spt.parent))
        cost.append(spt.cost)

    ell = [[INFINITY] * n for _ in range(n)]
    via = [[-1] * n for _ in range(n)]
    for v in range(n):
        r = owner[v]
        best = ell[v]
        for x in inst.clusters[r]:
            dx = dist_rows[v][x]
            for y, w, _ in inst.adjacency[x]:
                if owner[y] == r:
                    continue
                cand = sat_add(dx, w)
                if cand < best[y] or (cand == best[y] and x < via[v][y]):
                    best[y] = cand
                    via[v][y] = x
    return ClusterTables(
        tuple(cost),
        tuple(dist_rows),
        tuple(parent_rows),
        tuple(tuple(r) for r in ell),
        tuple(tuple(r) for r in via),
    )
