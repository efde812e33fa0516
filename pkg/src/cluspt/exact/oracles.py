"""Brute-force oracles, written independently of the solvers they check.

Nothing here reuses the shortest-path, tree or feasibility helpers of the
graph core.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

from ..errors import InfeasibleInstanceError, InstanceTooLargeError
from ..graph import INFINITY, ClusteredInstance

DEFAULT_BUDGET = 5_000_000
MAX_PATH_VERTICES = 12


def _tree_cost(n: int, source: int, chosen) -> int | None:
    """Broadcast cost of an ``n - 1`` edge subset, or None if it is not a tree."""
    root = list(range(n))

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    adj = [[] for _ in range(n)]
    for u, v, w in chosen:
        a, b = find(u), find(v)
        if a == b:
            return None
        root[a] = b
        adj[u].append((v, w))
        adj[v].append((u, w))
    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y, w in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + w
                queue.append(y)
    return sum(dist)


def _clusters_connected(owner, sizes, chosen) -> bool:
    inside = [0] * len(sizes)
    for u, v, _ in chosen:
        if owner[u] == owner[v]:
            inside[owner[u]] += 1
    return all(inside[i] == sizes[i] - 1 for i in range(len(sizes)))


def oracle_spanning_trees(inst: ClusteredInstance, budget: int = DEFAULT_BUDGET):
    """Minimum broadcast cost over all clustered spanning trees, by enumeration.

    Returns ``(opt, witness_edges)``; the witness is the first optimal subset in
    ``itertools.combinations`` order. Raises InfeasibleInstanceError when no
    subset qualifies and InstanceTooLargeError above ``budget`` subsets.
    """
    n, edges = inst.n, list(inst.edges)
    if n == 1:
        return 0, []
    subsets = math.comb(len(edges), n - 1)
    if subsets > budget:
        raise InstanceTooLargeError(f"instance too large for oracle: {subsets} edge subsets > budget {budget}")
    owner = [0] * n
    for i, c in enumerate(inst.clusters):
        for v in c:
            owner[v] = i
    sizes = [len(c) for c in inst.clusters]
    best, witness = INFINITY, None
    for chosen in itertools.combinations(edges, n - 1):
        if not _clusters_connected(owner, sizes, chosen):
            continue
        cost = _tree_cost(n, inst.source, chosen)
        if cost is not None and cost < best:
            best, witness = cost, [(u, v) for u, v, _ in chosen]
    if witness is None:
        raise InfeasibleInstanceError("infeasible instance: no clustered spanning tree")
    return best, witness


def consecutive_clusters(inst: ClusteredInstance, path) -> bool:
    """True iff, for each cluster, its vertices on ``path`` form one contiguous run."""
    owner = {v: i for i, c in enumerate(inst.clusters) for v in c}
    closed = set()
    prev = None
    for v in path:
        c = owner[v]
        if c != prev:
            if c in closed:
                return False
            if prev is not None:
                closed.add(prev)
            prev = c
    return True


def clusp_oracle_paths(inst: ClusteredInstance, s: int, t: int):
    """Shortest clustered s-t path by enumerating all simple paths.

    Returns ``(length, path)``; ``(INFINITY, None)`` when no path qualifies.
    """
    if inst.n > MAX_PATH_VERTICES:
        raise InstanceTooLargeError(f"path oracle limited to n <= {MAX_PATH_VERTICES}, got {inst.n}")
    adj = [[] for _ in range(inst.n)]
    for u, v, w in inst.edges:
        adj[u].append((v, w))
        adj[v].append((u, w))
    best, best_path = INFINITY, None
    path, on_path = [s], {s}

    def dfs(x, length):
        nonlocal best, best_path
        if x == t:
            if length < best and consecutive_clusters(inst, path):
                best, best_path = length, list(path)
            return
        for y, w in sorted(adj[x]):
            if y not in on_path:
                path.append(y)
                on_path.add(y)
                dfs(y, length + w)
                on_path.discard(y)
                path.pop()

    dfs(s, 0)
    return best, best_path
