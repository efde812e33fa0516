"""Clustered-graph data model and the classical primitives built on it.

Vertices are the integers ``0..n-1``. Edge weights are nonnegative integers;
an unweighted instance stores weight 1 on every edge. Distances and costs
saturate at :data:`INFINITY`.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DisconnectedGraphError, InfeasibleInstanceError, InvalidInstanceError

INFINITY = 1 << 60


def sat_add(a: int, b: int) -> int:
    s = a + b
    return INFINITY if s >= INFINITY else s


def sat_mul(a: int, b: int) -> int:
    if a >= INFINITY or b >= INFINITY:
        return INFINITY if a and b else 0
    p = a * b
    return INFINITY if p >= INFINITY else p


@dataclass(frozen=True)
class ClusteredInstance:
    """A graph ``G=(V,E,w)`` with a vertex partition into clusters and a source."""

    n: int
    edges: tuple[tuple[int, int, int], ...]
    clusters: tuple[tuple[int, ...], ...]
    source: int
    weighted: bool = False

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        clusters: Iterable[Iterable[int]],
        source: int = 0,
        weighted: bool | None = None,
    ) -> "ClusteredInstance":
        """Normalize raw parts into canonical form (no validation).

        Edges become ``(min, max, w)`` sorted lexicographically, so an edge id is
        its position in that order. Clusters are sorted internally and ordered
        by smallest member. Missing weights default to 1.
        """
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            w = int(e[2]) if len(e) > 2 else 1
            norm.append((min(u, v), max(u, v), w))
        norm.sort()
        cl = [tuple(sorted(int(x) for x in c)) for c in clusters]
        cl.sort(key=lambda c: (c[0] if c else -1, c))
        if weighted is None:
            weighted = any(w != 1 for _, _, w in norm)
        return cls(int(n), tuple(norm), tuple(cl), int(source), bool(weighted))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def k(self) -> int:
        return len(self.clusters)

    @cached_property
    def cluster_of(self) -> tuple[int, ...]:
        """Cluster index of each vertex (first one if clusters overlap, -1 if none)."""
        owner = [-1] * self.n
        for i, c in enumerate(self.clusters):
            for v in c:
                if 0 <= v < self.n and owner[v] < 0:
                    owner[v] = i
        return tuple(owner)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int, int], ...], ...]:
        """Per vertex, ``(neighbor, weight, edge id)`` sorted by neighbor then edge id."""
        adj: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n)]
        for eid, (u, v, w) in enumerate(self.edges):
            if 0 <= u < self.n and 0 <= v < self.n and u != v:
                adj[u].append((v, w, eid))
                adj[v].append((u, w, eid))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        idx: dict[tuple[int, int], int] = {}
        for eid, (u, v, _) in enumerate(self.edges):
            idx.setdefault((u, v), eid)
            idx.setdefault((v, u), eid)
        return idx

    def weight(self, u: int, v: int) -> int:
        return self.edges[self.edge_index[(u, v)]][2]

    @property
    def source_cluster(self) -> int:
        return self.cluster_of[self.source]

    def is_boundary(self, v: int) -> bool:
        c = self.cluster_of[v]
        return any(self.cluster_of[x] != c for x, _, _ in self.adjacency[v])

    def view(self) -> "GraphView":
        return GraphView(self.n, self.adjacency, self.weighted)

    def induced(self, vertices: Iterable[int]) -> "GraphView":
        """View of ``G[S]``: same vertex ids, adjacency restricted to ``S``."""
        keep = frozenset(vertices)
        adj = tuple(
            tuple(a for a in self.adjacency[v] if a[0] in keep) if v in keep else ()
            for v in range(self.n)
        )
        return GraphView(self.n, adj, self.weighted, keep)

    def with_weights(self, weights: Sequence[int]) -> "ClusteredInstance":
        edges = tuple((u, v, int(w)) for (u, v, _), w in zip(self.edges, weights))
        return ClusteredInstance(self.n, edges, self.clusters, self.source, True)


@dataclass(frozen=True)
class GraphView:
    """Adjacency-only view used by the shortest-path primitives."""

    n: int
    adjacency: tuple
    weighted: bool
    vertices: frozenset | None = None

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and (self.vertices is None or v in self.vertices)


@dataclass(frozen=True)
class SpanningTreeSolution:
    """Rooted tree with per-vertex distances and broadcast cost.

    ``parent[source] == source``; vertices the tree does not reach carry
    ``parent None`` and distance :data:`INFINITY`.
    """

    parent: tuple
    dist: tuple
    cost: int
    feasible: bool

    def edges(self) -> list[tuple[int, int]]:
        return sorted(
            (min(p, v), max(p, v))
            for v, p in enumerate(self.parent)
            if p is not None and p != v
        )

    def to_json(self) -> dict:
        return {
            "parent": [-1 if p is None else p for p in self.parent],
            "dist": [-1 if d >= INFINITY else d for d in self.dist],
            "cost": self.cost,
            "feasible": self.feasible,
        }


@dataclass(frozen=True)
class QuotientGraph:
    """Cluster-contracted multigraph; each edge remembers its original edge id.

    ``edges`` holds ``(i, j, w, eid)`` with ``i < j`` cluster indices.
    """

    k: int
    edges: tuple[tuple[int, int, int, int], ...]
    adjacency: tuple = field(repr=False)

    def provenance(self) -> list[int]:
        return [eid for *_, eid in self.edges]


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def structural(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.kind != "disconnected cluster")

    @property
    def disconnected(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.kind == "disconnected cluster")

    def messages(self) -> list[str]:
        return [v.message for v in self.violations]


def _fmt_set(vs) -> str:
    return "{" + ",".join(str(v) for v in vs) + "}"


def validate_instance(inst: ClusteredInstance) -> ValidationReport:
    """Report partition violations, malformed edges and disconnected clusters.

    Disconnected clusters are a separate kind: they make the tree problems
    infeasible but are legal for clustered paths.
    """
    out: list[Violation] = []
    n = inst.n
    if n < 1:
        out.append(Violation("empty graph", "instance has no vertices"))
    if not 0 <= inst.source < max(n, 0):
        out.append(Violation("invalid source", f"source {inst.source} is not a vertex"))

    seen: dict[int, int] = {}
    for i, c in enumerate(inst.clusters):
        if not c:
            out.append(Violation("empty cluster", f"cluster #{i} is empty"))
        for v in c:
            if not 0 <= v < n:
                out.append(Violation("vertex out of range", f"cluster #{i} contains vertex {v} outside 0..{n - 1}"))
            elif v in seen:
                out.append(Violation("overlapping clusters", f"overlapping clusters: vertex {v} in clusters #{seen[v]} and #{i}"))
            else:
                seen[v] = i
    missing = [v for v in range(n) if v not in seen]
    if missing:
        out.append(Violation("uncovered vertex", f"vertices {_fmt_set(missing)} belong to no cluster"))

    pairs: set[tuple[int, int]] = set()
    for eid, (u, v, w) in enumerate(inst.edges):
        if not (0 <= u < n and 0 <= v < n):
            out.append(Violation("vertex out of range", f"edge #{eid} ({u},{v}) has an endpoint outside 0..{n - 1}"))
            continue
        if u == v:
            out.append(Violation("self-loop", f"edge #{eid} is a self-loop at {u}"))
        key = (min(u, v), max(u, v))
        if key in pairs:
            out.append(Violation("duplicate edge", f"duplicate edge ({key[0]},{key[1]})"))
        pairs.add(key)
        if w < 0:
            out.append(Violation("negative weight", f"edge #{eid} ({u},{v}) has negative weight {w}"))
        elif not inst.weighted and w != 1:
            out.append(Violation("non-unit weight", f"edge #{eid} ({u},{v}) has weight {w} in an unweighted instance"))

    if not out:
        for c in inst.clusters:
            if len(c) > 1 and not _connected_within(inst, c):
                out.append(Violation("disconnected cluster", f"cluster {_fmt_set(c)} induces disconnected subgraph"))
    return ValidationReport(tuple(out))


def _connected_within(inst: ClusteredInstance, vertices: Sequence[int]) -> bool:
    keep = set(vertices)
    start = vertices[0]
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y, _, _ in inst.adjacency[x]:
            if y in keep and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(keep)


def require_valid(inst: ClusteredInstance) -> None:
    report = validate_instance(inst)
    if report.structural:
        raise InvalidInstanceError(report.structural[0].message, report.structural)


def require_tree_feasible(inst: ClusteredInstance) -> None:
    """Raise unless some clustered spanning tree exists."""
    report = validate_instance(inst)
    if report.structural:
        raise InvalidInstanceError(report.structural[0].message, report.structural)
    if report.disconnected:
        raise InfeasibleInstanceError("infeasible instance: " + report.disconnected[0].message)
    q = contract_clusters(inst)
    if not _quotient_connected(q):
        raise InfeasibleInstanceError("infeasible instance: contracted graph is disconnected")


def _quotient_connected(q: QuotientGraph) -> bool:
    if q.k == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y, _, _ in q.adjacency[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == q.k


def shortest_path_tree(graph: GraphView | ClusteredInstance, root: int) -> SpanningTreeSolution:
    """BFS tree (unweighted) or Dijkstra tree (weighted) from ``root``.

    Ties go to the smallest vertex id: BFS scans neighbors in id order and
    keeps the first discoverer; Dijkstra pops ``(dist, vertex)`` pairs and only
    replaces a parent on strict improvement. ``feasible`` is not evaluated here
    (no cluster information) and is always False.
    """
    if isinstance(graph, ClusteredInstance):
        graph = graph.view()
    if root not in graph:
        raise ValueError(f"root {root} not in graph")
    n = graph.n
    dist = [INFINITY] * n
    parent: list = [None] * n
    dist[root] = 0
    parent[root] = root
    adj = graph.adjacency
    if not graph.weighted:
        queue = deque([root])
        while queue:
            x = queue.popleft()
            dx = dist[x] + 1
            for y, _, _ in adj[x]:
                if dist[y] == INFINITY:
                    dist[y] = dx
                    parent[y] = x
                    queue.append(y)
    else:
        done = [False] * n
        heap = [(0, root)]
        while heap:
            d, x = heapq.heappop(heap)
            if done[x]:
                continue
            done[x] = True
            for y, w, _ in adj[x]:
                nd = sat_add(d, w)
                if not done[y] and nd < dist[y]:
                    dist[y] = nd
                    parent[y] = x
                    heapq.heappush(heap, (nd, y))
    cost = 0
    for d in dist:
        if d < INFINITY:
            cost = sat_add(cost, d)
    return SpanningTreeSolution(tuple(parent), tuple(dist), cost, False)


def minimum_spanning_tree(vertices, edges: Iterable[Sequence[int]]):
    """Kruskal MST over ``vertices`` (an int ``n`` or an iterable of ids).

    ``edges`` are ``(u, v, w)`` or ``(u, v, w, tag)``; tags (provenance) are
    carried through. Parallel edges collapse to the lightest one. Ties break
    on ``(w, min endpoint, max endpoint, position)``. Returns
    ``(chosen edges, total weight)``.
    """
    verts = list(range(vertices)) if isinstance(vertices, int) else sorted(set(vertices))
    best: dict[tuple[int, int], tuple] = {}
    for pos, e in enumerate(edges):
        u, v, w = e[0], e[1], e[2]
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        cand = (w, key[0], key[1], pos, tuple(e))
        if key not in best or cand < best[key]:
            best[key] = cand
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    total = 0
    for w, _, _, _, e in sorted(best.values()):
        ru, rv = find(e[0]), find(e[1])
        if ru != rv:
            parent[ru] = rv
            chosen.append(e)
            total += w
    if len(chosen) != max(len(verts) - 1, 0):
        raise DisconnectedGraphError("graph disconnected")
    return chosen, total


def cluster_diameter(inst: ClusteredInstance, i: int) -> int:
    c = inst.clusters[i]
    view = inst.induced(c)
    worst = 0
    for v in c:
        spt = shortest_path_tree(view, v)
        for u in c:
            if spt.dist[u] >= INFINITY:
                raise InfeasibleInstanceError(f"cluster {_fmt_set(c)} induces disconnected subgraph")
            worst = max(worst, spt.dist[u])
    return worst


def gamma(inst: ClusteredInstance) -> int:
    """Largest diameter over the induced cluster subgraphs (hop or weight per instance)."""
    return max((cluster_diameter(inst, i) for i in range(inst.k)), default=0)


def contract_clusters(inst: ClusteredInstance) -> QuotientGraph:
    """Identify each cluster into one vertex; one multi-edge per inter-cluster edge."""
    owner = inst.cluster_of
    qedges = []
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(inst.k)]
    for eid, (u, v, w) in enumerate(inst.edges):
        a, b = owner[u], owner[v]
        if a == b:
            continue
        i, j = min(a, b), max(a, b)
        pos = len(qedges)
        qedges.append((i, j, w, eid))
        adj[i].append((j, w, pos))
        adj[j].append((i, w, pos))
    return QuotientGraph(inst.k, tuple(qedges), tuple(tuple(sorted(a)) for a in adj))


def _tree_adjacency(inst: ClusteredInstance, edges: Iterable[tuple[int, int]]):
    adj: list[list[tuple[int, int]]] = [[] for _ in range(inst.n)]
    count = 0
    for u, v in edges:
        if (u, v) not in inst.edge_index:
            raise ValueError(f"({u},{v}) is not an edge of the graph")
        w = inst.weight(u, v)
        adj[u].append((v, w))
        adj[v].append((u, w))
        count += 1
    return adj, count


def _as_edges(tree) -> list[tuple[int, int]]:
    if isinstance(tree, SpanningTreeSolution):
        return tree.edges()
    return [(int(u), int(v)) for u, v, *_ in tree]


def tree_from_edges(inst: ClusteredInstance, edges: Iterable[Sequence[int]]) -> SpanningTreeSolution:
    """Root an edge set at the source; raises ValueError unless it spans ``V``."""
    edges = _as_edges(edges)
    adj, count = _tree_adjacency(inst, edges)
    if count != inst.n - 1:
        raise ValueError(f"not a spanning tree: {count} edges for {inst.n} vertices")
    parent: list = [None] * inst.n
    dist = [INFINITY] * inst.n
    s = inst.source
    parent[s] = s
    dist[s] = 0
    stack = [s]
    while stack:
        x = stack.pop()
        for y, w in adj[x]:
            if parent[y] is None:
                parent[y] = x
                dist[y] = sat_add(dist[x], w)
                stack.append(y)
    if any(p is None for p in parent):
        raise ValueError("not a spanning tree: edge set is disconnected")
    cost = 0
    for d in dist:
        cost = sat_add(cost, d)
    sol = SpanningTreeSolution(tuple(parent), tuple(dist), cost, False)
    return SpanningTreeSolution(sol.parent, sol.dist, cost, is_feasible_tree(inst, sol))


def broadcast_cost(inst: ClusteredInstance, tree) -> int:
    """Sum of tree distances from the source, recomputed from the tree edges."""
    return tree_from_edges(inst, _as_edges(tree)).cost


def is_feasible_tree(inst: ClusteredInstance, tree) -> bool:
    """True iff every cluster induces a connected subtree.

    In a forest an induced subgraph is connected iff it has ``|V_i| - 1`` edges.
    """
    inside = [0] * inst.k
    owner = inst.cluster_of
    for u, v in _as_edges(tree):
        if owner[u] == owner[v]:
            inside[owner[u]] += 1
    return all(inside[i] == len(c) - 1 for i, c in enumerate(inst.clusters))
