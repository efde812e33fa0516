"""Polynomial-time approximations for the clustered tree problems and the
exactly solvable clustered MST."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .graph import (
    ClusteredInstance,
    SpanningTreeSolution,
    contract_clusters,
    gamma as compute_gamma,
    minimum_spanning_tree,
    require_tree_feasible,
    shortest_path_tree,
    tree_from_edges,
)


@dataclass(frozen=True)
class RatioCertificate:
    """The three ratio terms ``4nk/g``, ``4n^2/g^2``, ``2g`` and their minimum.

    With ``gamma == 0`` the terms are undefined and stored as None.
    """

    gamma: int
    terms: tuple[Fraction | None, Fraction | None, Fraction | None]
    rho: Fraction | None
    lower_bound: Fraction
    note: str = ""

    @property
    def applicable(self) -> bool:
        return self.rho is not None

    def to_json(self) -> dict:
        def fmt(x):
            return None if x is None else str(x)

        return {
            "gamma": self.gamma,
            "terms": {"4nk/gamma": fmt(self.terms[0]), "4n^2/gamma^2": fmt(self.terms[1]), "2gamma": fmt(self.terms[2])},
            "rho": fmt(self.rho),
            "opt_lower_bound": fmt(self.lower_bound),
            "note": self.note,
        }


@dataclass(frozen=True)
class ApproxResult:
    tree: SpanningTreeSolution
    gamma: int
    ratio_certificate: RatioCertificate | None
    tree_weight: int = 0


def diameter_lower_bound(g: int) -> Fraction:
    """Least broadcast cost any feasible tree pays inside a diameter-``g`` cluster."""
    if g % 2 == 0:
        return Fraction(g * g, 4) + Fraction(g, 2)
    return Fraction(g * g, 4) + Fraction(g, 2) + Fraction(1, 4)


def ratio_bound(inst: ClusteredInstance, g: int | None = None) -> RatioCertificate:
    """Exact-rational ratio terms and the diameter lower bound on OPT."""
    if g is None:
        g = compute_gamma(inst)
    n, k = inst.n, inst.k
    if g == 0:
        return RatioCertificate(0, (None, None, None), None, Fraction(0),
                                "2gamma term = 0; bound vacuous")
    terms = (Fraction(4 * n * k, g), Fraction(4 * n * n, g * g), Fraction(2 * g))
    return RatioCertificate(g, terms, min(terms), diameter_lower_bound(g))


def _bfs_quotient_tree(inst: ClusteredInstance):
    """BFS over the contracted graph from the source's cluster.

    Returns ``(order, parent_cluster)`` with ties broken by cluster index.
    """
    q = contract_clusters(inst)
    root = inst.source_cluster
    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for j in sorted({j for j, _, _ in q.adjacency[i]}):
            if j not in parent:
                parent[j] = i
                order.append(j)
                queue.append(j)
    return q, order, parent


def clubfs_approx(inst: ClusteredInstance) -> ApproxResult:
    """Cluster-contraction BFS approximation for unweighted instances.

    Contract clusters, take a BFS tree of the quotient from the source's
    cluster, then span every cluster by a BFS tree rooted where the quotient
    tree enters it. The entering edge is the inter-cluster edge with the
    lexicographically smallest ``(min endpoint, max endpoint)``.
    """
    if inst.weighted:
        raise ValueError("approx requires unweighted")
    require_tree_feasible(inst)
    q, order, parent = _bfs_quotient_tree(inst)
    owner = inst.cluster_of

    crossing: dict[tuple[int, int], tuple[int, int]] = {}
    for i, j, _, eid in q.edges:
        u, v, _ = inst.edges[eid]
        for a, b in ((i, j), (j, i)):
            if (a, b) not in crossing or (u, v) < crossing[(a, b)]:
                crossing[(a, b)] = (u, v)

    edges: list[tuple[int, int]] = []
    for j in order:
        pi = parent[j]
        if pi is None:
            root = inst.source
        else:
            u, v = crossing[(pi, j)]
            p, root = (u, v) if owner[u] == pi else (v, u)
            edges.append((p, root))
        spt = shortest_path_tree(inst.induced(inst.clusters[j]), root)
        edges.extend((spt.parent[x], x) for x in inst.clusters[j] if x != root)
    tree = tree_from_edges(inst, edges)
    g = compute_gamma(inst)
    cert = ratio_bound(inst, g)
    return ApproxResult(tree, g, cert, sum(inst.weight(a, b) for a, b in tree.edges()))


def clustered_mst(inst: ClusteredInstance):
    """Minimum-weight spanning tree among the cluster-feasible ones.

    Per-cluster MSTs plus an MST of the contracted multigraph (lightest edge
    per cluster pair). Returns ``(edges, weight)`` with edges as ``(u, v)``.
    """
    require_tree_feasible(inst)
    owner = inst.cluster_of
    edges: list[tuple[int, int]] = []
    total = 0
    for c in inst.clusters:
        inside = [(u, v, w) for u, v, w in inst.edges if owner[u] == owner[v] == owner[c[0]]]
        chosen, weight = minimum_spanning_tree(c, inside)
        edges.extend((u, v) for u, v, _ in chosen)
        total += weight
    q = contract_clusters(inst)
    chosen, weight = minimum_spanning_tree(q.k, [(i, j, w, eid) for i, j, w, eid in q.edges])
    edges.extend(inst.edges[eid][:2] for *_, eid in chosen)
    total += weight
    return sorted(edges), total


def cluspt_approx_mst(inst: ClusteredInstance) -> ApproxResult:
    """n-approximation for the weighted problem: the clustered MST, rooted at s.

    Its weight is at most that of any feasible tree, so its cost is at most
    ``n * OPT``. The diameter-based certificate only applies to unweighted
    instances and is omitted.
    """
    edges, weight = clustered_mst(inst)
    tree = tree_from_edges(inst, edges)
    return ApproxResult(tree, compute_gamma(inst), None, weight)
