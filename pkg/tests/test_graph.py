import itertools

import networkx as nx
import pytest
from hypothesis import given

from cluspt.errors import DisconnectedGraphError, InfeasibleInstanceError, InvalidInstanceError
from cluspt.graph import (
    INFINITY,
    ClusteredInstance,
    broadcast_cost,
    contract_clusters,
    gamma,
    is_feasible_tree,
    minimum_spanning_tree,
    require_tree_feasible,
    sat_add,
    sat_mul,
    shortest_path_tree,
    tree_from_edges,
    validate_instance,
)

from .helpers import feasible_instances, triangle

P6_OPT_TREE = [(0, 1), (0, 2), (2, 3), (3, 4), (3, 5)]


def to_nx(inst):
    g = nx.Graph()
    g.add_nodes_from(range(inst.n))
    g.add_weighted_edges_from(inst.edges)
    return g


def test_p6_validates(p6):
    assert validate_instance(p6).ok


def test_overlapping_clusters():
    inst = ClusteredInstance.build(3, [(0, 1), (1, 2)], [[0, 1], [1, 2]], 0)
    report = validate_instance(inst)
    assert not report.ok
    assert any(v.kind == "overlapping clusters" for v in report.violations)


def test_disconnected_cluster_reported_separately():
    inst = ClusteredInstance.build(3, [(0, 1), (1, 2)], [[0, 2], [1]], 0)
    report = validate_instance(inst)
    assert report.messages() == ["cluster {0,2} induces disconnected subgraph"]
    assert report.structural == ()
    with pytest.raises(InfeasibleInstanceError, match="infeasible instance"):
        require_tree_feasible(inst)


@pytest.mark.parametrize(
    "edges, clusters, weighted, kind",
    [
        ([(0, 0)], [[0], [1]], False, "self-loop"),
        ([(0, 1), (1, 0)], [[0], [1]], False, "duplicate edge"),
        ([(0, 1, -2)], [[0], [1]], True, "negative weight"),
        ([(0, 1, 3)], [[0], [1]], False, "non-unit weight"),
        ([(0, 1)], [[0]], False, "uncovered vertex"),
        ([(0, 1)], [[0], [1], []], False, "empty cluster"),
        ([(0, 5)], [[0], [1]], False, "vertex out of range"),
    ],
)
def test_structural_violations(edges, clusters, weighted, kind):
    inst = ClusteredInstance.build(2, edges, clusters, 0, weighted)
    kinds = {v.kind for v in validate_instance(inst).violations}
    assert kind in kinds
    with pytest.raises(InvalidInstanceError):
        require_tree_feasible(inst)


def test_invalid_source():
    inst = ClusteredInstance.build(2, [(0, 1)], [[0], [1]], 7)
    assert "invalid source" in {v.kind for v in validate_instance(inst).violations}


def test_spt_examples(p6):
    assert shortest_path_tree(triangle(), 0).dist == (0, 1, 1)
    path = ClusteredInstance.build(3, [(0, 1, 2), (1, 2, 3)], [[0], [1], [2]], 0, True)
    assert shortest_path_tree(path, 0).dist == (0, 2, 5)
    assert shortest_path_tree(p6, 0).dist == (0, 1, 1, 2, 3, 3)


def test_spt_flags_unreachable():
    inst = ClusteredInstance.build(3, [(0, 1)], [[0], [1], [2]], 0)
    spt = shortest_path_tree(inst, 0)
    assert spt.dist[2] == INFINITY and spt.parent[2] is None


def test_mst_examples(p6):
    chosen, total = minimum_spanning_tree(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)])
    assert total == 3 and len(chosen) == 2
    tree = [(0, 1, 4), (1, 2, 7), (1, 3, 1)]
    assert sorted(minimum_spanning_tree(4, tree)[0]) == sorted(tree)
    assert minimum_spanning_tree(6, p6.edges)[1] == 5


def test_mst_keeps_provenance_and_lightest_parallel_edge():
    chosen, total = minimum_spanning_tree(2, [(0, 1, 5, "a"), (1, 0, 2, "b"), (0, 1, 9, "c")])
    assert total == 2 and chosen == [(1, 0, 2, "b")]


def test_mst_disconnected():
    with pytest.raises(DisconnectedGraphError, match="graph disconnected"):
        minimum_spanning_tree(3, [(0, 1, 1)])


def test_gamma_examples(p6, path4):
    singles = ClusteredInstance.build(3, [(0, 1), (1, 2)], [[0], [1], [2]], 0)
    assert gamma(singles) == 0
    assert gamma(p6) == 1
    assert gamma(path4) == 1


def test_gamma_disconnected_cluster():
    inst = ClusteredInstance.build(3, [(0, 1), (1, 2)], [[0, 2], [1]], 0)
    with pytest.raises(InfeasibleInstanceError):
        gamma(inst)


def test_contract_examples(p6):
    q = contract_clusters(p6)
    assert q.k == 2 and len(q.edges) == 1
    assert p6.edges[q.edges[0][3]][:2] == (2, 3)
    whole = ClusteredInstance.build(6, p6.edges, [range(6)], 0)
    assert contract_clusters(whole).edges == ()
    singles = ClusteredInstance.build(6, p6.edges, [[v] for v in range(6)], 0)
    assert sorted(singles.edges[e][:2] for e in contract_clusters(singles).provenance()) == \
        sorted(e[:2] for e in p6.edges)


def test_broadcast_cost_examples(p6, path4):
    star = ClusteredInstance.build(4, [(0, 1), (0, 2), (0, 3)], [[0], [1], [2], [3]], 0)
    assert broadcast_cost(star, star.edges) == 3
    assert broadcast_cost(path4, path4.edges) == 6
    assert broadcast_cost(p6, P6_OPT_TREE) == 10


def test_broadcast_cost_rejects_non_spanning(p6):
    with pytest.raises(ValueError, match="not a spanning tree"):
        broadcast_cost(p6, [(0, 1), (0, 2)])


def test_feasibility_examples(p6):
    assert is_feasible_tree(p6, P6_OPT_TREE)
    assert is_feasible_tree(p6, [(0, 1), (0, 2), (2, 3), (3, 4), (4, 5)])
    singles = ClusteredInstance.build(6, p6.edges, [[v] for v in range(6)], 0)
    assert is_feasible_tree(singles, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    # the path 0-1-2-3 separates 0 from 2
    cut = ClusteredInstance.build(4, [(0, 1), (1, 2), (2, 3)], [[0, 2], [1], [3]], 0)
    assert not is_feasible_tree(cut, cut.edges)


def test_saturating_arithmetic():
    assert sat_add(INFINITY - 1, 5) == INFINITY
    assert sat_add(2, 3) == 5
    assert sat_mul(INFINITY, 0) == 0
    assert sat_mul(1 << 40, 1 << 40) == INFINITY


def test_build_normalizes():
    inst = ClusteredInstance.build(3, [(2, 1), (1, 0)], [[2, 1], [0]], 0)
    assert inst.edges == ((0, 1, 1), (1, 2, 1))
    assert inst.clusters == ((0,), (1, 2))
    assert not inst.weighted


@given(feasible_instances())
def test_spt_matches_networkx(inst):
    spt = shortest_path_tree(inst, inst.source)
    ref = nx.single_source_dijkstra_path_length(to_nx(inst), inst.source)
    assert all(spt.dist[v] == ref[v] for v in range(inst.n))


@given(feasible_instances(max_n=7))
def test_spt_is_cheapest_spanning_tree(inst):
    # every spanning tree rooted at the source costs at least the SPT
    spt_cost = shortest_path_tree(inst, inst.source).cost
    for chosen in itertools.combinations(inst.edges, inst.n - 1):
        try:
            tree = tree_from_edges(inst, chosen)
        except ValueError:
            continue
        assert tree.cost >= spt_cost


@given(feasible_instances())
def test_mst_weight_matches_networkx(inst):
    _, total = minimum_spanning_tree(inst.n, inst.edges)
    ref = nx.minimum_spanning_tree(to_nx(inst))
    assert total == int(ref.size(weight="weight"))


@given(feasible_instances())
def test_contraction_provenance_roundtrip(inst):
    q = contract_clusters(inst)
    owner = inst.cluster_of
    crossing = sorted(e for e in range(inst.m) if owner[inst.edges[e][0]] != owner[inst.edges[e][1]])
    assert sorted(q.provenance()) == crossing
    for i, j, _, eid in q.edges:
        u, v, _ = inst.edges[eid]
        assert {owner[u], owner[v]} == {i, j}


@given(feasible_instances(weighted=False))
def test_gamma_zero_iff_singletons(inst):
    assert (gamma(inst) == 0) == all(len(c) == 1 for c in inst.clusters)


@given(feasible_instances(weighted=True))
def test_weighted_gamma_zero_iff_clusters_have_zero_span(inst):
    # zero-weight edges can collapse a larger cluster to diameter 0
    flat = all(
        shortest_path_tree(inst.induced(c), v).dist[u] == 0 for c in inst.clusters for v in c for u in c
    )
    assert (gamma(inst) == 0) == flat


@given(feasible_instances())
def test_cost_independent_of_representation(inst):
    tree = shortest_path_tree(inst, inst.source)
    edges = tree.edges()
    rebuilt = tree_from_edges(inst, list(reversed(edges)))
    assert rebuilt.cost == broadcast_cost(inst, tree) == tree.cost
    assert rebuilt.parent == tree_from_edges(inst, edges).parent
