from fractions import Fraction

import pytest
from hypothesis import given

from cluspt.approx import clubfs_approx, clustered_mst, cluspt_approx_mst, diameter_lower_bound, ratio_bound
from cluspt.errors import InfeasibleInstanceError
from cluspt.exact import fpt2_solve, oracle_spanning_trees
from cluspt.graph import ClusteredInstance, gamma, shortest_path_tree
from cluspt.verify import _min_feasible_weight

from .helpers import feasible_instances


def zigzag_chain(length):
    """Source 0, then pair clusters {2j-1, 2j}. The smallest crossing edge
    always leaves a cluster from the vertex that was not its entry."""
    a = lambda j: 2 * j
    b = lambda j: 2 * j - 1
    edges = [(0, a(1))] + [(a(j), b(j)) for j in range(1, length + 1)]
    for j in range(1, length):
        edges += [(b(j), a(j + 1)), (a(j), a(j + 1))]
    clusters = [[0]] + [[a(j), b(j)] for j in range(1, length + 1)]
    return ClusteredInstance.build(2 * length + 1, edges, clusters, 0)


def test_p6_approx_is_optimal(p6):
    res = clubfs_approx(p6)
    assert res.tree.cost == 10 and res.tree.feasible
    assert res.gamma == 1
    assert res.ratio_certificate.rho == 2


def test_singletons_give_plain_bfs_cost(p6):
    singles = ClusteredInstance.build(6, p6.edges, [[v] for v in range(6)], 0)
    res = clubfs_approx(singles)
    assert res.tree.cost == shortest_path_tree(p6, 0).cost
    assert not res.ratio_certificate.applicable
    assert res.ratio_certificate.note == "2gamma term = 0; bound vacuous"


def test_path4_unique_tree(path4):
    assert clubfs_approx(path4).tree.cost == 6


def test_approx_rejects_weighted():
    inst = ClusteredInstance.build(2, [(0, 1, 3)], [[0], [1]], 0, True)
    with pytest.raises(ValueError, match="approx requires unweighted"):
        clubfs_approx(inst)


def test_approx_rejects_infeasible():
    inst = ClusteredInstance.build(3, [(0, 1), (1, 2)], [[0, 2], [1]], 0)
    with pytest.raises(InfeasibleInstanceError, match="infeasible instance"):
        clubfs_approx(inst)


def test_ratio_terms_for_p6(p6):
    cert = ratio_bound(p6)
    assert cert.terms == (Fraction(48), Fraction(144), Fraction(2))
    assert cert.rho == 2


@pytest.mark.parametrize("g, bound", [(1, 1), (2, 2), (3, 4), (4, 6), (5, 9)])
def test_diameter_lower_bound(g, bound):
    assert diameter_lower_bound(g) == bound


def test_lower_bound_is_valid_on_paths():
    # a path cluster of diameter g: OPT includes its own broadcast sum
    for g in range(1, 7):
        inst = ClusteredInstance.build(g + 1, [(i, i + 1) for i in range(g)], [range(g + 1)], g // 2)
        assert oracle_spanning_trees(inst)[0] >= diameter_lower_bound(g)


def test_zigzag_breaks_the_naive_aggregate_bound():
    # cost <= gamma*OPT + gamma*n fails here, the 2*gamma ratio does not
    inst = zigzag_chain(5)
    cost = clubfs_approx(inst).tree.cost
    opt = fpt2_solve(inst).opt
    g, n = gamma(inst), inst.n
    assert (cost, opt, g) == (55, 35, 1)
    assert cost > g * opt + g * n
    assert cost <= 2 * g * opt
    assert cost <= (g + 1) * opt + g * (n - 1)


def test_mst_approx_examples(p6):
    res = cluspt_approx_mst(p6)
    assert res.tree.feasible and res.tree_weight == 5
    whole = ClusteredInstance.build(3, [(0, 1, 1), (1, 2, 1), (0, 2, 5)], [[0, 1, 2]], 0, True)
    assert sorted(cluspt_approx_mst(whole).tree.edges()) == [(0, 1), (1, 2)]


def test_clustered_mst_skips_heavy_intra_edges():
    edges = [(0, 1, 1), (1, 2, 1), (0, 2, 9), (3, 4, 1), (4, 5, 9), (3, 5, 1), (2, 3, 2), (0, 5, 7)]
    inst = ClusteredInstance.build(6, edges, [[0, 1, 2], [3, 4, 5]], 0, True)
    chosen, weight = clustered_mst(inst)
    assert weight == 6 == _min_feasible_weight(inst)
    assert (0, 2) not in chosen and (4, 5) not in chosen


def test_clustered_mst_all_singletons_is_plain_mst():
    edges = [(0, 1, 4), (1, 2, 1), (0, 2, 2)]
    inst = ClusteredInstance.build(3, edges, [[0], [1], [2]], 0, True)
    assert clustered_mst(inst)[1] == 3


@given(feasible_instances(weighted=False))
def test_approx_tree_is_feasible_and_bounded(inst):
    res = clubfs_approx(inst)
    assert res.tree.feasible
    opt = fpt2_solve(inst).opt
    g, n = res.gamma, inst.n
    if g >= 1:
        assert res.tree.cost <= 2 * g * opt
        assert res.tree.cost <= res.ratio_certificate.rho * opt
        assert res.tree.cost <= (g + 1) * opt + g * (n - 1)
        assert opt >= diameter_lower_bound(g)


@given(feasible_instances(weighted=True))
def test_mst_approx_bounds(inst):
    res = cluspt_approx_mst(inst)
    best = fpt2_solve(inst)
    assert res.tree.feasible
    assert res.tree_weight <= sum(inst.weight(u, v) for u, v in best.tree.edges())
    assert res.tree.cost <= inst.n * best.opt


@given(feasible_instances(max_n=7))
def test_clustered_mst_weight_matches_enumeration(inst):
    assert clustered_mst(inst)[1] == _min_feasible_weight(inst)
