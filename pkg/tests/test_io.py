import json

import pydot
import pytest
from hypothesis import given

from cluspt.errors import InvalidInstanceError
from cluspt.graph import SpanningTreeSolution, shortest_path_tree
from cluspt.io import (
    parse_dimacs,
    parse_instance,
    parse_x3c,
    serialize_instance,
    solution_from_json,
    to_dot,
    write_dimacs,
    x3c_to_json,
)
from cluspt.reductions import CnfFormula, X3cInstance, all_sign_patterns_formula

from .helpers import feasible_instances

P6_TEXT = (
    '{"n": 6, "weighted": false, "edges": [[0, 1, 1], [0, 2, 1], [1, 2, 1], [2, 3, 1], '
    '[3, 4, 1], [3, 5, 1], [4, 5, 1]], "clusters": [[0, 1, 2], [3, 4, 5]], "source": 0}\n'
)


def test_canonical_p6_roundtrip(p6):
    inst = parse_instance(P6_TEXT.encode())
    assert inst == p6
    assert serialize_instance(inst) == P6_TEXT.encode()


def test_noncanonical_input_is_normalized(p6):
    messy = {"source": 0, "clusters": [[5, 3, 4], [2, 0, 1]], "n": 6,
             "edges": [[1, 0], [2, 0], [2, 1], [3, 2], [4, 3], [5, 3], [5, 4]]}
    assert serialize_instance(parse_instance(json.dumps(messy))) == P6_TEXT.encode()


def test_negative_weight_rejected():
    doc = {"n": 2, "weighted": True, "edges": [[0, 1, -1]], "clusters": [[0], [1]], "source": 0}
    with pytest.raises(InvalidInstanceError, match="negative weight") as exc:
        parse_instance(json.dumps(doc))
    assert exc.value.field == "edges[0]"


def test_cluster_vertex_out_of_range():
    doc = {"n": 2, "edges": [[0, 1, 1]], "clusters": [[0], [1, 2]], "source": 0}
    with pytest.raises(InvalidInstanceError, match="vertex out of range"):
        parse_instance(json.dumps(doc))


def test_malformed_json_reports_position():
    with pytest.raises(InvalidInstanceError, match="malformed JSON") as exc:
        parse_instance(b'{"n": 2,\n "edges": [}')
    assert "line 2" in exc.value.field


def test_partition_violation_is_delegated():
    doc = {"n": 3, "edges": [[0, 1, 1], [1, 2, 1]], "clusters": [[0, 1], [1, 2]], "source": 0}
    with pytest.raises(InvalidInstanceError, match="overlapping clusters") as exc:
        parse_instance(json.dumps(doc))
    assert exc.value.violations


def test_disconnected_cluster_is_accepted_by_the_parser():
    doc = {"n": 3, "edges": [[0, 1, 1], [1, 2, 1]], "clusters": [[0, 2], [1]], "source": 0}
    assert parse_instance(json.dumps(doc)).k == 2


def test_missing_field():
    with pytest.raises(InvalidInstanceError, match="missing field 'source'"):
        parse_instance('{"n": 1, "edges": [], "clusters": [[0]]}')


@given(feasible_instances())
def test_serialize_parse_is_identity(inst):
    data = serialize_instance(inst)
    assert parse_instance(data) == inst
    assert serialize_instance(parse_instance(data)) == data


def test_solution_json_roundtrip(p6):
    sol = shortest_path_tree(p6, 0)
    sol = SpanningTreeSolution(sol.parent, sol.dist, sol.cost, True)
    doc = json.loads(json.dumps(sol.to_json()))
    assert doc["parent"][0] == 0
    assert solution_from_json(doc) == sol


def test_dot_parses_with_one_subgraph_per_cluster(p6):
    tree = shortest_path_tree(p6, 0)
    text = to_dot(p6, tree)
    (graph,) = pydot.graph_from_dot_data(text)
    names = sorted(sg.get_name() for sg in graph.get_subgraphs())
    assert names == ["cluster_0", "cluster_1"]
    bold = [e for e in graph.get_edges() if e.get("style") == "bold"]
    assert len(bold) == p6.n - 1


def test_dimacs_roundtrip():
    phi = all_sign_patterns_formula()
    assert parse_dimacs(write_dimacs(phi)) == phi
    text = "c comment\np cnf 3 1\n1 -2\n3 0\n"
    assert parse_dimacs(text) == CnfFormula.of(3, [(1, -2, 3)])


@pytest.mark.parametrize(
    "text, message",
    [
        ("1 2 3 0\n", "before the 'p cnf' header"),
        ("p cnf 3 1\n1 2 0\n", "expected 3"),
        ("p cnf 3 2\n1 2 3 0\n", "announces 2 clauses"),
        ("p cnf 2 1\n1 2 3 0\n", "outside"),
        ("p cnf 3 1\n1 2 3\n", "not terminated"),
    ],
)
def test_dimacs_errors(text, message):
    with pytest.raises(InvalidInstanceError, match=message):
        parse_dimacs(text)


def test_x3c_json_roundtrip():
    x3c = X3cInstance.of(6, [(0, 1, 2), (3, 4, 5)])
    assert parse_x3c(json.dumps(x3c_to_json(x3c))) == x3c
    with pytest.raises(InvalidInstanceError):
        parse_x3c('{"items": 3}')
