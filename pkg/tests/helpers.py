"""Shared builders and hypothesis strategies."""

from hypothesis import strategies as st

from cluspt.graph import ClusteredInstance
from cluspt.reductions import gen_random_clustered


@st.composite
def feasible_instances(draw, max_n=8, max_k=4, weighted=None):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, min(max_k, n)))
    m = draw(st.integers(n - 1, min(n + 4, n * (n - 1) // 2)))
    heavy = draw(st.booleans()) if weighted is None else weighted
    seed = draw(st.integers(0, 2**31))
    return gen_random_clustered(seed, n, m, k, 4 if heavy else 0)


def triangle(weights=(1, 1, 1), clusters=((0,), (1,), (2,)), source=0, weighted=None):
    edges = [(0, 1, weights[0]), (1, 2, weights[1]), (0, 2, weights[2])]
    return ClusteredInstance.build(3, edges, clusters, source, weighted)


# filled by the acceptance tests, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []
