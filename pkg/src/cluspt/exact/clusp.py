"""Exact clustered shortest path by search over (vertex, departed clusters)."""

from __future__ import annotations

import heapq
from collections import deque

from ..errors import InstanceTooLargeError
from ..graph import INFINITY, ClusteredInstance

DEFAULT_BIT_BUDGET = 25


def clusp_exact_dp(inst: ClusteredInstance, s: int, t: int, bit_budget: int = DEFAULT_BIT_BUDGET):
    """Length of a shortest s-t path on which every cluster's vertices are
    consecutive, and one such path. ``(INFINITY, None)`` if none exists.

    A state is the current vertex plus the set of clusters already left.
    Leaving a cluster adds it to the set; a cluster in the set can't be
    re-entered. Clusters get bit positions when first left. A state is
    dropped when its vertex was already settled with a subset of its
    departed set, since that earlier state can continue in every way this
    one can.
    """
    big = sum(1 for c in inst.clusters if len(c) > 1)
    if big > bit_budget:
        raise InstanceTooLargeError(f"{big} non-singleton clusters exceed the bit budget {bit_budget}")
    for v in (s, t):
        if not 0 <= v < inst.n:
            raise ValueError(f"vertex {v} out of range")
    if s == t:
        return 0, [s]
    owner = inst.cluster_of
    adj = inst.adjacency
    bit: dict[int, int] = {}
    settled: list[list[int]] = [[] for _ in range(inst.n)]
    pred: dict[tuple[int, int], tuple[int, int] | None] = {(s, 0): None}

    def dominated(v, S):
        return any(p & ~S == 0 for p in settled[v])

    def expand(v, S):
        cv = owner[v]
        for y, w, _ in adj[v]:
            cy = owner[y]
            if cy == cv:
                yield y, S, w
                continue
            if cy in bit and S >> bit[cy] & 1:
                continue
            if cv not in bit:
                bit[cv] = len(bit)
            yield y, S | (1 << bit[cv]), w

    def walk(state):
        out = []
        while state is not None:
            out.append(state[0])
            state = pred[state]
        return out[::-1]

    if not inst.weighted:
        queue = deque([(s, 0)])
        dist = {(s, 0): 0}
        while queue:
            v, S = queue.popleft()
            if dominated(v, S):
                continue
            settled[v].append(S)
            if v == t:
                return dist[(v, S)], walk((v, S))
            for y, S2, _ in expand(v, S):
                if (y, S2) not in dist and not dominated(y, S2):
                    dist[(y, S2)] = dist[(v, S)] + 1
                    pred[(y, S2)] = (v, S)
                    queue.append((y, S2))
        return INFINITY, None

    dist = {(s, 0): 0}
    heap = [(0, s, 0)]
    while heap:
        d, v, S = heapq.heappop(heap)
        if d > dist[(v, S)] or dominated(v, S):
            continue
        settled[v].append(S)
        if v == t:
            return d, walk((v, S))
        for y, S2, w in expand(v, S):
            nd = d + w
            if nd < dist.get((y, S2), INFINITY) and not dominated(y, S2):
                dist[(y, S2)] = nd
                pred[(y, S2)] = (v, S)
                heapq.heappush(heap, (nd, y, S2))
    return INFINITY, None
