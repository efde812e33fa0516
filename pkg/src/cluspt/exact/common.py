from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import ClusteredInstance, SpanningTreeSolution

PROBLEMS = ("clubfs", "cluspt")


@dataclass(frozen=True)
class ExactResult:
    tree: SpanningTreeSolution
    opt: int
    solver: str
    stats: dict = field(default_factory=dict)


def resolve_problem(inst: ClusteredInstance, problem: str | None) -> tuple[str, ClusteredInstance]:
    """Pick the problem variant and the instance the solver should see.

    The weighted variant runs on stored weights (all 1 for an unweighted
    instance); the unweighted one refuses weighted input.
    """
    if problem is None:
        problem = "cluspt" if inst.weighted else "clubfs"
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}; expected one of {PROBLEMS}")
    if problem == "clubfs" and inst.weighted:
        raise ValueError("clubfs requires an unweighted instance")
    if problem == "cluspt" and not inst.weighted:
        inst = inst.with_weights([w for _, _, w in inst.edges])
    return problem, inst
