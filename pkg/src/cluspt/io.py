"""File formats: canonical instance JSON, solutions, DOT, DIMACS CNF, X3C JSON."""

from __future__ import annotations

import json

from .errors import InvalidInstanceError
from .graph import ClusteredInstance, SpanningTreeSolution, validate_instance
from .reductions import CnfFormula, X3cInstance


def _fail(message: str, field: str | None = None):
    where = f" (at {field})" if field else ""
    raise InvalidInstanceError(message + where, field=field)


def _int(value, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(f"expected an integer, got {value!r}", field)
    return value


def parse_instance(data: bytes | str) -> ClusteredInstance:
    """Parse the canonical JSON instance format, normalizing valid variants.

    Raises :class:`InvalidInstanceError` with field context for malformed
    JSON, negative weights, out-of-range vertices and partition violations.
    Disconnected clusters are accepted (they only matter to tree solvers).
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        _fail(f"malformed JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}")
    if not isinstance(doc, dict):
        _fail("instance must be a JSON object")
    for key in ("n", "edges", "clusters", "source"):
        if key not in doc:
            _fail(f"missing field {key!r}")
    n = _int(doc["n"], "n")
    weighted = doc.get("weighted", False)
    if not isinstance(weighted, bool):
        _fail("expected a boolean", "weighted")
    source = _int(doc["source"], "source")
    if not 0 <= source < n:
        _fail(f"vertex out of range: source {source}", "source")

    edges = []
    if not isinstance(doc["edges"], list):
        _fail("expected an array", "edges")
    for i, e in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        if not isinstance(e, list) or len(e) not in (2, 3):
            _fail("edge must be [u, v, w]", where)
        u, v = _int(e[0], where), _int(e[1], where)
        w = _int(e[2], where) if len(e) == 3 else 1
        if w < 0:
            _fail(f"negative weight {w}", where)
        for x in (u, v):
            if not 0 <= x < n:
                _fail(f"vertex out of range: {x}", where)
        edges.append((u, v, w))

    clusters = []
    if not isinstance(doc["clusters"], list):
        _fail("expected an array", "clusters")
    for i, c in enumerate(doc["clusters"]):
        where = f"clusters[{i}]"
        if not isinstance(c, list):
            _fail("cluster must be an array of vertex ids", where)
        members = []
        for x in c:
            x = _int(x, where)
            if not 0 <= x < n:
                _fail(f"vertex out of range: {x}", where)
            members.append(x)
        clusters.append(members)

    inst = ClusteredInstance.build(n, edges, clusters, source, weighted)
    report = validate_instance(inst)
    if report.structural:
        first = report.structural[0]
        raise InvalidInstanceError(first.message, report.structural, field=first.kind)
    return inst


def instance_to_json(inst: ClusteredInstance) -> dict:
    return {
        "n": inst.n,
        "weighted": inst.weighted,
        "edges": [list(e) for e in inst.edges],
        "clusters": [list(c) for c in inst.clusters],
        "source": inst.source,
    }


def serialize_instance(inst: ClusteredInstance) -> bytes:
    """Canonical bytes: fixed key order, one line, trailing newline."""
    return (json.dumps(instance_to_json(inst), separators=(", ", ": ")) + "\n").encode("utf-8")


def dump_json(doc) -> bytes:
    return (json.dumps(doc, indent=2, sort_keys=False) + "\n").encode("utf-8")


def solution_from_json(doc: dict) -> SpanningTreeSolution:
    parent = tuple(None if p < 0 else p for p in doc["parent"])
    return SpanningTreeSolution(parent, tuple(doc["dist"]), doc["cost"], doc["feasible"])


def to_dot(inst: ClusteredInstance, tree: SpanningTreeSolution | None = None, labels=None) -> str:
    """Undirected DOT graph; one ``subgraph cluster_i`` per cluster, tree edges bold."""
    bold = set(tree.edges()) if tree is not None else set()
    lines = ["graph clustered {", "  node [shape=circle];"]
    for i, c in enumerate(inst.clusters):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="V{i}";')
        lines.append("    style=dashed;")
        for v in c:
            attrs = []
            if labels:
                attrs.append(f'label="{labels[v]}"')
            if v == inst.source:
                attrs.append("peripheries=2")
            suffix = f" [{', '.join(attrs)}]" if attrs else ""
            lines.append(f"    {v}{suffix};")
        lines.append("  }")
    for u, v, w in inst.edges:
        attrs = []
        if inst.weighted:
            attrs.append(f'label="{w}"')
        if (u, v) in bold:
            attrs.append("style=bold")
            attrs.append("penwidth=3")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {u} -- {v}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Read a DIMACS CNF document whose clauses all have exactly 3 literals."""
    num_vars = num_clauses = None
    clauses = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                _fail(f"invalid problem line {line!r}", f"line {lineno}")
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            _fail("clause before the 'p cnf' header", f"line {lineno}")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                _fail(f"bad literal {tok!r}", f"line {lineno}")
            if lit == 0:
                if len(current) != 3:
                    _fail(f"clause with {len(current)} literals, expected 3", f"line {lineno}")
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if num_vars is None:
        _fail("missing 'p cnf' header")
    if current:
        _fail("last clause is not terminated by 0")
    if num_clauses is not None and num_clauses != len(clauses):
        _fail(f"header announces {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula.of(num_vars, clauses)


def write_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    lines += [" ".join(str(x) for x in c) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


def parse_x3c(data: bytes | str) -> X3cInstance:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        _fail(f"malformed JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}")
    if not isinstance(doc, dict) or "items" not in doc or "sets" not in doc:
        _fail('X3C input must be {"items": 3*eta, "sets": [[i, j, k], ...]}')
    return X3cInstance.of(_int(doc["items"], "items"), doc["sets"])


def x3c_to_json(x3c: X3cInstance) -> dict:
    return {"items": x3c.num_items, "sets": [list(s) for s in x3c.sets]}
