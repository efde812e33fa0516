"""Hardness gadgets with their cost thresholds, brute-force deciders and
seeded random instance generation.

Literals use the DIMACS convention: variable ``i`` (1-based) is ``i`` and its
negation is ``-i``. X3C items are 0-based.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field

from .errors import InstanceTooLargeError, InvalidInstanceError
from .graph import ClusteredInstance

SAT_BUDGET = 24
X3C_BUDGET = 20


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for j, c in enumerate(self.clauses):
            if len(c) != 3:
                raise InvalidInstanceError(f"clause {j} has {len(c)} literals, expected 3")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise InvalidInstanceError(f"clause {j} has literal {lit} outside 1..{self.num_vars}")

    @classmethod
    def of(cls, num_vars: int, clauses) -> "CnfFormula":
        return cls(int(num_vars), tuple(tuple(int(x) for x in c) for c in clauses))

    @property
    def eta(self) -> int:
        return self.num_vars

    @property
    def mu(self) -> int:
        return len(self.clauses)

    def evaluate(self, assignment) -> bool:
        return all(any((lit > 0) == assignment[abs(lit) - 1] for lit in c) for c in self.clauses)


@dataclass(frozen=True)
class X3cInstance:
    """Items ``0..num_items-1`` (``num_items = 3*eta``) and a collection of triples.

    Every item may occur in at most 3 sets. Items occurring in no set are
    allowed (the instance is then trivially unsolvable).
    """

    num_items: int
    sets: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_items % 3:
            raise InvalidInstanceError(f"item count {self.num_items} is not a multiple of 3")
        for j, s in enumerate(self.sets):
            if len(s) != 3 or len(set(s)) != 3:
                raise InvalidInstanceError(f"set {j} must hold 3 distinct items")
            if any(not 0 <= x < self.num_items for x in s):
                raise InvalidInstanceError(f"set {j} has an item outside 0..{self.num_items - 1}")
        over = [x for x, c in self.occurrences.items() if c > 3]
        if over:
            raise InvalidInstanceError(f"items {over} occur in more than 3 sets")

    @classmethod
    def of(cls, num_items: int, sets) -> "X3cInstance":
        return cls(int(num_items), tuple(tuple(int(x) for x in s) for s in sets))

    @property
    def eta(self) -> int:
        return self.num_items // 3

    @property
    def mu(self) -> int:
        return len(self.sets)

    @property
    def occurrences(self) -> Counter:
        return Counter(x for s in self.sets for x in s)


@dataclass(frozen=True)
class GadgetCertificate:
    """A generated instance plus the thresholds its optimum must respect.

    For ``kind == "cluspt-sat"`` the satisfiable case is an equality
    (``OPT == sat_threshold``); otherwise it is ``OPT <= sat_threshold``.
    The unsatisfiable case is always ``OPT >= unsat_threshold``.
    """

    instance: ClusteredInstance
    kind: str
    parameters: dict
    sat_threshold: int
    unsat_threshold: int
    source_problem: CnfFormula | X3cInstance
    labels: tuple[str, ...] = field(repr=False, default=())
    target: int | None = None
    notes: str = ""

    def consistent(self, opt: int, satisfiable: bool) -> bool:
        if satisfiable:
            if self.kind == "cluspt-sat":
                return opt == self.sat_threshold
            return opt <= self.sat_threshold
        return opt >= self.unsat_threshold

    def to_json(self) -> dict:
        src = self.source_problem
        if isinstance(src, CnfFormula):
            source = {"num_vars": src.num_vars, "clauses": [list(c) for c in src.clauses]}
        else:
            source = {"items": src.num_items, "sets": [list(s) for s in src.sets]}
        doc = {
            "kind": self.kind,
            "parameters": dict(self.parameters),
            "sat_threshold": self.sat_threshold,
            "unsat_threshold": self.unsat_threshold,
            "source_problem": source,
            "labels": list(self.labels),
        }
        if self.target is not None:
            doc["source"] = self.instance.source
            doc["target"] = self.target
        if self.notes:
            doc["notes"] = self.notes
        return doc


class _Builder:
    def __init__(self):
        self.labels: list[str] = []
        self.edges: list[tuple[int, int, int]] = []
        self.clusters: list[list[int]] = []

    def vertex(self, label: str) -> int:
        self.labels.append(label)
        return len(self.labels) - 1

    def edge(self, u: int, v: int, w: int = 1) -> None:
        self.edges.append((u, v, w))

    def path(self, a: int, b: int, length: int, label: str, w: int = 1) -> list[int]:
        """Join ``a`` to ``b`` by ``length`` edges; returns the interior vertices."""
        inner = [self.vertex(f"{label}.{t}") for t in range(1, length)]
        chain = [a, *inner, b]
        for x, y in zip(chain, chain[1:]):
            self.edge(x, y, w)
        return inner

    def instance(self, source: int, weighted: bool) -> ClusteredInstance:
        return ClusteredInstance.build(len(self.labels), self.edges, self.clusters, source, weighted)


def _variable_part(b: _Builder, phi: CnfFormula, s: int, pair_weight: int, rest_weight: int):
    pos, neg = [], []
    for i in range(1, phi.num_vars + 1):
        v, nv = b.vertex(f"v{i}"), b.vertex(f"~v{i}")
        pos.append(v)
        neg.append(nv)
        b.edge(v, s, rest_weight)
        b.edge(nv, s, rest_weight)
        b.edge(v, nv, pair_weight)
        b.clusters.append([v, nv])
    return pos, neg


def gen_clubfs_from_3cnf(phi: CnfFormula) -> GadgetCertificate:
    """Unweighted gadget: clause triangles wired to variable pairs."""
    b = _Builder()
    s = b.vertex("s")
    b.clusters.append([s])
    pos, neg = _variable_part(b, phi, s, 1, 1)
    for j, clause in enumerate(phi.clauses, start=1):
        cv = [b.vertex(f"c{j},{t}") for t in (1, 2, 3)]
        b.edge(cv[0], cv[1])
        b.edge(cv[1], cv[2])
        b.edge(cv[2], cv[0])
        b.clusters.append(cv)
        for t, lit in enumerate(clause):
            b.edge(cv[t], (pos if lit > 0 else neg)[abs(lit) - 1])
    eta, mu = phi.eta, phi.mu
    return GadgetCertificate(
        b.instance(s, False),
        "clubfs-sat",
        {"eta": eta, "mu": mu},
        3 * eta + 8 * mu,
        3 * eta + 8 * mu + 3,
        phi,
        tuple(b.labels),
    )


def gen_cluspt_from_3cnf(phi: CnfFormula, M: int) -> GadgetCertificate:
    """Weighted gadget: per clause a star around ``r_j`` plus an ``M``-vertex path.

    All weights are 0 except the unit edge inside each variable pair.
    """
    if M < 1:
        raise InvalidInstanceError("M must be a positive integer")
    b = _Builder()
    s = b.vertex("s")
    b.clusters.append([s])
    pos, neg = _variable_part(b, phi, s, 1, 0)
    for j, clause in enumerate(phi.clauses, start=1):
        cv = [b.vertex(f"c{j},{t}") for t in (1, 2, 3)]
        r = b.vertex(f"r{j}")
        for c in cv:
            b.edge(c, r, 0)
        tail = [b.vertex(f"t{j}.{t}") for t in range(1, M + 1)]
        for x, y in zip([r, *tail], tail):
            b.edge(x, y, 0)
        b.clusters.append([*cv, r, *tail])
        for t, lit in enumerate(clause):
            b.edge(cv[t], (pos if lit > 0 else neg)[abs(lit) - 1], 0)
    eta, mu = phi.eta, phi.mu
    return GadgetCertificate(
        b.instance(s, True),
        "cluspt-sat",
        {"eta": eta, "mu": mu, "M": M},
        eta,
        eta + M + 4,
        phi,
        tuple(b.labels),
        notes="tree of M vertices realized as a path hanging from r_j",
    )


def gen_clusp_from_x3c(x3c: X3cInstance, M: int) -> GadgetCertificate:
    """Unweighted clustered-path gadget; source ``u_1^0``, target ``u_mu^3``."""
    if M < 1:
        raise InvalidInstanceError("M must be a positive integer")
    eta, mu = x3c.eta, x3c.mu
    if mu < max(eta, 1):
        # the mu - eta bottom paths need mu >= eta; fewer sets can never cover
        raise InvalidInstanceError(f"X3C gadget needs at least eta={eta} sets, got {mu}")
    b = _Builder()
    u = []
    for j in range(1, mu + 1):
        row = [b.vertex(f"u{j}^{t}") for t in range(4)]
        u.append(row)
        for x in row:
            b.clusters.append([x])
    for j in range(mu - 1):
        b.edge(u[j][3], u[j + 1][0])

    containing: dict[int, list[int]] = {x: [] for x in range(x3c.num_items)}
    for j, sj in enumerate(x3c.sets):
        for x in sj:
            containing[x].append(j)

    ends: dict[tuple[int, int], int] = {}
    for x in range(x3c.num_items):
        hub = b.vertex(f"x{x}")
        members = [hub]
        for h in range(1, len(containing[x]) + 1):
            end = b.vertex(f"x{x}^{h}")
            ends[(x, h)] = end
            members.append(end)
            members.extend(b.path(hub, end, M, f"x{x}~{h}"))
        b.clusters.append(members)

    for j, sj in enumerate(x3c.sets):
        for kk, x in enumerate(sj, start=1):
            h = containing[x].index(j) + 1
            b.edge(u[j][kk - 1], ends[(x, h)])
            b.edge(u[j][kk], ends[(x, h)])

    for z in range(1, mu - eta + 1):
        hub = b.vertex(f"y{z}")
        members = [hub]
        for j in range(1, mu + 1):
            end = b.vertex(f"y{z}^{j}")
            members.append(end)
            members.extend(b.path(hub, end, M, f"y{z}~{j}"))
            b.edge(u[j - 1][0], end)
            b.edge(u[j - 1][3], end)
        b.clusters.append(members)

    s, t = u[0][0], u[mu - 1][3]
    return GadgetCertificate(
        b.instance(s, False),
        "clusp-x3c",
        {"eta": eta, "mu": mu, "M": M},
        15 * mu,
        M,
        x3c,
        tuple(b.labels),
        target=t,
        notes="chain indexed j=1..mu; s=u_1^0, t=u_mu^3",
    )


def sat_bruteforce(phi: CnfFormula, budget: int = SAT_BUDGET):
    """Exhaustive assignment search. Returns ``(satisfiable, assignment | None)``."""
    if phi.num_vars > budget:
        raise InstanceTooLargeError(f"{phi.num_vars} variables exceed the brute-force budget of {budget}")
    for bits in itertools.product((False, True), repeat=phi.num_vars):
        if phi.evaluate(bits):
            return True, bits
    return False, None


def x3c_bruteforce(x3c: X3cInstance, budget: int = X3C_BUDGET):
    """Try every eta-subset of the sets. Returns ``(solvable, set indices | None)``."""
    if x3c.mu > budget:
        raise InstanceTooLargeError(f"{x3c.mu} sets exceed the brute-force budget of {budget}")
    everything = set(range(x3c.num_items))
    for pick in itertools.combinations(range(x3c.mu), x3c.eta):
        covered = [x for j in pick for x in x3c.sets[j]]
        if len(covered) == len(set(covered)) and set(covered) == everything:
            return True, pick
    return False, None


def random_3cnf(seed: int, num_vars: int, num_clauses: int) -> CnfFormula:
    """Random 3-CNF; variables within a clause are distinct when ``num_vars >= 3``."""
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        if num_vars >= 3:
            vs = rng.sample(range(1, num_vars + 1), 3)
        else:
            vs = [rng.randint(1, num_vars) for _ in range(3)]
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula.of(num_vars, clauses)


def all_sign_patterns_formula() -> CnfFormula:
    """The 8 clauses over x1,x2,x3 with every sign pattern; unsatisfiable."""
    return CnfFormula.of(3, [tuple(s * v for s, v in zip(signs, (1, 2, 3)))
                             for signs in itertools.product((1, -1), repeat=3)])


def random_x3c(seed: int, eta: int, mu: int) -> X3cInstance:
    """Random set system; planted cover when ``seed`` is even and ``mu >= eta``."""
    rng = random.Random(seed)
    items = list(range(3 * eta))
    for _ in range(1000):
        sets: list[tuple[int, int, int]] = []
        if seed % 2 == 0 and mu >= eta:
            perm = items[:]
            rng.shuffle(perm)
            sets = [tuple(sorted(perm[3 * i:3 * i + 3])) for i in range(eta)]
        while len(sets) < mu:
            sets.append(tuple(sorted(rng.sample(items, 3))))
        rng.shuffle(sets)
        occ = Counter(x for s in sets for x in s)
        if all(c <= 3 for c in occ.values()):
            return X3cInstance.of(3 * eta, sets)
    raise InvalidInstanceError("could not sample a set system with occurrence <= 3")


def enumerate_x3c(eta: int, mu: int):
    """All collections of ``mu`` distinct triples over ``3*eta`` items (occurrence <= 3)."""
    triples = list(itertools.combinations(range(3 * eta), 3))
    for combo in itertools.combinations(triples, mu):
        occ = Counter(x for s in combo for x in s)
        if all(c <= 3 for c in occ.values()):
            yield X3cInstance.of(3 * eta, combo)


def gen_random_clustered(
    seed: int,
    n: int,
    m: int,
    k: int,
    max_weight: int = 0,
    ensure_feasible: bool = True,
    source: int | None = None,
) -> ClusteredInstance:
    """Seeded random clustered instance.

    ``max_weight == 0`` gives an unweighted instance; otherwise weights are
    uniform in ``0..max_weight``. With ``ensure_feasible`` every cluster gets
    a random internal spanning tree and the clusters are joined by a random
    spanning tree before extra random edges fill up to ``m``.
    """
    if not 1 <= k <= n:
        raise InvalidInstanceError(f"need 1 <= k <= n, got k={k}, n={n}")
    if m > n * (n - 1) // 2:
        raise InvalidInstanceError(f"m={m} exceeds the {n * (n - 1) // 2} possible edges")
    if ensure_feasible and m < n - 1:
        raise InvalidInstanceError(f"m={m} is below n-1={n - 1}")
    rng = random.Random(seed)
    verts = list(range(n))
    rng.shuffle(verts)
    cuts = sorted(rng.sample(range(1, n), k - 1))
    bounds = [0, *cuts, n]
    clusters = [verts[bounds[i]:bounds[i + 1]] for i in range(k)]

    chosen: set[tuple[int, int]] = set()

    def add(a, b):
        chosen.add((min(a, b), max(a, b)))

    if ensure_feasible:
        for c in clusters:
            for idx in range(1, len(c)):
                add(c[idx], c[rng.randrange(idx)])
        order = list(range(k))
        rng.shuffle(order)
        for idx in range(1, k):
            a = clusters[order[idx]]
            b = clusters[order[rng.randrange(idx)]]
            add(rng.choice(a), rng.choice(b))
    while len(chosen) < m:
        a, b = rng.sample(range(n), 2)
        add(a, b)
    edges = sorted(chosen)
    weights = [rng.randint(0, max_weight) if max_weight > 0 else 1 for _ in edges]
    s = rng.randrange(n) if source is None else source
    return ClusteredInstance.build(
        n, [(a, b, w) for (a, b), w in zip(edges, weights)], clusters, s, max_weight > 0
    )
