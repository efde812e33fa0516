"""Seeded verification suites behind ``cluspt verify``.

Each check records the inequality it tested with its concrete numbers, so a
report can be audited without rerunning. Reports carry no timings and are
byte-identical across runs with the same configuration.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .approx import ApproxResult, clubfs_approx, cluspt_approx_mst, clustered_mst
from .exact import clusp_exact_dp, clusp_oracle_paths, consecutive_clusters, fpt1_solve, fpt2_solve, oracle_spanning_trees
from .graph import INFINITY, ClusteredInstance, broadcast_cost, gamma, is_feasible_tree
from .reductions import (
    all_sign_patterns_formula,
    enumerate_x3c,
    gen_clubfs_from_3cnf,
    gen_clusp_from_x3c,
    gen_cluspt_from_3cnf,
    gen_random_clustered,
    random_3cnf,
    random_x3c,
    sat_bruteforce,
    x3c_bruteforce,
)

SUITES = ("fixtures", "agreement", "approx", "oracles", "gadgets")


def p6() -> ClusteredInstance:
    """Two unit triangles joined by the edge (2, 3), one cluster each, source 0."""
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]
    return ClusteredInstance.build(6, edges, [[0, 1, 2], [3, 4, 5]], 0, False)


def path4() -> ClusteredInstance:
    return ClusteredInstance.build(4, [(0, 1), (1, 2), (2, 3)], [[0, 1], [2, 3]], 0, False)


@dataclass
class VerifyConfig:
    only: tuple[str, ...] = SUITES
    seed: int = 0
    count: int = 200
    clusp_count: int = 100
    formulas: int = 50
    eta: int | None = None
    mu: int | None = None
    threads: int = 1
    oracle_budget: int = 5_000_000
    approx_hook: Callable[[ClusteredInstance], ApproxResult] | None = None


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, suite: str, name: str, ok: bool, **numbers) -> bool:
        entry = {"suite": suite, "check": name, "ok": bool(ok)}
        entry.update({k: (str(v) if isinstance(v, Fraction) else v) for k, v in numbers.items()})
        self.checks.append(entry)
        return ok

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def to_json(self) -> dict:
        failed = [c for c in self.checks if not c["ok"]]
        return {"ok": self.ok, "checks": len(self.checks), "failed": len(failed),
                "failures": failed, "results": self.checks}


def suite_instances(seed: int, count: int):
    """Random feasible instances with n <= 10, m <= 14, k <= 4; odd indices weighted 0..4."""
    for idx in range(count):
        rng = random.Random(f"{seed}/{idx}")
        n = rng.randint(2, 10)
        k = rng.randint(1, min(4, n))
        m = rng.randint(n - 1, min(14, n * (n - 1) // 2))
        yield idx, gen_random_clustered(rng.randrange(1 << 30), n, m, k, 0 if idx % 2 == 0 else 4)


def clusp_instances(seed: int, count: int):
    """Random instances with n <= 12 (clusters may be disconnected) and an s-t pair."""
    for idx in range(count):
        rng = random.Random(f"clusp/{seed}/{idx}")
        n = rng.randint(2, 12)
        k = rng.randint(1, n)
        m = rng.randint(0, min(2 * n, n * (n - 1) // 2))
        inst = gen_random_clustered(rng.randrange(1 << 30), n, m, k, 0 if idx % 2 == 0 else 3,
                                    ensure_feasible=False)
        s, t = rng.randrange(n), rng.randrange(n)
        yield idx, inst, s, t


def _tree_ok(inst: ClusteredInstance, tree, cost: int) -> bool:
    stored = getattr(tree, "cost", cost)
    return is_feasible_tree(inst, tree) and broadcast_cost(inst, tree) == cost == stored


def check_fixtures(cfg: VerifyConfig, rep: Report) -> None:
    for name, inst, expected in (("P6", p6(), 10), ("PATH4", path4(), 6)):
        got = {
            "fpt1": fpt1_solve(inst, threads=cfg.threads).opt,
            "fpt2": fpt2_solve(inst, threads=cfg.threads).opt,
            "oracle": oracle_spanning_trees(inst, cfg.oracle_budget)[0],
        }
        rep.add("fixtures", f"{name} optimum", all(v == expected for v in got.values()),
                expected=expected, **got)


def _solve_all(cfg: VerifyConfig, inst: ClusteredInstance):
    r1 = fpt1_solve(inst, threads=cfg.threads)
    r2 = fpt2_solve(inst, threads=cfg.threads)
    opt, witness = oracle_spanning_trees(inst, cfg.oracle_budget)
    return r1, r2, opt, witness


def check_suite(cfg: VerifyConfig, rep: Report, suites) -> None:
    """Solver agreement, approximation bounds and clustered-MST weight on one pass."""
    approx = cfg.approx_hook or clubfs_approx
    for idx, inst in suite_instances(cfg.seed, cfg.count):
        r1, r2, opt, witness = _solve_all(cfg, inst)
        tag = f"instance {idx}"
        if "agreement" in suites:
            same = r1.opt == r2.opt == opt
            witnesses = _tree_ok(inst, r1.tree, r1.opt) and _tree_ok(inst, r2.tree, r2.opt) \
                and _tree_ok(inst, witness, opt)
            rep.add("agreement", f"{tag}: fpt1 = fpt2 = oracle", same and witnesses,
                    n=inst.n, m=inst.m, k=inst.k, weighted=inst.weighted,
                    fpt1=r1.opt, fpt2=r2.opt, oracle=opt, witnesses_ok=witnesses)
        if "approx" in suites:
            g = gamma(inst)
            if not inst.weighted and g >= 1:
                res = approx(inst)
                c = res.tree.cost
                rho = res.ratio_certificate.rho
                rep.add("approx", f"{tag}: cost <= 2*gamma*OPT", res.tree.feasible and c <= 2 * g * opt,
                        cost=c, gamma=g, opt=opt, bound=2 * g * opt)
                rep.add("approx", f"{tag}: cost <= rho*OPT", c <= rho * opt, cost=c, rho=rho, opt=opt,
                        bound=rho * opt)
            if inst.weighted:
                res = cluspt_approx_mst(inst)
                w_opt = sum(inst.weight(u, v) for u, v in r2.tree.edges())
                rep.add("approx", f"{tag}: w(mst tree) <= w(optimal tree)",
                        res.tree.feasible and res.tree_weight <= w_opt,
                        weight=res.tree_weight, optimal_tree_weight=w_opt)
                rep.add("approx", f"{tag}: cost(mst tree) <= n*OPT", res.tree.cost <= inst.n * opt,
                        cost=res.tree.cost, n=inst.n, opt=opt, bound=inst.n * opt)
        if "oracles" in suites:
            _, weight = clustered_mst(inst)
            best = _min_feasible_weight(inst)
            rep.add("oracles", f"{tag}: clustered MST weight = brute-force minimum", weight == best,
                    weight=weight, brute_force=best)


def _min_feasible_weight(inst: ClusteredInstance) -> int:
    best = INFINITY
    for chosen in itertools.combinations(inst.edges, inst.n - 1):
        edges = [(u, v) for u, v, _ in chosen]
        if _spans(inst.n, edges) and is_feasible_tree(inst, edges):
            best = min(best, sum(w for *_, w in chosen))
    return best


def _spans(n: int, edges) -> bool:
    root = list(range(n))

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for u, v in edges:
        a, b = find(u), find(v)
        if a == b:
            return False
        root[a] = b
    return True


def check_clusp(cfg: VerifyConfig, rep: Report) -> None:
    for idx, inst, s, t in clusp_instances(cfg.seed, cfg.clusp_count):
        dp, path = clusp_exact_dp(inst, s, t)
        oracle, _ = clusp_oracle_paths(inst, s, t)
        valid = path is None or (path[0] == s and path[-1] == t and consecutive_clusters(inst, path))
        rep.add("oracles", f"clusp instance {idx}: dp = path oracle", dp == oracle and valid,
                n=inst.n, s=s, t=t, dp=_fmt(dp), oracle=_fmt(oracle))


def _fmt(x: int):
    return "inf" if x >= INFINITY else x


def _formulas(cfg: VerifyConfig):
    for idx in range(cfg.formulas):
        rng = random.Random(f"cnf/{cfg.seed}/{idx}")
        eta = cfg.eta if cfg.eta is not None else rng.randint(1, 3)
        mu = cfg.mu if cfg.mu is not None else rng.randint(1, 8)
        yield f"random formula {idx}", random_3cnf(rng.randrange(1 << 30), eta, mu)
    yield "all-sign-patterns formula", all_sign_patterns_formula()


def check_gadgets(cfg: VerifyConfig, rep: Report) -> None:
    for name, phi in _formulas(cfg):
        sat = sat_bruteforce(phi)[0]
        cert = gen_clubfs_from_3cnf(phi)
        inst = cert.instance
        eta, mu = phi.eta, phi.mu
        rep.add("gadgets", f"{name}: clubfs gadget size", inst.n == 3 * mu + 2 * eta + 1 and inst.m == 6 * mu + 3 * eta,
                n=inst.n, m=inst.m, expected_n=3 * mu + 2 * eta + 1, expected_m=6 * mu + 3 * eta)
        opt = fpt2_solve(inst, threads=cfg.threads).opt
        relation = f"OPT <= {cert.sat_threshold}" if sat else f"OPT >= {cert.unsat_threshold}"
        rep.add("gadgets", f"{name}: clubfs dichotomy", cert.consistent(opt, sat),
                satisfiable=sat, opt=opt, relation=relation)
        cert = gen_cluspt_from_3cnf(phi, 20)
        opt = fpt2_solve(cert.instance, threads=cfg.threads).opt
        relation = f"OPT == {cert.sat_threshold}" if sat else f"OPT >= {cert.unsat_threshold}"
        rep.add("gadgets", f"{name}: cluspt dichotomy (M=20)", cert.consistent(opt, sat),
                satisfiable=sat, opt=opt, relation=relation)
    for name, x3c in _x3c_instances(cfg):
        cert = gen_clusp_from_x3c(x3c, 40)
        opt, _ = clusp_exact_dp(cert.instance, cert.instance.source, cert.target)
        solvable = x3c_bruteforce(x3c)[0]
        relation = f"OPT <= {cert.sat_threshold}" if solvable else f"OPT >= {cert.unsat_threshold}"
        rep.add("gadgets", f"{name}: clusp dichotomy (M=40)", cert.consistent(opt, solvable),
                solvable=solvable, opt=_fmt(opt), relation=relation)


def _x3c_instances(cfg: VerifyConfig):
    for eta in (1, 2):
        for mu in range(eta, 4):
            for j, x3c in enumerate(enumerate_x3c(eta, mu)):
                yield f"x3c eta={eta} mu={mu} #{j}", x3c
    for idx in range(20):
        rng = random.Random(f"x3c/{cfg.seed}/{idx}")
        eta = rng.randint(1, 3)
        mu = rng.randint(eta, min(4, 3 * eta))
        yield f"random x3c {idx}", random_x3c(rng.randrange(1 << 30), eta, mu)


def run_verify(cfg: VerifyConfig) -> Report:
    unknown = set(cfg.only) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites {sorted(unknown)}; choose from {SUITES}")
    rep = Report()
    if "fixtures" in cfg.only:
        check_fixtures(cfg, rep)
    suite1 = [s for s in ("agreement", "approx", "oracles") if s in cfg.only]
    if suite1:
        check_suite(cfg, rep, suite1)
    if "oracles" in cfg.only:
        check_clusp(cfg, rep)
    if "gadgets" in cfg.only:
        check_gadgets(cfg, rep)
    return rep


def corrupted_approx(inst: ClusteredInstance) -> ApproxResult:
    """Test hook: the approximation with its cost inflated past every bound."""
    res = clubfs_approx(inst)
    tree = res.tree
    bad = type(tree)(tree.parent, tree.dist, tree.cost * 2 * max(res.gamma, 1) + 1, tree.feasible)
    return ApproxResult(bad, res.gamma, res.ratio_certificate, res.tree_weight)
