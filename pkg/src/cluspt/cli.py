"""Command-line front end.

Exit codes: 0 success, 1 usage or configuration error (including user-set
budgets), 2 infeasible instance, 3 internal work limit hit, 4 a verification
check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .approx import clubfs_approx, cluspt_approx_mst
from .errors import (
    BudgetExceededError,
    ClusteredTreeError,
    InfeasibleInstanceError,
    InstanceTooLargeError,
    InvalidInstanceError,
)
from .exact import clusp_exact_dp, fpt1_solve, fpt2_solve, oracle_spanning_trees
from .exact.oracles import DEFAULT_BUDGET
from .graph import INFINITY, require_tree_feasible, tree_from_edges
from .io import dump_json, parse_dimacs, parse_instance, parse_x3c, serialize_instance, solution_from_json, to_dot
from .reductions import gen_clubfs_from_3cnf, gen_clusp_from_x3c, gen_cluspt_from_3cnf, gen_random_clustered

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3, 4
SOLVERS = ("approx", "fpt1", "fpt2", "oracle", "clusp-dp")


class UsageError(Exception):
    pass


def _read(path: str | None) -> bytes:
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="input file (default: stdin)")
    p.add_argument("--output", help="output file (default: stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cluspt", description="Clustered shortest-path tree solvers.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance or a hardness gadget")
    _common(gen)
    gen.add_argument("--kind", choices=("random", "clubfs-sat", "cluspt-sat", "clusp-x3c"), default="random")
    gen.add_argument("--n", type=int, default=8)
    gen.add_argument("--m", type=int, default=10)
    gen.add_argument("--k", type=int, default=3)
    gen.add_argument("--max-weight", type=int, default=0, help="0 gives an unweighted instance")
    gen.add_argument("--M", type=int, default=20, help="gadget parameter")
    gen.add_argument("--certificate", help="where to write the gadget certificate JSON")

    solve = sub.add_parser("solve", help="solve an instance")
    _common(solve)
    solve.add_argument("--solver", choices=SOLVERS, default="fpt2")
    solve.add_argument("--problem", choices=("clubfs", "cluspt", "clusp"))
    solve.add_argument("--oracle-budget", type=int, default=DEFAULT_BUDGET)
    solve.add_argument("--bit-budget", type=int, default=25)
    solve.add_argument("--full-roots", action="store_true")
    solve.add_argument("--fast-convolution", action="store_true")
    solve.add_argument("--backend", choices=("compiled", "python"))
    solve.add_argument("--source", type=int)
    solve.add_argument("--target", type=int)
    solve.add_argument("--trace", help="write the DP table of the final fpt1 round here")

    verify = sub.add_parser("verify", help="run the seeded verification suites")
    _common(verify)
    verify.add_argument("--only", action="append", help="restrict to a suite (repeatable)")
    verify.add_argument("--count", type=int, default=200)
    verify.add_argument("--clusp-count", type=int, default=100)
    verify.add_argument("--formulas", type=int, default=50)
    verify.add_argument("--eta", type=int)
    verify.add_argument("--mu", type=int)
    verify.add_argument("--oracle-budget", type=int, default=DEFAULT_BUDGET)
    verify.add_argument("--corrupt-approx", action="store_true", help=argparse.SUPPRESS)

    bench = sub.add_parser("bench", help="time compiled kernels against the fallback")
    _common(bench)
    bench.add_argument("--repeat", type=int, default=1)

    dot = sub.add_parser("export-dot", help="render an instance (and optionally a tree) as DOT")
    _common(dot)
    dot.add_argument("--solution", help="solution JSON whose tree edges are drawn bold")
    dot.add_argument("--solver", choices=("approx", "fpt1", "fpt2", "oracle"))
    return parser


def _gen(args) -> int:
    if args.kind == "random":
        inst = gen_random_clustered(args.seed, args.n, args.m, args.k, args.max_weight)
        _write(args.output, serialize_instance(inst))
        return EXIT_OK
    text = _read(args.input).decode("utf-8")
    if args.kind == "clubfs-sat":
        cert = gen_clubfs_from_3cnf(parse_dimacs(text))
    elif args.kind == "cluspt-sat":
        cert = gen_cluspt_from_3cnf(parse_dimacs(text), args.M)
    else:
        cert = gen_clusp_from_x3c(parse_x3c(text), args.M)
    _write(args.output, serialize_instance(cert.instance))
    if args.certificate:
        Path(args.certificate).write_bytes(dump_json(cert.to_json()))
    return EXIT_OK


def _default_problem(solver: str, inst) -> str:
    if solver == "clusp-dp":
        return "clusp"
    if solver == "approx":
        return "clubfs"
    return "cluspt" if inst.weighted else "clubfs"


def _solve_tree(args, inst, problem: str):
    if args.solver == "approx":
        if problem == "clubfs":
            if inst.weighted:
                raise UsageError("approx requires unweighted")
            res = clubfs_approx(inst)
        else:
            res = cluspt_approx_mst(inst)
        doc = res.tree.to_json()
        doc["gamma"] = res.gamma
        if res.ratio_certificate is not None:
            doc["ratio_certificate"] = res.ratio_certificate.to_json()
        return doc
    if args.solver == "fpt1":
        trace = open(args.trace, "w") if args.trace else None
        try:
            res = fpt1_solve(inst, problem, fast_convolution=args.fast_convolution,
                             backend=args.backend, threads=args.threads, trace=trace)
        finally:
            if trace:
                trace.close()
        return res.tree.to_json()
    if args.solver == "fpt2":
        res = fpt2_solve(inst, problem, full_roots=args.full_roots, backend=args.backend, threads=args.threads)
        return res.tree.to_json()
    if problem == "clubfs" and inst.weighted:
        raise UsageError("clubfs requires an unweighted instance")
    require_tree_feasible(inst)
    _, witness = oracle_spanning_trees(inst, args.oracle_budget)
    return tree_from_edges(inst, witness).to_json()


def _solve(args) -> int:
    inst = parse_instance(_read(args.input))
    problem = args.problem or _default_problem(args.solver, inst)
    if (problem == "clusp") != (args.solver == "clusp-dp"):
        raise UsageError(f"solver {args.solver} does not solve problem {problem}")
    if problem == "clusp":
        s = inst.source if args.source is None else args.source
        if args.target is None:
            raise UsageError("--target is required for clusp")
        length, path = clusp_exact_dp(inst, s, args.target, args.bit_budget)
        doc = {"source": s, "target": args.target, "length": None if length >= INFINITY else length,
               "path": path}
        _write(args.output, dump_json(doc))
        if path is None:
            print("infeasible instance: no clustered path", file=sys.stderr)
            return EXIT_INFEASIBLE
        return EXIT_OK
    doc = {"solver": args.solver, "problem": problem}
    doc.update(_solve_tree(args, inst, problem))
    _write(args.output, dump_json(doc))
    return EXIT_OK


def _verify(args) -> int:
    from .verify import SUITES, VerifyConfig, corrupted_approx, run_verify

    cfg = VerifyConfig(
        only=tuple(args.only) if args.only else SUITES,
        seed=args.seed,
        count=args.count,
        clusp_count=args.clusp_count,
        formulas=args.formulas,
        eta=args.eta,
        mu=args.mu,
        threads=args.threads,
        oracle_budget=args.oracle_budget,
        approx_hook=corrupted_approx if args.corrupt_approx else None,
    )
    try:
        report = run_verify(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = report.to_json()
    _write(args.output, dump_json(doc))
    print(f"{doc['checks']} checks, {doc['failed']} failed", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFY


def _bench(args) -> int:
    from .bench import run_bench

    _write(args.output, dump_json(run_bench(args.seed, args.repeat)))
    return EXIT_OK


def _export_dot(args) -> int:
    inst = parse_instance(_read(args.input))
    tree = None
    if args.solution:
        tree = solution_from_json(json.loads(Path(args.solution).read_text()))
    elif args.solver:
        args.problem, args.full_roots, args.fast_convolution = None, False, False
        args.backend, args.trace, args.oracle_budget = None, None, DEFAULT_BUDGET
        doc = _solve_tree(args, inst, _default_problem(args.solver, inst))
        tree = solution_from_json(doc)
    _write(args.output, to_dot(inst, tree).encode("utf-8"))
    return EXIT_OK


COMMANDS = {"gen": _gen, "solve": _solve, "verify": _verify, "bench": _bench, "export-dot": _export_dot}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except InfeasibleInstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, InvalidInstanceError, InstanceTooLargeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClusteredTreeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
