"""Timing of the compiled kernels against the pure-Python fallback."""

from __future__ import annotations

import time

import numpy as np

from . import kernels
from .exact import fpt1_solve, fpt2_solve
from .reductions import all_sign_patterns_formula, gen_clubfs_from_3cnf, gen_random_clustered


def _time(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def workloads(seed: int):
    """``(name, callable taking a backend name)`` pairs, all seeded."""
    rng = np.random.default_rng(seed)
    u = 10
    f = rng.integers(0, 64, size=(8, 1 << u), dtype=np.int64)
    g = rng.integers(0, 64, size=(8, 1 << u), dtype=np.int64)
    big = gen_random_clustered(seed, 16, 28, 8)
    gadget = gen_clubfs_from_3cnf(all_sign_patterns_formula()).instance
    return [
        ("convolution u=10 x8 rows", lambda b: kernels.get_backend(b).subset_convolve_batch(f, g, u, 128)),
        ("fpt1 n=16 k=8", lambda b: fpt1_solve(big, backend=b).opt),
        ("fpt2 8-clause clubfs gadget", lambda b: fpt2_solve(gadget, backend=b).opt),
    ]


def run_bench(seed: int = 0, repeat: int = 1, backends=None) -> dict:
    backends = list(backends or kernels.available_backends())
    rows = []
    for name, job in workloads(seed):
        row = {"workload": name}
        results = []
        for b in backends:
            secs, out = _time(lambda: job(b), repeat)
            row[f"{b}_seconds"] = round(secs, 4)
            results.append(np.asarray(out).tolist())
        row["outputs_match"] = all(r == results[0] for r in results)
        if "compiled_seconds" in row and "python_seconds" in row and row["compiled_seconds"] > 0:
            row["speedup"] = round(row["python_seconds"] / row["compiled_seconds"], 1)
        rows.append(row)
    return {"seed": seed, "repeat": repeat, "backends": backends, "results": rows}
