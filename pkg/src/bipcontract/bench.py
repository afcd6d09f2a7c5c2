"""Benchmarks: compiled versus pure-Python kernels, and a timed solver suite.

Every measurement is one JSON object per line so runs can be diffed and
aggregated with standard tools. Run ``python3 -m bipcontract.bench`` for
both parts.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

from .graph import Graph, parse_graph
from .kernels import available_backends
from .oracle import brute_force_contraction, gen_complete_bipartite, gen_cycle, gen_grid, gen_random
from .pipeline import Diagnostics, SolverConfig, solve


def _bitmask(g: Graph):
    order = g.sorted_vertices()
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * g.n
    for u, v in g.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    return adj, index


def _kernel_tasks(seed: int):
    """(name, size, callable taking a kernel module) triples."""
    tasks = []
    for n in (12, 14, 16):
        g = gen_random(n, 0.4, seed + n)
        adj, _ = _bitmask(g)
        tasks.append(("min_coloring_cost", n, lambda mod, adj=adj, n=n: mod.min_coloring_cost(adj, n, 0, 0)))
    for n, k in ((7, 3), (8, 4)):
        g = gen_random(n, 0.6, seed + 100 + n)
        _, index = _bitmask(g)
        edges = g.sorted_edges()
        eu = [index[u] for u, _ in edges]
        ev = [index[v] for _, v in edges]
        tasks.append(("min_contraction_subset", n,
                      lambda mod, n=n, eu=eu, ev=ev, k=k: mod.min_contraction_subset(n, eu, ev, k)))
    for n in (10, 12):
        g = gen_random(n, 0.35, seed + 200 + n)
        adj, _ = _bitmask(g)
        tasks.append(("connected_sets", n, lambda mod, adj=adj, n=n: mod.connected_sets(adj, n, 0, n - 1, 4)))
    return tasks


def kernel_benchmark(seed: int = 0, repeats: int = 3, emit: Callable[[dict], None] = lambda r: None) -> list[dict]:
    """Time every kernel on both backends; results must agree.

    Reports the best of ``repeats`` runs and, when the compiled backend is
    present, its speedup over the fallback.
    """
    backends = available_backends()
    records = []
    for name, size, call in _kernel_tasks(seed):
        results = {}
        timings = {}
        for label, mod in sorted(backends.items()):
            best = float("inf")
            for _ in range(repeats):
                start = time.perf_counter()
                results[label] = call(mod)
                best = min(best, time.perf_counter() - start)
            timings[label] = best
        if len(set(map(repr, results.values()))) != 1:
            raise AssertionError(f"backends disagree on {name} (n={size})")
        rec = {"kind": "kernel", "kernel": name, "n": size, "seconds": timings}
        if "cython" in timings and timings["cython"] > 0:
            rec["speedup"] = round(timings["python"] / timings["cython"], 1)
        records.append(rec)
        emit(rec)
    return records


@dataclass(frozen=True)
class SuiteCase:
    name: str
    graph: Graph
    k: int
    expected: Optional[bool] = None


def _bundled(name: str) -> Graph:
    return parse_graph(resources.files("bipcontract.data").joinpath(name).read_text())


def smoke_suite(seed: int = 0) -> tuple[list[SuiteCase], float]:
    """Small instances with known answers, and the suite's time budget in seconds."""
    cases = [
        SuiteCase("c5", _bundled("c5.txt"), 1, True),
        SuiteCase("k4-1", _bundled("k4.txt"), 1, False),
        SuiteCase("k4-2", _bundled("k4.txt"), 2, True),
        SuiteCase("petersen", _bundled("petersen.txt"), 3, True),
        SuiteCase("c9", gen_cycle(9), 1, True),
        SuiteCase("k33", gen_complete_bipartite(3, 3), 0, True),
        SuiteCase("grid3x4", gen_grid(3, 4), 0, True),
    ]
    for i in range(4):
        g = gen_random(8, 0.45, seed + i)
        cases.append(SuiteCase(f"random8-{seed + i}", g, 2, None))
    return cases, 60.0


def run_suite(
    seed: int = 0,
    cfg: Optional[SolverConfig] = None,
    emit: Callable[[dict], None] = lambda r: None,
) -> dict:
    """Solve every smoke case, checking answers against known values or the oracle."""
    cases, budget = smoke_suite(seed)
    total = 0.0
    wrong = []
    for case in cases:
        diag = Diagnostics()
        start = time.perf_counter()
        sol = solve(case.graph, case.k, cfg, diag)
        elapsed = time.perf_counter() - start
        total += elapsed
        expected = case.expected
        if expected is None:
            expected = brute_force_contraction(case.graph, case.k) is not None
        if (sol is not None) != expected:
            wrong.append(case.name)
        emit({
            "kind": "instance", "name": case.name, "n": case.graph.n, "m": case.graph.m,
            "k": case.k, "answer": sol is not None, "expected": expected, "seconds": round(elapsed, 4),
            "phases": dict(Counter(r["phase"] for r in diag.records)),
            # achieved width next to candidate sizes, for the width/size trade-off
            "max_width": max((r["width"] for r in diag.records if r.get("branch") == "decomposition"), default=None),
            "candidate_sizes": sorted({r["candidate"] for r in diag.records if r.get("branch") == "candidate"}),
        })
    summary = {"kind": "suite", "cases": len(cases), "seconds": round(total, 3),
               "budget": budget, "within_budget": total <= budget, "wrong": wrong}
    emit(summary)
    return summary


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python3 -m bipcontract.bench", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--part", choices=("kernels", "suite", "all"), default="all")
    args = ap.parse_args(argv)

    def emit(rec):
        print(json.dumps(rec, sort_keys=True), flush=True)

    if args.part in ("kernels", "all"):
        kernel_benchmark(args.seed, args.repeats, emit)
    ok = True
    if args.part in ("suite", "all"):
        summary = run_suite(args.seed, emit=emit)
        ok = summary["within_budget"] and not summary["wrong"]
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
