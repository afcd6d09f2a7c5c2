"""Command-line interface.

Exit codes: 0 yes / accepted, 1 no / rejected, 2 input or parse error,
3 resource limit reached. ``--format structured`` prints one JSON object
per line instead of plain text.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench
from .coloring import analyze, parse_coloring, serialize_coloring
from .errors import BipContractError, GraphParseError, InvalidColoringError, ResourceError
from .graph import Graph, contract_edges, is_bipartite, norm_edge, read_graph_file, serialize_graph
from .oracle import DEFAULT_WORK_LIMIT, GENERATORS, brute_force_contraction
from .pipeline import POLICIES, Diagnostics, SolverConfig, solve
from .separators import enumerate_important_sets
from .treewidth import heuristic_decomposition, serialize_td

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class _Out:
    def __init__(self, fmt: str):
        self.structured = fmt == "structured"

    def record(self, rec: dict, plain_lines=()):
        if self.structured:
            print(json.dumps(rec, sort_keys=True))
        else:
            for line in plain_lines:
                print(line)


def _config(args) -> SolverConfig:
    return SolverConfig(
        width_bound=args.width_bound,
        wc_size=args.wc_size,
        cut_budget=args.cut_budget,
        irrelevant_policy=args.irrelevant_policy,
        work_limit=args.work_limit,
        seed=args.seed,
        threads=args.threads,
    )


def _load(path) -> Graph:
    inst = read_graph_file(path)
    if inst.t1 or inst.t2:
        print("warning: terminal lines are ignored by this command", file=sys.stderr)
    return inst.graph


def _witness_lines(s):
    return [f"e {u} {v}" for u, v in sorted(s)]


def cmd_solve(args, out: _Out) -> int:
    g = _load(args.graph)
    diag = Diagnostics.to_stderr() if args.diagnostics else Diagnostics()
    sol = solve(g, args.k, _config(args), diag)
    if sol is None:
        out.record({"answer": "NO", "k": args.k}, ["NO"])
        return EXIT_NO
    coloring = {str(v): c for v, c in sorted(sol.coloring.items())}
    out.record(
        {"answer": "YES", "k": args.k, "witness": sorted(sol.witness), "coloring": coloring},
        ["YES", *_witness_lines(sol.witness),
         *(f"v {v} {c}" for v, c in sorted(sol.coloring.items()))],
    )
    if args.coloring_out:
        with open(args.coloring_out, "w") as fh:
            fh.write(serialize_coloring(sol.coloring))
    return EXIT_YES


def parse_witness(text: str) -> list[tuple[int, int]]:
    """Edges from ``e u v`` lines; ``c``/``v`` lines and YES/NO markers are skipped."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] in ("c", "v", "YES", "NO"):
            continue
        if parts[0] != "e" or len(parts) != 3:
            raise GraphParseError("expected 'e <u> <v>'", lineno)
        try:
            edges.append((int(parts[1]), int(parts[2])))
        except ValueError:
            raise GraphParseError("edge endpoints must be integers", lineno) from None
    return edges


def cmd_verify(args, out: _Out) -> int:
    g = _load(args.graph)
    with open(args.witness) as fh:
        witness = parse_witness(fh.read())
    problems = []
    missing = [e for e in witness if not g.has_edge(*e)]
    for u, v in missing:
        problems.append(f"edge {u} {v} is not in the graph")
    s = {norm_edge(*e) for e in witness if g.has_edge(*e)}
    if len(s) > args.k:
        problems.append(f"witness has {len(s)} edges, budget is {args.k}")
    if not missing and is_bipartite(contract_edges(g, s)[0]) is None:
        problems.append("contracted graph is not bipartite")
    if args.coloring:
        with open(args.coloring) as fh:
            phi = parse_coloring(fh.read())
        try:
            cost = analyze(g, phi).cost
        except InvalidColoringError as exc:
            problems.append(f"coloring invalid: {exc}")
        else:
            if cost > args.k:
                problems.append(f"coloring has cost {cost}, budget is {args.k}")
    ok = not problems
    out.record(
        {"accepted": ok, "problems": problems, "witness_size": len(s)},
        ["ACCEPT" if ok else "REJECT", *(f"c {p}" for p in problems)],
    )
    return EXIT_YES if ok else EXIT_NO


def cmd_oracle(args, out: _Out) -> int:
    g = _load(args.graph)
    s = brute_force_contraction(g, args.k, args.work_limit)
    if s is None:
        out.record({"answer": "NO", "k": args.k}, ["NO"])
        return EXIT_NO
    out.record({"answer": "YES", "k": args.k, "witness": sorted(s)}, ["YES", *_witness_lines(s)])
    return EXIT_YES


_GEN_ARITY = {
    "path": (int,), "cycle": (int,), "complete": (int,), "star": (int,),
    "bipartite": (int, int), "grid": (int, int), "petersen": (), "random": (int, float),
}


def cmd_gen(args, out: _Out) -> int:
    kinds = _GEN_ARITY[args.kind]
    if len(args.params) != len(kinds):
        raise GraphParseError(f"{args.kind} takes {len(kinds)} parameter(s), got {len(args.params)}")
    try:
        params = [t(p) for t, p in zip(kinds, args.params)]
    except ValueError:
        raise GraphParseError(f"bad parameters {args.params} for {args.kind}") from None
    if args.kind == "random":
        params.append(args.seed)
    g = GENERATORS[args.kind](*params)
    text = serialize_graph(g, comments=[f"{args.kind} {' '.join(args.params)} seed {args.seed}".strip()])
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_tw(args, out: _Out) -> int:
    g = _load(args.graph)
    td = heuristic_decomposition(g, args.strategy)
    if out.structured:
        out.record({"width": td.width, "bags": {str(i): sorted(b) for i, b in sorted(td.bags.items())},
                    "tree": [list(e) for e in td.tree]})
    else:
        sys.stdout.write(serialize_td(td, g.n))
    return EXIT_YES


def cmd_impsep(args, out: _Out) -> int:
    g = _load(args.graph)
    for s in enumerate_important_sets(g, args.x, args.y, args.p):
        members = sorted(s.members)
        out.record({"members": members, "boundary": s.boundary}, [" ".join(map(str, members))])
    return EXIT_YES


def cmd_bench(args, out: _Out) -> int:
    def emit(rec):
        print(json.dumps(rec, sort_keys=True), flush=True)

    if args.suite == "kernels":
        bench.kernel_benchmark(args.seed, emit=emit)
        return EXIT_YES
    summary = bench.run_suite(args.seed, _config(args), emit)
    return EXIT_YES if summary["within_budget"] and not summary["wrong"] else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "structured"), default="plain")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--work-limit", type=int, default=DEFAULT_WORK_LIMIT)

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--threads", type=int, default=1)
    solver.add_argument("--width-bound", type=int, help="override the treewidth bound")
    solver.add_argument("--wc-size", type=int, help="override the well-connected set size")
    solver.add_argument("--cut-budget", type=int, help="override the important-set boundary budget")
    solver.add_argument("--irrelevant-policy", choices=POLICIES, default="verified-against-oracle")

    ap = argparse.ArgumentParser(prog="bipcontract", description="Bipartite Contraction solver and tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common, solver], help="decide and print a witness")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--coloring-out", help="also write the cheap coloring here")
    p.add_argument("--diagnostics", action="store_true", help="stream phase records to stderr")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="check a witness edge set")
    p.add_argument("graph")
    p.add_argument("witness")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--coloring", help="also check a coloring file of 'vertex color' lines")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="brute-force answer")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", parents=[common], help="write a generated graph")
    p.add_argument("kind", choices=sorted(_GEN_ARITY))
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("tw", parents=[common], help="heuristic tree decomposition in PACE format")
    p.add_argument("graph")
    p.add_argument("--strategy", choices=("min-degree", "min-fill"), default="min-degree")
    p.set_defaults(func=cmd_tw)

    p = sub.add_parser("impsep", parents=[common], help="list (x, y)-important sets")
    p.add_argument("graph")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_impsep)

    p = sub.add_parser("bench", parents=[common, solver], help="timed smoke suite or kernel comparison")
    p.add_argument("--suite", choices=("smoke", "kernels"), default="smoke")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.format)
    try:
        return args.func(args, out)
    except ResourceError as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (OSError, BipContractError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
