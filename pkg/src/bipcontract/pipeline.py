"""The parameterized Bipartite Contraction algorithm, end to end.

Layers, top to bottom:

* :func:`solve_bipartite_contraction` splits into components and turns a
  cheap 2-coloring into a contraction set.
* :func:`solve_cheap_coloring` inserts edges one at a time and compresses
  whenever the maintained coloring reaches cost ``k + 1``.
* :func:`solve_cheaper_coloring` guesses the colors of all bad-edge
  endpoints and reduces each guess to a coloring-extension instance.
* :func:`solve_extension` alternates between the decomposition DP and
  deleting irrelevant edges inside a large well-connected candidate.
"""

from __future__ import annotations

import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .coloring import analyze, coloring_to_contraction_set, is_extension
from .errors import (
    CandidateInvalidError,
    DichotomyFailure,
    IrrelevantEdgeNotFound,
    PreconditionError,
    ResourceError,
)
from .extension_dp import ExtensionInstance, solve_extension_dp
from .graph import (
    Edge,
    Graph,
    connected_components,
    contract_edges,
    delete_edge,
    is_bipartite,
)
from .oracle import brute_force_coloring
from .separators import compute_z_details
from .treewidth import (
    TreeDecomposition,
    WellConnectedCandidate,
    decomposition_or_wellconnected,
    heuristic_decomposition,
    to_nice,
)

POLICIES = ("exact-constants-only", "verified-against-oracle", "disabled")


def exact_cut_budget(k: int) -> int:
    return 4 * k * k


def exact_width_bound(k: int, t: int) -> int:
    return 3 * (4 * k * k) * t * 4 ** (4 * k * k) + 3


def exact_wc_size(k: int, t: int) -> int:
    return 2 * (4 * k * k) * t * 4 ** (4 * k * k) + 2


@dataclass
class SolverConfig:
    """Constants and safety policy for the solver.

    ``None`` for ``width_bound``, ``wc_size`` or ``cut_budget`` means the
    value is computed from ``k`` and ``t`` by the exact formula. Irrelevant
    edges are only deleted under ``exact-constants-only`` when all three are
    exact, and under ``verified-against-oracle`` only when the graph has at
    most ``oracle_max_vertices`` vertices and brute force confirms the
    optimum is unchanged.
    """

    width_bound: Optional[int] = None
    wc_size: Optional[int] = None
    cut_budget: Optional[int] = None
    irrelevant_policy: str = "verified-against-oracle"
    work_limit: int = 10**8
    oracle_max_vertices: int = 16
    dp_width_limit: int = 7
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.irrelevant_policy not in POLICIES:
            raise ValueError(f"unknown irrelevant-edge policy {self.irrelevant_policy!r}")

    @property
    def constants_exact(self) -> bool:
        return self.width_bound is None and self.wc_size is None and self.cut_budget is None

    def w(self, k: int, t: int) -> int:
        return exact_width_bound(k, t) if self.width_bound is None else self.width_bound

    def h(self, k: int, t: int) -> int:
        return exact_wc_size(k, t) if self.wc_size is None else self.wc_size

    def p(self, k: int) -> int:
        return exact_cut_budget(k) if self.cut_budget is None else self.cut_budget

    def deletion_permitted(self, n: int) -> bool:
        if self.irrelevant_policy == "exact-constants-only":
            return self.constants_exact
        if self.irrelevant_policy == "verified-against-oracle":
            return n <= self.oracle_max_vertices
        return False


class Diagnostics:
    """Collects one record per solver phase; optionally streams them as JSON lines."""

    def __init__(self, sink: Optional[Callable[[str], None]] = None):
        self.records: list[dict] = []
        self.sink = sink

    def emit(self, phase: str, **fields):
        rec = {"phase": phase, **fields}
        self.records.append(rec)
        if self.sink is not None:
            self.sink(json.dumps(rec, sort_keys=True, default=_jsonable))

    def count(self, phase: str) -> int:
        return sum(1 for r in self.records if r["phase"] == phase)

    @classmethod
    def to_stderr(cls):
        return cls(lambda line: print(line, file=sys.stderr))


def _jsonable(obj):
    if isinstance(obj, (set, frozenset, tuple)):
        return sorted(obj)
    return str(obj)


_NULL = Diagnostics()


# -- extension layer -------------------------------------------------------


def find_irrelevant_edge(
    g: Graph,
    candidate: WellConnectedCandidate,
    t1,
    t2,
    k: int,
    cfg: SolverConfig,
    diag: Diagnostics = _NULL,
) -> Edge:
    """An edge whose deletion keeps the cheapest extension cost.

    Computes Z for the candidate, splits the candidate into equal halves
    with every Z vertex in the second half, routes vertex-disjoint paths
    between the halves and returns the first path edge with both endpoints
    outside Z. Under the oracle-verified policy each such edge is also
    checked by brute force before it is returned.
    """
    if cfg.irrelevant_policy == "disabled":
        raise PreconditionError("irrelevant-edge deletion is disabled")
    t1, t2 = frozenset(t1), frozenset(t2)
    zd = compute_z_details(g, candidate.members, t1, t2, k, cfg.p(k))
    z = zd.members
    ys = sorted(candidate.members)
    in_z = [v for v in ys if v in z]
    out_z = [v for v in ys if v not in z]
    if 2 * len(in_z) > len(ys):
        raise IrrelevantEdgeNotFound(
            f"Z covers {len(in_z)} of {len(ys)} candidate vertices; no balanced split exists"
        )
    random.Random(cfg.seed).shuffle(out_z)
    half = len(ys) // 2
    fill = half - len(in_z)
    y2 = frozenset(in_z + out_z[:fill])
    y1 = frozenset(out_z[fill:fill + half])
    flow = candidate.verify_partition(g, y1, y2)
    bound = zd.cut_budget * (len(t1) + len(t2)) * max(len(zd.sets), 1)
    diag.emit(
        "irrelevant-search", z_size=len(z), z_in_candidate=len(in_z), candidate=len(ys),
        paths=flow.value, z_boundary=zd.augmented.boundary_size(z), z_boundary_bound=bound,
    )
    verify = cfg.irrelevant_policy == "verified-against-oracle"
    before = None
    rejected = 0
    for path in flow.paths:
        u, v = path[0], path[1]
        assert u in y1 and u not in z
        if v in z:
            continue
        e = (min(u, v), max(u, v))
        if verify:
            if before is None:
                before = brute_force_coloring(g, (t1, t2), cfg.work_limit)[1]
            after = brute_force_coloring(delete_edge(g, e), (t1, t2), cfg.work_limit)[1]
            if after != before:
                rejected += 1
                continue
        diag.emit("irrelevant-edge", edge=e, oracle_checked=verify, rejected=rejected)
        return e
    raise IrrelevantEdgeNotFound(
        f"no path edge with both endpoints outside Z ({rejected} rejected by the oracle)"
    )


def _exact_fallback(g: Graph, k: int, t1, t2, cfg: SolverConfig, diag: Diagnostics, why: str):
    """Cheapest extension of ``g`` by wide DP or by enumeration, or ``None`` above ``k``."""
    td = min(
        (heuristic_decomposition(g, s) for s in ("min-degree", "min-fill")),
        key=lambda d: d.width,
    )
    if td.width <= cfg.dp_width_limit:
        diag.emit("fallback", reason=why, method="dp", width=td.width)
        inst = ExtensionInstance(g, k, t1, t2, check_bipartite=False)
        return solve_extension_dp(inst, to_nice(td, g), cfg.work_limit)
    diag.emit("fallback", reason=why, method="oracle", width=td.width, n=g.n)
    phi, cost = brute_force_coloring(g, (t1, t2), cfg.work_limit)
    return phi if cost <= k else None


def _solve_connected_extension(g, k, t1, t2, cfg, diag):
    if not t1 and not t2:
        return is_bipartite(g)
    t = len(t1) + len(t2)
    current = g
    deleted = []
    while True:
        try:
            res = decomposition_or_wellconnected(current, cfg.w(k, t), cfg.h(k, t))
        except DichotomyFailure as exc:
            return _exact_fallback(g, k, t1, t2, cfg, diag, f"dichotomy: {exc}")
        if isinstance(res, TreeDecomposition):
            diag.emit("extension", branch="decomposition", n=current.n, m=current.m,
                      width=res.width, deletions=len(deleted), k=k, t=t)
            psi = solve_extension_dp(
                ExtensionInstance(current, k, t1, t2, check_bipartite=False),
                to_nice(res, current),
                cfg.work_limit,
            )
            if psi is None or not deleted:
                return psi
            if analyze(g, psi).cost > analyze(current, psi).cost:
                # The reduced optimum is right but this coloring is not optimal on g.
                return _exact_fallback(g, k, t1, t2, cfg, diag, "lift lost optimality")
            return psi
        diag.emit("extension", branch="candidate", n=current.n, m=current.m,
                  candidate=len(res.members), k=k, t=t)
        if not cfg.deletion_permitted(current.n):
            return _exact_fallback(g, k, t1, t2, cfg, diag, "deletion not permitted")
        try:
            e = find_irrelevant_edge(current, res, t1, t2, k, cfg, diag)
        except (CandidateInvalidError, IrrelevantEdgeNotFound) as exc:
            return _exact_fallback(g, k, t1, t2, cfg, diag, type(exc).__name__)
        current = delete_edge(current, e)
        deleted.append(e)


def solve_extension(
    inst: ExtensionInstance, cfg: Optional[SolverConfig] = None, diag: Diagnostics = _NULL
) -> Optional[dict[int, int]]:
    """Cheapest (T1, T2)-extension of cost at most ``inst.k``, or ``None``.

    Components are solved separately. Each one gets the budget left over
    by the components before it, which is exact because every component
    returns a cheapest extension.
    """
    cfg = cfg or SolverConfig()
    g = inst.graph
    phi: dict[int, int] = {}
    spent = 0
    for comp in connected_components(g):
        sub = g.subgraph(comp)
        c1, c2 = inst.t1 & comp, inst.t2 & comp
        psi = _solve_connected_extension(sub, inst.k - spent, c1, c2, cfg, diag)
        if psi is None:
            return None
        spent += analyze(sub, psi).cost
        phi.update(psi)
    if spent > inst.k:
        return None
    assert is_extension(phi, inst.t1, inst.t2)
    return phi


# -- compression -----------------------------------------------------------


@dataclass(frozen=True)
class CheaperInstance:
    graph: Graph
    k: int
    phi: dict = field(hash=False)

    def __post_init__(self):
        cost = analyze(self.graph, self.phi).cost
        if cost != self.k + 1:
            raise PreconditionError(f"coloring has cost {cost}, expected k + 1 = {self.k + 1}")


def _partition_instance(g, k, phi, bad, xs, code):
    x2 = {v for i, v in enumerate(xs) if code >> i & 1}
    within = [e for e in bad if (e[0] in x2) == (e[1] in x2)]
    cross = [e for e in bad if (e[0] in x2) != (e[1] in x2)]
    h, trace = contract_edges(g, within)
    kp = k - len(trace.merges)
    if kp < 0:
        return None
    h = Graph._trusted(h.vertices, h.edges - trace.map_edges(cross))
    t1 = frozenset(trace.image(v) for v in xs if v not in x2)
    t2 = frozenset(trace.image(v) for v in x2)
    inherited = {r: phi[r] for r in h.vertices}
    assert analyze(h, inherited).cost == 0, "residual graph must be properly colored by phi"
    return ExtensionInstance(h, kp, t1, t2), trace


def solve_cheaper_coloring(
    inst: CheaperInstance, cfg: Optional[SolverConfig] = None, diag: Diagnostics = _NULL
) -> Optional[dict[int, int]]:
    """Coloring of cost at most ``k`` given one of cost ``k + 1``, or ``None``.

    Every split of the bad-edge endpoints into color classes is tried in
    increasing binary encoding (bit ``i`` set puts the ``i``-th endpoint in
    class 2). Swapping both classes gives an equivalent instance, so the
    first endpoint is always kept in class 1. The first split whose
    extension instance is solvable wins.
    """
    cfg = cfg or SolverConfig()
    g, k, phi = inst.graph, inst.k, inst.phi
    bad = sorted(analyze(g, phi).bad_edges)
    xs = sorted({v for e in bad for v in e})
    codes = range(0, 1 << max(len(xs) - 1, 0), 1)
    codes = [c << 1 for c in codes]
    discarded = 0

    def attempt(code):
        built = _partition_instance(g, k, phi, bad, xs, code)
        if built is None:
            return "discarded"
        ext, trace = built
        psi = solve_extension(ext, cfg, diag)
        if psi is None:
            return None
        theta = {v: psi[trace.image(v)] for v in g.vertices}
        assert analyze(g, theta).cost <= k
        return theta

    result = None
    tried = 0
    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            outcomes = list(pool.map(attempt, codes))
        tried = len(outcomes)
        discarded = sum(1 for o in outcomes if o == "discarded")
        result = next((o for o in outcomes if isinstance(o, dict)), None)
    else:
        for code in codes:
            tried += 1
            out = attempt(code)
            if out == "discarded":
                discarded += 1
            elif out is not None:
                result = out
                break
    diag.emit("cheaper", n=g.n, m=g.m, k=k, endpoints=len(xs), partitions=len(codes),
              tried=tried, discarded=discarded, found=result is not None)
    return result


def _initial_coloring(g: Graph) -> dict[int, int]:
    # Breadth-first parity: spanning-forest edges are never bad.
    color: dict[int, int] = {}
    for s in g.sorted_vertices():
        if s in color:
            continue
        color[s] = 1
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in sorted(g.neighbors(u)):
                    if w not in color:
                        color[w] = 3 - color[u]
                        nxt.append(w)
            frontier = nxt
    return color


def solve_cheap_coloring(
    g: Graph, k: int, cfg: Optional[SolverConfig] = None, diag: Diagnostics = _NULL
) -> Optional[dict[int, int]]:
    """2-coloring of cost at most ``k`` by iterative compression, or ``None``.

    All vertices are present from the start and edges arrive in sorted
    order. ``None`` is returned as soon as one compression step fails,
    since deleting edges never raises the cheapest cost.
    """
    cfg = cfg or SolverConfig()
    if k < 0:
        return None
    phi = _initial_coloring(g)
    current = Graph(g.vertices, ())
    for u, v in g.sorted_edges():
        current = current.with_edge(u, v)
        if phi[u] != phi[v]:
            continue
        cost = analyze(current, phi).cost
        if cost <= k:
            continue
        phi = solve_cheaper_coloring(CheaperInstance(current, k, phi), cfg, diag)
        if phi is None:
            return None
    assert analyze(g, phi).cost <= k
    return phi


# -- top level -------------------------------------------------------------


@dataclass(frozen=True)
class Solution:
    witness: frozenset[Edge]
    coloring: dict
    cost: int


def solve(
    g: Graph, k: int, cfg: Optional[SolverConfig] = None, diag: Diagnostics = _NULL
) -> Optional[Solution]:
    """Witness contraction set of size at most ``k`` plus its cheap coloring, or ``None``.

    Components are handled independently; each takes the smallest budget
    that works for it, tried upwards from 1.
    """
    cfg = cfg or SolverConfig()
    if k < 0:
        return None
    phi: dict[int, int] = {}
    remaining = k
    for comp in connected_components(g):
        sub = g.subgraph(comp)
        proper = is_bipartite(sub)
        if proper is not None:
            phi.update(proper)
            continue
        found = None
        for budget in range(1, remaining + 1):
            found = solve_cheap_coloring(sub, budget, cfg, diag)
            if found is not None:
                break
        if found is None:
            diag.emit("component", vertices=len(comp), result="infeasible", budget=remaining)
            return None
        cost = analyze(sub, found).cost
        diag.emit("component", vertices=len(comp), result="feasible", cost=cost)
        remaining -= cost
        phi.update(found)
    s = coloring_to_contraction_set(g, phi)
    h, _ = contract_edges(g, s)
    if len(s) > k or is_bipartite(h) is None:
        raise AssertionError("solver produced an invalid witness")
    return Solution(s, phi, len(s))


def solve_bipartite_contraction(
    g: Graph, k: int, cfg: Optional[SolverConfig] = None, diag: Diagnostics = _NULL
) -> Optional[frozenset[Edge]]:
    """At most ``k`` edges whose contraction makes ``g`` bipartite, or ``None``."""
    sol = solve(g, k, cfg, diag)
    return None if sol is None else sol.witness


__all__ = [
    "CheaperInstance",
    "Diagnostics",
    "ResourceError",
    "Solution",
    "SolverConfig",
    "find_irrelevant_edge",
    "exact_cut_budget",
    "exact_wc_size",
    "exact_width_bound",
    "solve",
    "solve_bipartite_contraction",
    "solve_cheap_coloring",
    "solve_cheaper_coloring",
    "solve_extension",
]
