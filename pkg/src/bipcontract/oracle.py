"""Exhaustive ground-truth solvers and instance generators.

Everything here is deliberately naive. The solvers enumerate, the
generators are deterministic, and each brute-force answer is re-verified
through the public graph operations before it is returned.
"""

from __future__ import annotations

import random
from math import comb
from typing import Iterable, Optional

from . import kernels
from .coloring import analyze
from .errors import BudgetExceededError, InvalidTerminalsError
from .graph import Edge, Graph, contract_edges, delete_edge, is_bipartite

DEFAULT_WORK_LIMIT = 10**8


def _indexed(g: Graph):
    order = g.sorted_vertices()
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for u, v in g.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    return order, index, adj


def _subset_work(g: Graph, k: int) -> int:
    per = g.n + g.m + 1
    return sum(comb(g.m, i) for i in range(min(k, g.m) + 1)) * per


def brute_force_contraction(
    g: Graph, k: int, work_limit: int = DEFAULT_WORK_LIMIT
) -> Optional[frozenset[Edge]]:
    """Smallest edge set of size at most ``k`` whose contraction is bipartite.

    Subsets are tried by size, then in lexicographic order of the sorted
    edge list, so the witness is deterministic. Returns ``None`` when no
    such set exists.
    """
    if k < 0:
        return None
    work = _subset_work(g, k)
    if work > work_limit:
        raise BudgetExceededError(work_limit, "contraction enumeration")
    order, index, _ = _indexed(g)
    edges = g.sorted_edges()
    eu = [index[u] for u, _ in edges]
    ev = [index[v] for _, v in edges]
    combo = kernels.min_contraction_subset(g.n, eu, ev, k)
    if combo is None:
        return None
    s = frozenset(edges[i] for i in combo)
    h, _ = contract_edges(g, s)
    assert is_bipartite(h) is not None, "kernel returned a non-bipartizing set"
    return s


def brute_force_edge_bipartization(
    g: Graph, k: int, work_limit: int = DEFAULT_WORK_LIMIT
) -> Optional[frozenset[Edge]]:
    """Smallest edge set of size at most ``k`` whose deletion leaves ``g`` bipartite."""
    if k < 0:
        return None
    if _subset_work(g, k) > work_limit:
        raise BudgetExceededError(work_limit, "deletion enumeration")
    order, index, _ = _indexed(g)
    edges = g.sorted_edges()
    combo = kernels.min_deletion_subset(
        g.n, [index[u] for u, _ in edges], [index[v] for _, v in edges], k
    )
    if combo is None:
        return None
    s = frozenset(edges[i] for i in combo)
    h = g
    for e in s:
        h = delete_edge(h, e)
    assert is_bipartite(h) is not None
    return s


def brute_force_coloring(
    g: Graph,
    fixed: Optional[tuple[Iterable[int], Iterable[int]]] = None,
    work_limit: int = DEFAULT_WORK_LIMIT,
) -> tuple[dict[int, int], int]:
    """Minimum-cost 2-coloring, optionally with ``fixed = (T1, T2)`` forced colors.

    Without terminals the smallest vertex is pinned to color 1, since
    swapping colors preserves cost.
    """
    t1, t2 = (set(fixed[0]), set(fixed[1])) if fixed else (set(), set())
    if t1 & t2:
        raise InvalidTerminalsError(f"vertices {sorted(t1 & t2)} are in both T1 and T2")
    if not (t1 | t2) <= g.vertices:
        raise InvalidTerminalsError("terminal outside the graph")
    free = g.n - len(t1 | t2) - (0 if (t1 or t2 or g.n == 0) else 1)
    if (1 << free) * max(g.n, 1) > work_limit:
        raise BudgetExceededError(work_limit, "coloring enumeration")
    order, index, adj = _indexed(g)
    f1 = sum(1 << index[v] for v in t1)
    f2 = sum(1 << index[v] for v in t2)
    cost, mask = kernels.min_coloring_cost(adj, g.n, f1, f2)
    phi = {v: 2 if mask >> i & 1 else 1 for i, v in enumerate(order)}
    assert analyze(g, phi).cost == cost
    return phi, cost


def important_sets_oracle(g: Graph, x: int, y: int, p: int) -> list[frozenset[int]]:
    """The (x, y)-important sets with edge boundary at most ``p``, by enumeration.

    Candidates are all connected sets containing ``x`` and avoiding ``y``.
    A candidate is dropped if some strictly larger candidate has boundary no
    larger than its own. Only candidates within budget ``p`` can dominate a
    candidate within budget, so the filter runs on those alone.
    """
    if x == y:
        raise InvalidTerminalsError("x and y must differ")
    if x not in g.vertices or y not in g.vertices:
        raise InvalidTerminalsError("x and y must be vertices of the graph")
    if p < 0:
        return []
    order, index, adj = _indexed(g)
    cands = kernels.connected_sets(adj, g.n, index[x], index[y], p)
    result = []
    for s, d in cands:
        dominated = any(t != s and t & s == s and dt <= d for t, dt in cands)
        if not dominated:
            result.append(frozenset(order[i] for i in range(g.n) if s >> i & 1))
    return sorted(result, key=lambda xs: sorted(xs))


def reduce_edge_bipartization(g: Graph, k: int) -> tuple[Graph, int]:
    """Replace every edge by a path with ``2k + 3`` edges.

    New internal vertices get ids above the current maximum, allocated in
    sorted-edge order. The budget is unchanged.
    """
    length = 2 * k + 3
    nxt = max(g.vertices, default=0) + 1
    vertices = set(g.vertices)
    edges = []
    for u, v in g.sorted_edges():
        prev = u
        for _ in range(length - 1):
            vertices.add(nxt)
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph(vertices, edges), k


# -- generators ------------------------------------------------------------
# Vertices are numbered 1..n.


def gen_path(n: int) -> Graph:
    return Graph(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a simple cycle needs at least 3 vertices")
    return Graph(range(1, n + 1), [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def gen_complete(n: int) -> Graph:
    return Graph(range(1, n + 1), [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def gen_complete_bipartite(a: int, b: int) -> Graph:
    """Sides are ``1..a`` and ``a+1..a+b``."""
    return Graph(
        range(1, a + b + 1),
        [(i, j) for i in range(1, a + 1) for j in range(a + 1, a + b + 1)],
    )


def gen_star(leaves: int) -> Graph:
    """Center 1, leaves ``2..leaves+1``."""
    return Graph(range(1, leaves + 2), [(1, i) for i in range(2, leaves + 2)])


def gen_grid(rows: int, cols: int) -> Graph:
    """Vertex ``r * cols + c + 1`` sits at row ``r``, column ``c``."""
    def vid(r, c):
        return r * cols + c + 1

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return Graph(range(1, rows * cols + 1), edges)


def gen_petersen() -> Graph:
    """Outer 5-cycle on 1..5, inner pentagram on 6..10, spokes i -- i+5."""
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    return Graph(range(1, 11), outer + inner + spokes)


def gen_random(n: int, p: float, seed: int) -> Graph:
    """G(n, p): pairs ``i < j`` are visited in lexicographic order."""
    rng = random.Random(seed)
    edges = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if rng.random() < p
    ]
    return Graph(range(1, n + 1), edges)


def gen_random_bipartite(a: int, b: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [
        (i, j)
        for i in range(1, a + 1)
        for j in range(a + 1, a + b + 1)
        if rng.random() < p
    ]
    return Graph(range(1, a + b + 1), edges)


GENERATORS = {
    "path": gen_path,
    "cycle": gen_cycle,
    "complete": gen_complete,
    "bipartite": gen_complete_bipartite,
    "star": gen_star,
    "grid": gen_grid,
    "petersen": gen_petersen,
    "random": gen_random,
}

