"""Disjoint paths, important sets, and the protected vertex set Z.

Boundaries are edge boundaries throughout: ``d(X)`` counts edges with
exactly one endpoint in ``X``. Vertex-disjointness is only used by
:func:`max_disjoint_paths` in ``"vertex"`` mode.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InvalidTerminalsError
from .graph import Graph, is_connected_set, norm_edge

_INF = float("inf")


class _FlowNetwork:
    """Residual network with integer capacities and BFS augmentation."""

    def __init__(self):
        self.cap: dict = {}

    def add_arc(self, a, b, c):
        self.cap.setdefault(a, {})
        self.cap.setdefault(b, {})
        self.cap[a][b] = self.cap[a].get(b, 0) + c
        self.cap[b].setdefault(a, 0)

    def max_flow(self, s, t, limit=_INF):
        self.flow = {a: {b: 0 for b in nb} for a, nb in self.cap.items()}
        value = 0
        while value < limit:
            parent = {s: None}
            queue = deque([s])
            while queue and t not in parent:
                a = queue.popleft()
                for b, c in self.cap[a].items():
                    if b not in parent and c - self.flow[a][b] > 0:
                        parent[b] = a
                        queue.append(b)
            if t not in parent:
                break
            push = _INF
            b = t
            while parent[b] is not None:
                a = parent[b]
                push = min(push, self.cap[a][b] - self.flow[a][b])
                b = a
            push = min(push, limit - value)
            b = t
            while parent[b] is not None:
                a = parent[b]
                self.flow[a][b] += push
                self.flow[b][a] -= push
                b = a
            value += push
        return value

    def reachable(self, s):
        seen = {s}
        stack = [s]
        while stack:
            a = stack.pop()
            for b, c in self.cap[a].items():
                if b not in seen and c - self.flow[a][b] > 0:
                    seen.add(b)
                    stack.append(b)
        return seen

    def coreachable(self, t):
        """Nodes that can still reach ``t`` in the residual network."""
        seen = {t}
        stack = [t]
        while stack:
            b = stack.pop()
            for a in self.cap[b]:
                if a not in seen and self.cap[a][b] - self.flow[a][b] > 0:
                    seen.add(a)
                    stack.append(a)
        return seen


@dataclass(frozen=True)
class FlowResult:
    """Maximum set of disjoint A-B paths with a matching minimum cut.

    ``cut`` holds vertices in vertex mode and edges in edge mode.
    """

    value: int
    paths: tuple[tuple[int, ...], ...]
    cut: frozenset
    mode: str


_SRC, _SNK = ("src",), ("snk",)


def max_disjoint_paths(
    g: Graph, a: Iterable[int], b: Iterable[int], mode: str = "vertex"
) -> FlowResult:
    """Maximum number of disjoint paths from ``a`` to ``b`` (Menger).

    In vertex mode paths are fully vertex-disjoint and a vertex in both
    sets is a length-0 path. In edge mode paths are edge-disjoint and the
    sets must not overlap, since no edge cut separates a shared vertex.
    """
    a, b = set(a), set(b)
    if not a or not b:
        raise ValueError("both endpoint sets must be nonempty")
    if not (a | b) <= g.vertices:
        raise ValueError("endpoint outside the graph")
    net = _FlowNetwork()
    if mode == "vertex":
        big = g.n + 1
        for v in g.vertices:
            net.add_arc(("in", v), ("out", v), 1)
        for u, v in g.edges:
            net.add_arc(("out", u), ("in", v), big)
            net.add_arc(("out", v), ("in", u), big)
        for v in a:
            net.add_arc(_SRC, ("in", v), big)
        for v in b:
            net.add_arc(("out", v), _SNK, big)
    elif mode == "edge":
        if a & b:
            raise ValueError("edge mode requires disjoint endpoint sets")
        big = g.m + 1
        for u, v in g.edges:
            net.add_arc(u, v, 1)
            net.add_arc(v, u, 1)
        for v in a:
            net.add_arc(_SRC, v, big)
        for v in b:
            net.add_arc(v, _SNK, big)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    value = net.max_flow(_SRC, _SNK)
    side = net.reachable(_SRC)
    if mode == "vertex":
        cut = frozenset(v for v in g.vertices if ("in", v) in side and ("out", v) not in side)
    else:
        cut = frozenset(norm_edge(u, v) for u, v in g.edges if (u in side) != (v in side))
    paths = _decompose(net, mode)
    assert value == len(paths) == len(cut)
    return FlowResult(value, tuple(paths), cut, mode)


def _decompose(net, mode):
    flow = {a: {b: f for b, f in nb.items() if f > 0} for a, nb in net.flow.items()}
    paths = []
    while flow[_SRC]:
        node = next(iter(flow[_SRC]))
        _take(flow, _SRC, node)
        walk = [node]
        while node != _SNK:
            nxt = next(iter(flow[node]))
            _take(flow, node, nxt)
            walk.append(nxt)
            node = nxt
        walk.pop()
        if mode == "vertex":
            path = [v for tag, v in walk if tag == "in"]
        else:
            path = _simplify(walk)
        paths.append(tuple(path))
    return paths


def _take(flow, a, b):
    flow[a][b] -= 1
    if flow[a][b] == 0:
        del flow[a][b]


def _simplify(walk):
    # Edge-mode walks may revisit a vertex; cut out the loops.
    out = []
    pos = {}
    for v in walk:
        if v in pos:
            for w in out[pos[v] + 1:]:
                del pos[w]
            del out[pos[v] + 1:]
        else:
            pos[v] = len(out)
            out.append(v)
    return out


# -- important sets --------------------------------------------------------


@dataclass(frozen=True)
class ImportantSet:
    members: frozenset[int]
    boundary: int
    anchor: tuple[int, int]

    def key(self):
        return tuple(sorted(self.members))


def _edge_flow(adj, sources, y, limit=_INF):
    """Max edge-disjoint flow from ``sources`` to ``y`` on adjacency ``adj``."""
    net = _FlowNetwork()
    for u, nb in adj.items():
        for v in nb:
            net.add_arc(u, v, 1)
    net.cap.setdefault(y, {})
    for s in sources:
        net.add_arc(_SRC, s, len(adj) * len(adj) + 1)
    value = net.max_flow(_SRC, y, limit)
    return value, net


def _furthest_side(adj, x, sources, y, limit=_INF):
    """Flow value and the x-component of the furthest minimum cut's source side.

    The furthest side is everything that can no longer reach ``y`` in the
    residual network. Returns ``(value, None)`` when the flow exceeds
    ``limit``.
    """
    value, net = _edge_flow(adj, sources, y, limit + 1 if limit != _INF else _INF)
    if value > limit:
        return value, None
    can_reach = net.coreachable(y)
    far = {v for v in adj if v not in can_reach}
    comp = {x}
    stack = [x]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in far and w not in comp:
                comp.add(w)
                stack.append(w)
    return value, frozenset(comp)


def _adjacency(g: Graph):
    return {v: set(g.neighbors(v)) for v in g.vertices}


def is_important(g: Graph, members: Iterable[int], x: int, y: int) -> bool:
    """Check the three defining properties of an (x, y)-important set directly.

    Maximality holds exactly when the edge boundary of ``members`` is a
    minimum cut towards ``y`` and the x-component of the furthest minimum
    cut's source side is ``members`` itself.
    """
    xs = frozenset(members)
    if x not in xs or y in xs or not is_connected_set(g, xs):
        return False
    d = g.boundary_size(xs)
    value, far = _furthest_side(_adjacency(g), x, xs, y)
    return value == d and far == xs


def enumerate_important_sets(g: Graph, x: int, y: int, p: int) -> list[ImportantSet]:
    """All (x, y)-important sets with edge boundary at most ``p``.

    Branching on important cuts: take the furthest minimum cut from the
    current source side, then for one boundary edge either delete it
    (spending one unit of budget) or pull its far endpoint into the source
    side (which raises the minimum cut). Each leaf yields a candidate;
    candidates are deduplicated and checked with :func:`is_important`.
    There are at most ``4**p`` results.
    """
    if x == y:
        raise InvalidTerminalsError("x and y must differ")
    if x not in g.vertices or y not in g.vertices:
        raise InvalidTerminalsError("x and y must be vertices of the graph")
    if p < 0:
        return []
    candidates: dict[tuple, frozenset[int]] = {}
    adj = _adjacency(g)
    # explicit stack of (deleted edges, source set, budget)
    stack = [(frozenset(), frozenset([x]), p)]
    while stack:
        deleted, sources, budget = stack.pop()
        cur = adj
        if deleted:
            cur = {v: set(nb) for v, nb in adj.items()}
            for u, v in deleted:
                cur[u].discard(v)
                cur[v].discard(u)
        value, side = _furthest_side(cur, x, sources, y, budget)
        if side is None:
            continue
        if value == 0:
            candidates.setdefault(tuple(sorted(side)), side)
            continue
        u, v = min(
            (a, b) for a in side for b in cur[a] if b not in side
        )
        if v != y:
            stack.append((deleted, side | {v}, budget))
        stack.append((deleted | {norm_edge(u, v)}, side, budget - 1))
    out = []
    for key in sorted(candidates):
        members = candidates[key]
        d = g.boundary_size(members)
        if d <= p and is_important(g, members, x, y):
            out.append(ImportantSet(members, d, (x, y)))
    assert len(out) <= 4**p
    return out


# -- the set Z -------------------------------------------------------------


def augmented_graph(g: Graph, y_set: Iterable[int]) -> tuple[Graph, int]:
    """``g`` plus a fresh vertex adjacent to every vertex of ``y_set``."""
    ystar = max(g.vertices, default=0) + 1
    return g.with_vertex(ystar, y_set), ystar


@dataclass(frozen=True)
class ZSet:
    members: frozenset[int]
    sets: tuple[ImportantSet, ...]
    augmented: Graph
    ystar: int
    cut_budget: int


def compute_z_details(
    g: Graph,
    y_set: Iterable[int],
    t1: Iterable[int],
    t2: Iterable[int],
    k: int,
    cut_budget: Optional[int] = None,
) -> ZSet:
    t1, t2 = set(t1), set(t2)
    if t1 & t2:
        raise InvalidTerminalsError(f"vertices {sorted(t1 & t2)} are in both T1 and T2")
    y_set = set(y_set)
    p = 4 * k * k if cut_budget is None else cut_budget
    gstar, ystar = augmented_graph(g, y_set)
    sets = []
    members: set[int] = set()
    for x in sorted(t1 | t2):
        for s in enumerate_important_sets(gstar, x, ystar, p):
            sets.append(s)
            members |= s.members
    members.discard(ystar)
    return ZSet(frozenset(members), tuple(sets), gstar, ystar, p)


def compute_z(
    g: Graph,
    y_set: Iterable[int],
    t1: Iterable[int],
    t2: Iterable[int],
    k: int,
    cut_budget: Optional[int] = None,
) -> frozenset[int]:
    """Union of all (x, y*)-important sets of boundary at most ``4k^2``.

    ``x`` ranges over the terminals and ``y*`` is a fresh vertex joined to
    every vertex of ``y_set``. ``cut_budget`` overrides ``4k^2``.
    """
    return compute_z_details(g, y_set, t1, t2, k, cut_budget).members
