"""Simple undirected graphs with contraction, deletion and edge-list I/O.

Vertex ids are opaque integers that survive deletions and contractions.
A :class:`Graph` is immutable; every operation returns a new value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import GraphParseError, InvalidEdgeError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """A finite simple undirected graph.

    Parameters:
        vertices: Vertex ids. Endpoints of ``edges`` are added automatically.
        edges: Iterable of vertex pairs. Loops and repeated pairs raise
            ``ValueError``; the edge set of a graph is a set.
        labels: Optional per-vertex text labels.
    """

    __slots__ = ("_vertices", "_edges", "_adj", "labels")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[tuple[int, int]] = (),
        labels: Optional[Mapping[int, str]] = None,
    ):
        vs = set(vertices)
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            e = norm_edge(u, v)
            if e in es:
                raise ValueError(f"duplicate edge {e}")
            es.add(e)
            vs.add(u)
            vs.add(v)
        self._vertices = frozenset(vs)
        self._edges = frozenset(es)
        self._adj = None
        self.labels = dict(labels) if labels else {}

    @classmethod
    def _trusted(cls, vertices, edges) -> "Graph":
        # Skips validation; callers guarantee normalized, loop-free edges.
        g = cls.__new__(cls)
        g._vertices = frozenset(vertices)
        g._edges = frozenset(edges)
        g._adj = None
        g.labels = {}
        return g

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def _adjacency(self) -> dict[int, frozenset[int]]:
        if self._adj is None:
            adj: dict[int, set[int]] = {v: set() for v in self._vertices}
            for u, v in self._edges:
                adj[u].add(v)
                adj[v].add(u)
            self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        return self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adjacency()[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency()[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self._edges

    def sorted_vertices(self) -> list[int]:
        return sorted(self._vertices)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        return Graph._trusted(self._vertices | {u, v}, self._edges | {norm_edge(u, v)})

    def with_vertex(self, v: int, neighbors: Iterable[int] = ()) -> "Graph":
        new = {norm_edge(v, w) for w in neighbors}
        return Graph._trusted(self._vertices | {v}, self._edges | new)

    def subgraph(self, keep: Iterable[int]) -> "Graph":
        keep = frozenset(keep) & self._vertices
        return Graph._trusted(keep, (e for e in self._edges if e[0] in keep and e[1] in keep))

    def boundary(self, vs: Iterable[int]) -> list[Edge]:
        """Edges with exactly one endpoint in ``vs``."""
        vs = set(vs)
        return [e for e in self._edges if (e[0] in vs) != (e[1] in vs)]

    def boundary_size(self, vs: Iterable[int]) -> int:
        vs = set(vs)
        return sum(1 for u, v in self._edges if (u in vs) != (v in vs))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def delete_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Return ``g - e``. Vertices are kept."""
    ne = norm_edge(*e)
    if ne not in g.edges:
        raise InvalidEdgeError(f"edge {e} not in graph")
    return Graph._trusted(g.vertices, g.edges - {ne})


class _UnionFind:
    # Smallest id is always the root, so contraction survivors are deterministic.
    def __init__(self, items):
        self.parent = {v: v for v in items}

    def find(self, v):
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, u, v):
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return None
        if rv < ru:
            ru, rv = rv, ru
        self.parent[rv] = ru
        return ru, rv


@dataclass(frozen=True)
class ContractionTrace:
    """Record of a contraction.

    ``merges`` lists (survivor, absorbed) pairs in the order unions happened.
    ``origin`` maps each vertex of the contracted graph to the set of
    original vertices it stands for.
    """

    merges: tuple[tuple[int, int], ...]
    origin: Mapping[int, frozenset[int]]
    _image: Mapping[int, int] = field(repr=False, compare=False, default_factory=dict)

    def image(self, v: int) -> int:
        """Vertex of the contracted graph that original vertex ``v`` became."""
        return self._image[v]

    def map_edges(self, edges: Iterable[tuple[int, int]]) -> set[Edge]:
        """Images of ``edges``; edges that collapsed to a loop are dropped."""
        out = set()
        for u, v in edges:
            a, b = self._image[u], self._image[v]
            if a != b:
                out.add(norm_edge(a, b))
        return out


def contract_edges(g: Graph, s: Iterable[tuple[int, int]]) -> tuple[Graph, ContractionTrace]:
    """Contract every edge of ``s`` in ``g``.

    The survivor of each merge is the smaller id. Loops are dropped and
    parallel edges merged, so the result is simple.
    """
    s = sorted({norm_edge(*e) for e in s})
    for e in s:
        if e not in g.edges:
            raise InvalidEdgeError(f"edge {e} not in graph")
    uf = _UnionFind(g.vertices)
    merges = []
    for u, v in s:
        m = uf.union(u, v)
        if m is not None:
            merges.append(m)
    image = {v: uf.find(v) for v in g.vertices}
    origin: dict[int, set[int]] = {}
    for v, r in image.items():
        origin.setdefault(r, set()).add(v)
    new_edges = set()
    for u, v in g.edges:
        a, b = image[u], image[v]
        if a != b:
            new_edges.add(norm_edge(a, b))
    trace = ContractionTrace(
        merges=tuple(merges),
        origin={r: frozenset(vs) for r, vs in origin.items()},
        _image=image,
    )
    return Graph._trusted(origin.keys(), new_edges), trace


def is_bipartite(g: Graph) -> Optional[dict[int, int]]:
    """Proper 2-coloring by breadth-first layering, or ``None`` on an odd cycle.

    Each component's smallest vertex gets color 1.
    """
    color: dict[int, int] = {}
    for s in g.sorted_vertices():
        if s in color:
            continue
        color[s] = 1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            cu = color[u]
            for w in g.neighbors(u):
                cw = color.get(w)
                if cw is None:
                    color[w] = 3 - cu
                    queue.append(w)
                elif cw == cu:
                    return None
    return color


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the components, ordered by smallest member."""
    seen: set[int] = set()
    comps = []
    for s in g.sorted_vertices():
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected_set(g: Graph, vs: Iterable[int]) -> bool:
    """True when ``g[vs]`` is connected (the empty set counts as not connected)."""
    vs = set(vs)
    if not vs:
        return False
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vs)


def canonical_form(g: Graph) -> tuple[int, tuple[Edge, ...]]:
    """Relabel by breadth-first discovery order and return (n, sorted edges).

    Components are visited from their smallest id and neighbors in id
    order. This is not an isomorphism invariant; it compares graphs that
    differ only by an order-preserving renaming, such as contraction results.
    """
    label: dict[int, int] = {}
    for s in g.sorted_vertices():
        if s in label:
            continue
        label[s] = len(label)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(g.neighbors(u)):
                if w not in label:
                    label[w] = len(label)
                    queue.append(w)
    return g.n, tuple(sorted(norm_edge(label[u], label[v]) for u, v in g.edges))


# -- edge-list format ------------------------------------------------------


@dataclass
class Instance:
    """A parsed graph file: the graph plus optional terminal sets."""

    graph: Graph
    t1: frozenset[int] = frozenset()
    t2: frozenset[int] = frozenset()


def parse_instance(text: str) -> Instance:
    n = m = None
    edges: list[Edge] = []
    seen: dict[Edge, int] = {}
    t1: set[int] = set()
    t2: set[int] = set()

    def vertex(tok, lineno):
        try:
            v = int(tok)
        except ValueError:
            raise GraphParseError(f"vertex id {tok!r} is not an integer", lineno) from None
        if not 1 <= v <= n:
            raise GraphParseError(f"vertex id {v} out of range 1..{n}", lineno)
        return v

    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphParseError("second header line", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphParseError("malformed header, expected 'p edge <n> <m>'", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError("malformed header counts", lineno) from None
            if n < 0 or m < 0:
                raise GraphParseError("negative header counts", lineno)
            continue
        if n is None:
            raise GraphParseError(f"{tag!r} line before header", lineno)
        if tag == "e":
            if len(parts) != 3:
                raise GraphParseError("edge line needs exactly two vertex ids", lineno)
            u, v = vertex(parts[1], lineno), vertex(parts[2], lineno)
            if u == v:
                raise GraphParseError(f"loop at vertex {u}", lineno)
            e = norm_edge(u, v)
            if e in seen:
                raise GraphParseError(f"duplicate edge {u} {v} (first on line {seen[e]})", lineno)
            seen[e] = lineno
            edges.append(e)
        elif tag in ("t1", "t2"):
            if len(parts) != 2:
                raise GraphParseError("terminal line needs one vertex id", lineno)
            (t1 if tag == "t1" else t2).add(vertex(parts[1], lineno))
        else:
            raise GraphParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise GraphParseError("missing 'p edge' header")
    if len(edges) != m:
        raise GraphParseError(f"header announces {m} edges, found {len(edges)}")
    if t1 & t2:
        raise GraphParseError(f"vertices {sorted(t1 & t2)} are in both t1 and t2")
    return Instance(Graph(range(1, n + 1), edges), frozenset(t1), frozenset(t2))


def parse_graph(text: str) -> Graph:
    return parse_instance(text).graph


def serialize_graph(
    g: Graph,
    t1: Iterable[int] = (),
    t2: Iterable[int] = (),
    comments: Iterable[str] = (),
) -> str:
    """Write ``g`` in edge-list format.

    Vertices are renumbered 1..n in increasing id order, so graphs whose ids
    are already 1..n round-trip unchanged.
    """
    order = g.sorted_vertices()
    label = {v: i for i, v in enumerate(order, start=1)}
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {a} {b}" for a, b in sorted(norm_edge(label[u], label[v]) for u, v in g.edges))
    lines.extend(f"t1 {label[v]}" for v in sorted(t1))
    lines.extend(f"t2 {label[v]}" for v in sorted(t2))
    return "\n".join(lines) + "\n"


def read_graph_file(path) -> Instance:
    with open(path) as fh:
        return parse_instance(fh.read())
