"""2-colorings, their cost, and conversion to and from contraction sets.

A coloring is a plain mapping ``vertex -> color`` with colors 1 and 2. It
must cover exactly the vertex set of the graph it is applied to.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InvalidColoringError, PreconditionError
from .graph import Edge, Graph, contract_edges, is_bipartite, norm_edge

TwoColoring = Mapping[int, int]


@dataclass(frozen=True)
class ColoringAnalysis:
    bad_edges: frozenset[Edge]
    good_components: list[frozenset[int]]
    monochromatic_components: list[frozenset[int]]
    cost: int


def check_coloring(g: Graph, phi: TwoColoring) -> None:
    if len(phi) != g.n or any(v not in phi for v in g.vertices):
        missing = sorted(g.vertices - phi.keys())
        extra = sorted(phi.keys() - g.vertices)
        raise InvalidColoringError(
            f"coloring does not match vertex set (missing {missing[:5]}, extra {extra[:5]})"
        )
    for v, c in phi.items():
        if c != 1 and c != 2:
            raise InvalidColoringError(f"vertex {v} has color {c!r}; colors are 1 and 2")


def _components(vertices, adj) -> list[frozenset[int]]:
    seen = set()
    out = []
    for s in sorted(vertices):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def analyze(g: Graph, phi: TwoColoring) -> ColoringAnalysis:
    """Bad edges, good and monochromatic components, and cost of ``phi``."""
    check_coloring(g, phi)
    bad_adj = {v: [] for v in g.vertices}
    good_adj = {v: [] for v in g.vertices}
    bad = []
    for u, v in g.edges:
        if phi[u] == phi[v]:
            bad.append((u, v))
            bad_adj[u].append(v)
            bad_adj[v].append(u)
        else:
            good_adj[u].append(v)
            good_adj[v].append(u)
    mono = _components(g.vertices, bad_adj)
    cost = sum(len(x) - 1 for x in mono)
    assert cost == g.n - len(mono)
    return ColoringAnalysis(
        bad_edges=frozenset(bad),
        good_components=_components(g.vertices, good_adj),
        monochromatic_components=mono,
        cost=cost,
    )


def coloring_cost(g: Graph, phi: TwoColoring) -> int:
    return analyze(g, phi).cost


def coloring_to_contraction_set(g: Graph, phi: TwoColoring) -> frozenset[Edge]:
    """Spanning-tree edges of every monochromatic component.

    The result has exactly ``cost(phi)`` edges and ``g / result`` is bipartite.
    """
    check_coloring(g, phi)
    s = set()
    seen = set()
    for root in g.sorted_vertices():
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        while stack:
            u = stack.pop()
            for w in sorted(g.neighbors(u)):
                if w not in seen and phi[w] == phi[u]:
                    seen.add(w)
                    s.add(norm_edge(u, w))
                    stack.append(w)
    return frozenset(s)


def contraction_set_to_coloring(g: Graph, s: Iterable[tuple[int, int]]) -> dict[int, int]:
    """Lift a proper coloring of ``g / s`` back to ``g``.

    Every component of ``(V(g), s)`` ends up monochromatic, so the cost of
    the result is at most ``|s|``.
    """
    h, trace = contract_edges(g, s)
    proper = is_bipartite(h)
    if proper is None:
        raise PreconditionError("contracted graph is not bipartite")
    return {v: proper[trace.image(v)] for v in g.vertices}


def is_extension(phi: TwoColoring, t1: Iterable[int], t2: Iterable[int]) -> bool:
    return all(phi[v] == 1 for v in t1) and all(phi[v] == 2 for v in t2)


def parse_coloring(text: str) -> dict[int, int]:
    """Read ``<vertex-id> <color>`` lines; ``c`` lines are comments."""
    phi = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if len(parts) != 2:
            raise InvalidColoringError(f"line {lineno}: expected '<vertex> <color>'")
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidColoringError(f"line {lineno}: non-integer field") from None
        if v in phi:
            raise InvalidColoringError(f"line {lineno}: vertex {v} colored twice")
        phi[v] = c
    return phi


def serialize_coloring(phi: TwoColoring) -> str:
    return "".join(f"{v} {phi[v]}\n" for v in sorted(phi))
