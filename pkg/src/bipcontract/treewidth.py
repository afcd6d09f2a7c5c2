"""Tree decompositions: heuristics, validation, nice form, PACE I/O.

Also hosts the width-or-candidate dichotomy used by the extension solver.
The decomposition side uses elimination-ordering heuristics. The other side
returns a candidate vertex set that callers verify partition by partition
with flows before relying on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .errors import CandidateInvalidError, DecompositionError, DichotomyFailure
from .graph import Edge, Graph, connected_components, norm_edge
from .separators import FlowResult, max_disjoint_paths


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Mapping[int, frozenset[int]]
    tree: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def neighbors(self) -> dict[int, list[int]]:
        nb = {i: [] for i in self.bags}
        for a, b in self.tree:
            nb[a].append(b)
            nb[b].append(a)
        return nb


@dataclass(frozen=True)
class Violation:
    """First failed property of a tree decomposition, with a witness."""

    kind: str  # "not-a-tree" | "missing-vertex" | "uncovered-edge" | "disconnected-trace"
    witness: object

    def __str__(self):
        return f"{self.kind}: {self.witness}"


def validate_decomposition(g: Graph, td: TreeDecomposition) -> Optional[Violation]:
    """Return ``None`` for a valid decomposition of ``g``, else the first violation."""
    ids = set(td.bags)
    for a, b in td.tree:
        if a not in ids or b not in ids or a == b:
            return Violation("not-a-tree", (a, b))
    if ids:
        if len(td.tree) != len(ids) - 1 or len(set(map(frozenset, td.tree))) != len(td.tree):
            return Violation("not-a-tree", "edge count")
        nb = td.neighbors()
        start = min(ids)
        seen = {start}
        stack = [start]
        while stack:
            for j in nb[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        if seen != ids:
            return Violation("not-a-tree", "disconnected")
    covered = set().union(*td.bags.values()) if td.bags else set()
    for v in g.sorted_vertices():
        if v not in covered:
            return Violation("missing-vertex", v)
    for u, v in g.sorted_edges():
        if not any(u in b and v in b for b in td.bags.values()):
            return Violation("uncovered-edge", (u, v))
    nb = td.neighbors()
    for v in g.sorted_vertices():
        holding = {i for i, b in td.bags.items() if v in b}
        start = min(holding)
        seen = {start}
        stack = [start]
        while stack:
            for j in nb[stack.pop()]:
                if j in holding and j not in seen:
                    seen.add(j)
                    stack.append(j)
        if seen != holding:
            return Violation("disconnected-trace", v)
    return None


def elimination_ordering(g: Graph, strategy: str = "min-degree") -> list[int]:
    """Greedy elimination order; ties go to the lowest vertex id."""
    if strategy not in ("min-degree", "min-fill"):
        raise ValueError(f"unknown strategy {strategy!r}")
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    order = []
    while adj:
        if strategy == "min-degree":
            v = min(adj, key=lambda u: (len(adj[u]), u))
        else:
            v = min(adj, key=lambda u: (_fill_in(adj, u), u))
        nb = adj.pop(v)
        for a in nb:
            adj[a].discard(v)
            adj[a] |= nb - {a}
        order.append(v)
    return order


def _fill_in(adj, v):
    nb = sorted(adj[v])
    return sum(1 for i, a in enumerate(nb) for b in nb[i + 1:] if b not in adj[a])


def decomposition_from_ordering(g: Graph, order: list[int]) -> TreeDecomposition:
    """Bags ``{v} + later neighbors``; each bag hangs off its earliest-eliminated later neighbor."""
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    bags: dict[int, frozenset[int]] = {}
    parent: dict[int, Optional[int]] = {}
    for i, v in enumerate(order):
        later = {w for w in adj[v] if pos[w] > i}
        bags[i] = frozenset(later | {v})
        for a in later:
            adj[a] |= later - {a}
        parent[i] = min((pos[w] for w in later), default=None)
    if not bags:
        return TreeDecomposition({0: frozenset()}, ())
    # Link the roots of the forest in a chain; they share no vertices.
    roots = [i for i in bags if parent[i] is None]
    for a, b in zip(roots, roots[1:]):
        parent[a] = b
    tree = [(i, p) for i, p in parent.items() if p is not None]
    return _compress(TreeDecomposition(bags, tuple(tree)))


def _compress(td: TreeDecomposition) -> TreeDecomposition:
    # Merge a bag into a neighboring superset bag until none is contained in a neighbor.
    bags = dict(td.bags)
    nb = {i: set(js) for i, js in td.neighbors().items()}
    changed = True
    while changed:
        changed = False
        for i in sorted(bags):
            sup = next((j for j in sorted(nb[i]) if bags[i] <= bags[j]), None)
            if sup is None:
                continue
            for j in nb[i]:
                if j != sup:
                    nb[j].discard(i)
                    nb[j].add(sup)
                    nb[sup].add(j)
            nb[sup].discard(i)
            del nb[i], bags[i]
            changed = True
            break
    ids = {old: new for new, old in enumerate(sorted(bags))}
    tree = sorted({tuple(sorted((ids[i], ids[j]))) for i in nb for j in nb[i]})
    return TreeDecomposition({ids[i]: b for i, b in bags.items()}, tuple(tree))


def heuristic_decomposition(g: Graph, strategy: str = "min-degree") -> TreeDecomposition:
    """Valid tree decomposition from a greedy elimination ordering (not optimal width)."""
    return decomposition_from_ordering(g, elimination_ordering(g, strategy))


# -- nice decompositions ---------------------------------------------------


@dataclass(frozen=True)
class NiceNode:
    kind: str  # "leaf" | "introduce" | "forget" | "introduce-edge" | "join"
    bag: frozenset[int]
    children: tuple[int, ...] = ()
    vertex: Optional[int] = None
    edge: Optional[Edge] = None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Rooted nice decomposition; ``nodes[root]`` has an empty bag.

    Children always precede their parent in ``nodes``, so a forward scan is
    a valid bottom-up order.
    """

    nodes: tuple[NiceNode, ...]
    root: int

    @property
    def width(self) -> int:
        return max(len(nd.bag) for nd in self.nodes) - 1

    def to_tree_decomposition(self) -> TreeDecomposition:
        tree = tuple((c, i) for i, nd in enumerate(self.nodes) for c in nd.children)
        return TreeDecomposition({i: nd.bag for i, nd in enumerate(self.nodes)}, tree)


def to_nice(td: TreeDecomposition, g: Graph) -> NiceTreeDecomposition:
    """Convert a valid decomposition of ``g`` into nice form of the same width.

    Every edge of ``g`` is introduced exactly once, just before the first of
    its endpoints is forgotten.
    """
    bad = validate_decomposition(g, td)
    if bad is not None:
        raise DecompositionError(f"invalid decomposition: {bad}")
    nodes: list[NiceNode] = []
    introduced: set[Edge] = set()

    def add(node):
        nodes.append(node)
        return len(nodes) - 1

    def forget(top, v):
        bag = nodes[top].bag
        for w in sorted(g.neighbors(v)):
            e = norm_edge(v, w)
            if w in bag and e not in introduced:
                introduced.add(e)
                top = add(NiceNode("introduce-edge", bag, (top,), edge=e))
        return add(NiceNode("forget", bag - {v}, (top,), vertex=v))

    def morph(top, target):
        for v in sorted(nodes[top].bag - target):
            top = forget(top, v)
        for v in sorted(target - nodes[top].bag):
            top = add(NiceNode("introduce", nodes[top].bag | {v}, (top,), vertex=v))
        return top

    nb = td.neighbors()
    root_bag = min(td.bags)
    # iterative post-order over the decomposition tree
    order, parent = [], {root_bag: None}
    stack = [root_bag]
    while stack:
        i = stack.pop()
        order.append(i)
        for j in sorted(nb[i], reverse=True):
            if j != parent[i]:
                parent[j] = i
                stack.append(j)
    built: dict[int, int] = {}
    for i in reversed(order):
        bag = td.bags[i]
        kids = [built.pop(j) for j in sorted(nb[i]) if j != parent[i]]
        if not kids:
            kids = [add(NiceNode("leaf", frozenset()))]
        tops = [morph(top, bag) for top in kids]
        top = tops[0]
        for other in tops[1:]:
            top = add(NiceNode("join", bag, (top, other)))
        built[i] = top
    top = morph(built[root_bag], frozenset())
    assert introduced == set(g.edges)
    return NiceTreeDecomposition(tuple(nodes), top)


# -- PACE .td format -------------------------------------------------------


def serialize_td(td: TreeDecomposition, n: int) -> str:
    ids = {old: new for new, old in enumerate(sorted(td.bags), start=1)}
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for old in sorted(td.bags):
        lines.append(" ".join(["b", str(ids[old])] + [str(v) for v in sorted(td.bags[old])]))
    for a, b in td.tree:
        lines.append(f"{ids[a]} {ids[b]}")
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> TreeDecomposition:
    bags: dict[int, frozenset[int]] = {}
    tree = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise DecompositionError(f"line {lineno}: malformed 's td' header")
            header = tuple(int(x) for x in parts[2:])
        elif parts[0] == "b":
            bags[int(parts[1])] = frozenset(int(x) for x in parts[2:])
        elif len(parts) == 2:
            tree.append((int(parts[0]), int(parts[1])))
        else:
            raise DecompositionError(f"line {lineno}: unrecognized line")
    if header is None:
        raise DecompositionError("missing 's td' header")
    if header[0] != len(bags):
        raise DecompositionError(f"header announces {header[0]} bags, found {len(bags)}")
    return TreeDecomposition(bags, tuple(tree))


# -- width-or-candidate dichotomy ------------------------------------------


@dataclass
class PartitionRecord:
    y1: frozenset[int]
    y2: frozenset[int]
    flow: FlowResult


@dataclass
class WellConnectedCandidate:
    """A vertex set expected, but not guaranteed, to be well-connected.

    ``verified`` accumulates every balanced partition for which the
    required number of vertex-disjoint paths was confirmed by a flow.
    """

    members: frozenset[int]
    verified: list[PartitionRecord] = field(default_factory=list)
    decomposition: Optional[TreeDecomposition] = None

    def verify_partition(self, g: Graph, y1, y2) -> FlowResult:
        y1, y2 = frozenset(y1), frozenset(y2)
        if len(y1) != len(y2) or y1 & y2 or not (y1 | y2) <= self.members:
            raise ValueError("partition sides must be disjoint, equal-sized subsets of the candidate")
        flow = max_disjoint_paths(g, y1, y2, "vertex")
        if flow.value != len(y1):
            raise CandidateInvalidError(
                f"only {flow.value} of {len(y1)} disjoint paths between the partition sides"
            )
        _check_disjoint(flow, y1, y2)
        self.verified.append(PartitionRecord(y1, y2, flow))
        return flow


def _check_disjoint(flow: FlowResult, y1, y2):
    seen: set[int] = set()
    for path in flow.paths:
        if path[0] not in y1 or path[-1] not in y2:
            raise CandidateInvalidError(f"path {path} does not join the two sides")
        if seen & set(path):
            raise CandidateInvalidError(f"path {path} is not vertex-disjoint from the others")
        seen |= set(path)


def _max_core(g: Graph) -> frozenset[int]:
    """Vertex set of the k-core with the largest k."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    best = frozenset(g.vertices)
    k = 0
    while adj:
        k = min(len(nb) for nb in adj.values())
        best = frozenset(adj)
        # peel to the (k+1)-core
        queue = [v for v, nb in adj.items() if len(nb) <= k]
        while queue:
            v = queue.pop()
            if v not in adj:
                continue
            for w in adj.pop(v):
                adj[w].discard(v)
                if len(adj[w]) <= k:
                    queue.append(w)
    return best


def decomposition_or_wellconnected(
    g: Graph, w: int, h: int
) -> Union[TreeDecomposition, WellConnectedCandidate]:
    """Decomposition of width at most ``w``, or a candidate set of size at least ``h``.

    Both greedy orderings are tried and the narrower decomposition kept.
    When it is too wide, the candidate is the densest core of the component
    holding the widest bag, padded from that bag and then by degree.
    """
    if w < 1 or h < 2:
        raise ValueError("need w >= 1 and h >= 2")
    best = min(
        (heuristic_decomposition(g, s) for s in ("min-degree", "min-fill")),
        key=lambda td: td.width,
    )
    if best.width <= w:
        return best
    widest = max(best.bags.values(), key=lambda b: (len(b), sorted(b)))
    comp = next(c for c in connected_components(g) if widest <= c)
    members = set(_max_core(g.subgraph(comp)))
    for v in sorted(widest - members):
        if len(members) >= h:
            break
        members.add(v)
    for v in sorted(comp - members, key=lambda u: (-g.degree(u), u)):
        if len(members) >= h:
            break
        members.add(v)
    if len(members) < h:
        raise DichotomyFailure(
            f"width {best.width} exceeds {w} but only {len(members)} candidate vertices (< {h})"
        )
    return WellConnectedCandidate(frozenset(members), decomposition=best)
