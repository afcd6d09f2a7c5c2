"""Exact cheap-coloring-extension solver over a nice tree decomposition.

The cost of a coloring equals ``|V|`` minus its number of monochromatic
components, so the table maximizes the number of components. A state at a
node records, for the bag vertices in sorted order, their colors and which
of them already share a monochromatic component in the part of the graph
processed below the node. Its value is the number of monochromatic
components that were completed (fully forgotten) below the node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional

from .coloring import analyze
from .errors import InvalidTerminalsError, PreconditionError, ResourceError
from .graph import Graph, is_bipartite
from .treewidth import NiceTreeDecomposition, heuristic_decomposition, to_nice

# state = (colors, blocks); both tuples aligned with the sorted bag.
# blocks uses restricted-growth labels: first occurrence order 0, 1, 2, ...


@dataclass(frozen=True)
class ExtensionInstance:
    graph: Graph
    k: int
    t1: frozenset[int] = frozenset()
    t2: frozenset[int] = frozenset()
    check_bipartite: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "t1", frozenset(self.t1))
        object.__setattr__(self, "t2", frozenset(self.t2))
        if self.t1 & self.t2:
            raise InvalidTerminalsError(f"vertices {sorted(self.t1 & self.t2)} are in both T1 and T2")
        if not (self.t1 | self.t2) <= self.graph.vertices:
            raise InvalidTerminalsError("terminal outside the graph")
        if self.check_bipartite and is_bipartite(self.graph) is None:
            raise PreconditionError("extension instances must be bipartite")

    @property
    def t(self) -> int:
        return len(self.t1) + len(self.t2)


def _canon(blocks):
    relabel = {}
    return tuple(relabel.setdefault(b, len(relabel)) for b in blocks)


def _allowed(v, t1, t2):
    if v in t1:
        return (1,)
    if v in t2:
        return (2,)
    return (1, 2)


class _Tables:
    """Bottom-up DP tables with parent pointers."""

    def __init__(self, ntd, t1, t2, k=None, work_limit=None):
        self.ntd = ntd
        self.tables: list[dict] = []
        self.processed: list[int] = []
        work = 0
        for i, node in enumerate(ntd.nodes):
            table, count = self._step(node, t1, t2)
            if k is not None:
                table = {
                    s: vb for s, vb in table.items()
                    if count - vb[0] - (max(s[1]) + 1 if s[1] else 0) <= k
                }
            self.tables.append(table)
            self.processed.append(count)
            work += len(table)
            if work_limit is not None and work > work_limit:
                raise ResourceError(f"DP exceeded work limit of {work_limit} table entries")

    def _step(self, node, t1, t2):
        kind = node.kind
        if kind == "leaf":
            return {((), ()): (0, None)}, 0
        c = node.children[0]
        child = self.tables[c]
        cbag = sorted(self.ntd.nodes[c].bag)
        out: dict = {}
        if kind == "introduce":
            v = node.vertex
            pos = sorted(node.bag).index(v)
            for (cols, blocks), (val, _) in child.items():
                fresh = max(blocks, default=-1) + 1
                nb = _canon(blocks[:pos] + (fresh,) + blocks[pos:])
                for col in _allowed(v, t1, t2):
                    key = (cols[:pos] + (col,) + cols[pos:], nb)
                    _keep(out, key, val, (c, (cols, blocks)))
            return out, self.processed[c] + 1
        if kind == "forget":
            pos = cbag.index(node.vertex)
            for (cols, blocks), (val, _) in child.items():
                b = blocks[pos]
                rest = blocks[:pos] + blocks[pos + 1:]
                closed = 0 if b in rest else 1
                key = (cols[:pos] + cols[pos + 1:], _canon(rest))
                _keep(out, key, val + closed, (c, (cols, blocks)))
            return out, self.processed[c]
        if kind == "introduce-edge":
            u, v = node.edge
            pu, pv = cbag.index(u), cbag.index(v)
            for (cols, blocks), (val, _) in child.items():
                if cols[pu] == cols[pv] and blocks[pu] != blocks[pv]:
                    src, dst = blocks[pv], blocks[pu]
                    nb = _canon(tuple(dst if b == src else b for b in blocks))
                else:
                    nb = blocks
                _keep(out, (cols, nb), val, (c, (cols, blocks)))
            return out, self.processed[c]
        if kind == "join":
            c2 = node.children[1]
            by_colors: dict = {}
            for (cols, blocks), (val, _) in self.tables[c2].items():
                by_colors.setdefault(cols, []).append((blocks, val))
            for (cols, b1), (v1, _) in child.items():
                for b2, v2 in by_colors.get(cols, ()):
                    key = (cols, _join_partitions(b1, b2))
                    _keep(out, key, v1 + v2, ((c, (cols, b1)), (c2, (cols, b2))))
            return out, self.processed[c] + self.processed[c2] - len(node.bag)
        raise ValueError(f"unknown node kind {kind!r}")


def _keep(out, key, val, back):
    old = out.get(key)
    if old is None or val > old[0]:
        out[key] = (val, back)


def _join_partitions(b1, b2):
    parent = list(range(len(b1)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for blocks in (b1, b2):
        first = {}
        for i, b in enumerate(blocks):
            if b in first:
                ra, rb = find(first[b]), find(i)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            else:
                first[b] = i
    return _canon(tuple(find(i) for i in range(len(b1))))


def _reconstruct(tables: _Tables, root_state) -> dict[int, int]:
    nodes = tables.ntd.nodes
    phi: dict[int, int] = {}
    stack = [(tables.ntd.root, root_state)]
    while stack:
        i, state = stack.pop()
        node = nodes[i]
        _, back = tables.tables[i][state]
        if node.kind == "introduce":
            pos = sorted(node.bag).index(node.vertex)
            phi[node.vertex] = state[0][pos]
        if node.kind == "join":
            stack.extend(back)
        elif back is not None:
            stack.append(back)
    return phi


def solve_extension_dp(
    inst: ExtensionInstance,
    ntd: Optional[NiceTreeDecomposition] = None,
    work_limit: Optional[int] = None,
) -> Optional[dict[int, int]]:
    """Cheapest (T1, T2)-extension if its cost is at most ``inst.k``, else ``None``.

    Partial states whose implied lower bound on the final cost exceeds the
    budget are dropped. Disconnected graphs need no special treatment.
    """
    g = inst.graph
    if ntd is None:
        ntd = to_nice(heuristic_decomposition(g), g)
    if inst.k < 0:
        return None
    tables = _Tables(ntd, inst.t1, inst.t2, inst.k, work_limit)
    root = tables.tables[ntd.root]
    if not root:
        return None
    (state, (components, _)), = root.items()
    cost = g.n - components
    if cost > inst.k:
        return None
    phi = _reconstruct(tables, state)
    assert analyze(g, phi).cost == cost
    return phi


def optimum_cost(g: Graph, t1: Iterable[int] = (), t2: Iterable[int] = (), ntd=None) -> int:
    """Cost of a cheapest extension, computed without budget pruning."""
    inst = ExtensionInstance(g, g.n, frozenset(t1), frozenset(t2), check_bipartite=False)
    if ntd is None:
        ntd = to_nice(heuristic_decomposition(g), g)
    root = _Tables(ntd, inst.t1, inst.t2).tables[ntd.root]
    ((_, (components, _)),) = root.items()
    return g.n - components


# -- audit -----------------------------------------------------------------


@dataclass
class AuditReport:
    ok: bool
    nodes_checked: int
    entries_checked: int
    problems: list[str]


def _subtree_parts(ntd: NiceTreeDecomposition):
    verts: list[frozenset[int]] = []
    edges: list[frozenset] = []
    for node in ntd.nodes:
        vs = frozenset().union(*(verts[c] for c in node.children)) if node.children else frozenset()
        es = frozenset().union(*(edges[c] for c in node.children)) if node.children else frozenset()
        if node.kind == "introduce":
            vs = vs | {node.vertex}
        if node.kind == "introduce-edge":
            es = es | {node.edge}
        verts.append(vs)
        edges.append(es)
    return verts, edges


def _induced_state(bag, vs, es, phi):
    adj = {v: [] for v in vs}
    for u, v in es:
        if phi[u] == phi[v]:
            adj[u].append(v)
            adj[v].append(u)
    comp = {}
    label = 0
    for s in sorted(vs):
        if s in comp:
            continue
        comp[s] = label
        stack = [s]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b not in comp:
                    comp[b] = label
                    stack.append(b)
        label += 1
    bag = sorted(bag)
    live = {comp[v] for v in bag}
    closed = label - len(live)
    return (tuple(phi[v] for v in bag), _canon(tuple(comp[v] for v in bag))), closed


def dp_table_audit(inst: ExtensionInstance, ntd: NiceTreeDecomposition, max_vertices: int = 12) -> AuditReport:
    """Compare every DP table with brute-force enumeration of partial colorings.

    For each node, every colouring of the processed vertices is mapped to the
    state it induces. The table must contain exactly those states, each with
    the best value any colouring reaches.
    """
    if inst.graph.n > max_vertices:
        raise ValueError(f"audit is limited to {max_vertices} vertices")
    tables = _Tables(ntd, inst.t1, inst.t2)
    verts, edges = _subtree_parts(ntd)
    problems = []
    entries = 0
    for i, node in enumerate(ntd.nodes):
        vs = sorted(verts[i])
        expected: dict = {}
        for cols in product(*(_allowed(v, inst.t1, inst.t2) for v in vs)):
            phi = dict(zip(vs, cols))
            state, closed = _induced_state(node.bag, vs, edges[i], phi)
            if expected.get(state, -1) < closed:
                expected[state] = closed
        got = {s: vb[0] for s, vb in tables.tables[i].items()}
        entries += len(got)
        if got.keys() != expected.keys():
            extra = got.keys() - expected.keys()
            missing = expected.keys() - got.keys()
            problems.append(f"node {i} ({node.kind}): {len(extra)} unreachable, {len(missing)} missing states")
            continue
        for s, val in got.items():
            if val != expected[s]:
                problems.append(f"node {i} ({node.kind}): state {s} value {val} != {expected[s]}")
    return AuditReport(not problems, len(ntd.nodes), entries, problems)
