import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipcontract.errors import GraphParseError, InvalidEdgeError
from bipcontract.graph import (
    Graph,
    canonical_form,
    connected_components,
    contract_edges,
    delete_edge,
    is_bipartite,
    parse_graph,
    parse_instance,
    serialize_graph,
)
from bipcontract.oracle import gen_complete, gen_cycle, gen_path, gen_random

from conftest import small_graphs


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(range(1, n + 1), chosen)


def test_graph_rejects_loops_and_duplicates():
    with pytest.raises(ValueError):
        Graph([1], [(1, 1)])
    with pytest.raises(ValueError):
        Graph([1, 2], [(1, 2), (2, 1)])
    assert Graph([1], [(1, 2)]).vertices == {1, 2}


def test_contract_cycle_edge_gives_shorter_cycle(c5):
    h, trace = contract_edges(c5, [(1, 2)])
    assert canonical_form(h) == canonical_form(gen_cycle(4))
    assert trace.image(2) == 1


def test_contract_triangle_edge_gives_k2():
    h, _ = contract_edges(gen_complete(3), [(2, 3)])
    assert h.n == 2 and h.m == 1


def test_contract_spanning_tree_gives_single_vertex():
    g = gen_random(7, 0.6, 3)
    assert len(connected_components(g)) == 1
    seen, tree, frontier = {1}, [], [1]
    while frontier:
        u = frontier.pop()
        for w in sorted(g.neighbors(u)):
            if w not in seen:
                seen.add(w)
                tree.append((u, w))
                frontier.append(w)
    h, _ = contract_edges(g, tree)
    assert h.n == 1 and h.m == 0


def test_contract_rejects_missing_edge(c5):
    with pytest.raises(InvalidEdgeError):
        contract_edges(c5, [(1, 3)])


def test_delete_edge_examples():
    k2 = gen_path(2)
    h = delete_edge(k2, (1, 2))
    assert h.n == 2 and h.m == 0
    assert canonical_form(delete_edge(gen_cycle(4), (1, 4))) == canonical_form(gen_path(4))
    assert canonical_form(delete_edge(gen_complete(3), (1, 3))) == canonical_form(gen_path(3))
    with pytest.raises(InvalidEdgeError):
        delete_edge(k2, (1, 3))


def test_is_bipartite_examples(c5):
    assert is_bipartite(gen_cycle(4)) is not None
    assert is_bipartite(c5) is None
    assert is_bipartite(Graph([], [])) == {}


def test_components_examples():
    g = Graph(range(1, 6), [(1, 2), (2, 3), (1, 3), (4, 5)])
    assert sorted(map(len, connected_components(g))) == [2, 3]
    assert connected_components(Graph([7], [])) == [frozenset({7})]
    assert connected_components(gen_cycle(6)) == [frozenset(range(1, 7))]


def _components_of(vertices, edges):
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for u, v in edges:
        parent[find(u)] = find(v)
    groups = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    return groups.values()


@settings(max_examples=150, deadline=None)
@given(graphs(), st.data())
def test_contraction_vertex_count(g, data):
    edges = g.sorted_edges()
    s = data.draw(st.lists(st.sampled_from(edges), unique=True)) if edges else []
    h, _ = contract_edges(g, s)
    assert h.n == g.n - sum(len(c) - 1 for c in _components_of(g.vertices, s))


@settings(max_examples=150, deadline=None)
@given(graphs(), st.data())
def test_contraction_order_independent(g, data):
    edges = g.sorted_edges()
    if not edges:
        return
    s1 = data.draw(st.lists(st.sampled_from(edges), unique=True))
    s2 = data.draw(st.lists(st.sampled_from(edges), unique=True))
    together, _ = contract_edges(g, set(s1) | set(s2))
    a, t = contract_edges(g, s1)
    a, _ = contract_edges(a, t.map_edges(e for e in s2 if t.image(e[0]) != t.image(e[1])))
    assert canonical_form(a) == canonical_form(together)


def _has_odd_cycle(g):
    # exhaustive: try every vertex 2-coloring
    vs = g.sorted_vertices()
    for bits in range(1 << len(vs)):
        col = {v: bits >> i & 1 for i, v in enumerate(vs)}
        if all(col[u] != col[v] for u, v in g.edges):
            return False
    return True


def test_is_bipartite_matches_exhaustive_search():
    for g in small_graphs(10, seed=5, count=80):
        phi = is_bipartite(g)
        assert (phi is None) == _has_odd_cycle(g)
        if phi is not None:
            assert all(phi[u] != phi[v] for u, v in g.edges)


def test_parse_examples():
    g = parse_graph("p edge 2 1\ne 1 2\n")
    assert g == Graph([1, 2], [(1, 2)])
    with pytest.raises(GraphParseError, match="loop"):
        parse_graph("p edge 1 1\ne 1 1\n")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("e 1 2\n", "before header"),
        ("p edge 2 1\ne 1 3\n", "out of range"),
        ("p edge 2 2\ne 1 2\ne 2 1\n", "duplicate"),
        ("p edge 2 2\ne 1 2\n", "announces 2 edges"),
        ("p edge 2 1\np edge 2 1\n", "second header"),
        ("p edge 2 0\nx 1\n", "unknown line"),
        ("p edge 2 0\nt1 1\nt2 1\n", "both"),
        ("", "missing"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(GraphParseError, match=fragment):
        parse_instance(text)


def test_parse_error_reports_line_number():
    with pytest.raises(GraphParseError) as info:
        parse_graph("c hello\np edge 3 1\ne 1 9\n")
    assert info.value.lineno == 3


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10))
def test_serialize_round_trip(g):
    text = serialize_graph(g, t1=[1], comments=["x"])
    inst = parse_instance(text)
    assert inst.graph == g and inst.t1 == {1}
