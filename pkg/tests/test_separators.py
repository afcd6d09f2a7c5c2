import networkx as nx
import pytest

from bipcontract.errors import InvalidTerminalsError
from bipcontract.oracle import (
    gen_complete_bipartite,
    gen_grid,
    gen_path,
    gen_random,
    gen_star,
    important_sets_oracle,
)
from bipcontract.separators import (
    augmented_graph,
    compute_z,
    compute_z_details,
    enumerate_important_sets,
    is_important,
    max_disjoint_paths,
)

from conftest import small_graphs


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def test_flow_examples():
    assert max_disjoint_paths(gen_path(3), [1], [3]).value == 1
    k33 = gen_complete_bipartite(3, 3)
    res = max_disjoint_paths(k33, [1, 2, 3], [4, 5, 6])
    assert res.value == 3 and len(res.cut) == 3
    same = max_disjoint_paths(gen_path(3), [2], [2])
    assert same.value == 1 and same.paths == ((2,),)


def test_edge_mode_rejects_overlap():
    with pytest.raises(ValueError):
        max_disjoint_paths(gen_path(3), [1, 2], [2], mode="edge")
    with pytest.raises(ValueError):
        max_disjoint_paths(gen_path(3), [1], [3], mode="other")


def _check_paths(g, res, a, b):
    used = set()
    for path in res.paths:
        assert path[0] in a and path[-1] in b
        assert all(g.has_edge(u, v) for u, v in zip(path, path[1:]))
        if res.mode == "vertex":
            assert not used & set(path)
            used |= set(path)
        else:
            es = {tuple(sorted(e)) for e in zip(path, path[1:])}
            assert not used & es
            used |= es


def test_flow_matches_networkx():
    for g in small_graphs(9, seed=21, count=60):
        if g.n < 4:
            continue
        vs = g.sorted_vertices()
        a, b = set(vs[:2]), set(vs[-2:])
        h = _nx(g)
        h.add_edges_from([("s", v) for v in a] + [(v, "t") for v in b])
        vres = max_disjoint_paths(g, a, b, "vertex")
        expected = len(list(nx.node_disjoint_paths(h, "s", "t"))) if nx.has_path(h, "s", "t") else 0
        assert vres.value == expected
        eres = max_disjoint_paths(g, a, b, "edge")
        d = nx.DiGraph()
        for u, v in g.edges:
            d.add_edge(u, v, capacity=1)
            d.add_edge(v, u, capacity=1)
        for v in a:
            d.add_edge("s", v)
        for v in b:
            d.add_edge(v, "t")
        assert eres.value == nx.maximum_flow_value(d, "s", "t")
        _check_paths(g, vres, a, b)
        _check_paths(g, eres, a, b)
        assert max_disjoint_paths(g, b, a, "vertex").value == vres.value


def test_important_set_examples():
    assert [s.members for s in enumerate_important_sets(gen_path(3), 1, 3, 1)] == [{1, 2}]
    star = gen_star(3)
    assert [s.members for s in enumerate_important_sets(star, 2, 3, 2)] == [{1, 2, 4}]
    assert enumerate_important_sets(gen_grid(3, 3), 1, 9, 0) == []
    with pytest.raises(InvalidTerminalsError):
        enumerate_important_sets(star, 2, 2, 1)


def test_is_important_checks_maximality():
    path = gen_path(3)
    assert is_important(path, {1, 2}, 1, 3)
    assert not is_important(path, {1}, 1, 3)
    assert not is_important(path, {1, 3}, 1, 3)


def test_enumeration_matches_oracle_sample():
    for g in small_graphs(8, seed=9, count=30):
        for x in g.sorted_vertices()[:3]:
            for y in g.sorted_vertices()[-2:]:
                if x == y:
                    continue
                for p in range(4):
                    got = [s.members for s in enumerate_important_sets(g, x, y, p)]
                    assert got == important_sets_oracle(g, x, y, p)
                    assert len(got) <= 4**p


def test_augmented_graph():
    g, ystar = augmented_graph(gen_path(3), [2, 3])
    assert ystar == 4 and g.neighbors(4) == {2, 3}


def test_z_examples():
    assert compute_z(gen_path(3), [2, 3], [], [], 1) == frozenset()
    assert compute_z(gen_path(3), [2, 3], [1], [], 1) == {1, 2, 3}


def test_z_boundary_bound():
    for seed in range(15):
        g = gen_random(8, 0.4, seed)
        for p in (1, 2):
            zd = compute_z_details(g, [5, 6, 7, 8], [1], [2], 1, cut_budget=p)
            bound = p * 2 * max(len(zd.sets), 1)
            assert zd.augmented.boundary_size(zd.members) <= bound
