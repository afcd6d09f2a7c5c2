from functools import lru_cache

import pytest

from bipcontract.errors import CandidateInvalidError, DecompositionError
from bipcontract.graph import Graph
from bipcontract.oracle import (
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_grid,
    gen_path,
    gen_star,
)
from bipcontract.treewidth import (
    TreeDecomposition,
    WellConnectedCandidate,
    decomposition_or_wellconnected,
    elimination_ordering,
    heuristic_decomposition,
    parse_td,
    serialize_td,
    to_nice,
    validate_decomposition,
)

from conftest import small_graphs

STRATEGIES = ("min-degree", "min-fill")


def exact_treewidth(g: Graph) -> int:
    """Treewidth by the subset recurrence over elimination prefixes."""
    vs = g.sorted_vertices()
    if not vs:
        return -1
    index = {v: i for i, v in enumerate(vs)}
    adj = [0] * len(vs)
    for u, v in g.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    full = (1 << len(vs)) - 1

    def q(s, v):
        # vertices outside s and v reachable from v through s
        seen, stack, out = 1 << v, [v], 0
        while stack:
            a = stack.pop()
            nb = adj[a] & ~seen
            seen |= nb
            out |= nb & ~s
            inside = nb & s
            while inside:
                b = (inside & -inside).bit_length() - 1
                inside &= inside - 1
                stack.append(b)
        return bin(out).count("1")

    @lru_cache(maxsize=None)
    def tw(s):
        if s == 0:
            return -1
        best = len(vs)
        rest = s
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            prev = s & ~(1 << v)
            best = min(best, max(tw(prev), q(prev, v)))
        return best

    return tw(full)


def test_exact_treewidth_oracle_on_known_graphs():
    assert exact_treewidth(gen_path(6)) == 1
    assert exact_treewidth(gen_cycle(7)) == 2
    assert exact_treewidth(gen_complete(5)) == 4
    assert exact_treewidth(gen_grid(3, 3)) == 3
    assert exact_treewidth(gen_complete_bipartite(3, 3)) == 3


def test_validate_examples():
    g = gen_path(4)
    td = TreeDecomposition({1: frozenset({1, 2}), 2: frozenset({2, 3}), 3: frozenset({3, 4})}, ((1, 2), (2, 3)))
    assert validate_decomposition(g, td) is None and td.width == 1
    broken = TreeDecomposition({1: frozenset({1, 2}), 2: frozenset({3, 4})}, ((1, 2),))
    v = validate_decomposition(g, broken)
    assert v.kind == "uncovered-edge" and v.witness == (2, 3)
    single = TreeDecomposition({1: frozenset(g.vertices)}, ())
    assert validate_decomposition(g, single) is None and single.width == 3


def test_validate_detects_each_violation():
    g = gen_path(3)
    bags = {1: frozenset({1, 2}), 2: frozenset({2, 3}), 3: frozenset({1})}
    assert validate_decomposition(g, TreeDecomposition(bags, ((1, 2),))).kind == "not-a-tree"
    assert validate_decomposition(g, TreeDecomposition(bags, ((1, 2), (2, 3)))).kind == "disconnected-trace"
    small = {1: frozenset({1, 2})}
    assert validate_decomposition(g, TreeDecomposition(small, ())).kind == "missing-vertex"


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_heuristic_examples(strategy):
    for g in (gen_path(7), gen_star(5)):
        assert heuristic_decomposition(g, strategy).width == 1
    for n in range(3, 9):
        assert heuristic_decomposition(gen_cycle(n), strategy).width == 2
    for n in range(1, 7):
        assert heuristic_decomposition(gen_complete(n), strategy).width == n - 1


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_heuristic_valid_and_never_below_exact(strategy):
    for g in small_graphs(8, seed=2, count=60):
        td = heuristic_decomposition(g, strategy)
        assert validate_decomposition(g, td) is None
        assert td.width >= exact_treewidth(g)


def test_ordering_tie_break_lowest_id():
    assert elimination_ordering(gen_path(4), "min-degree")[0] == 1


def test_nice_form_structure():
    k3 = gen_complete(3)
    nice = to_nice(TreeDecomposition({0: frozenset({1, 2, 3})}, ()), k3)
    kinds = [n.kind for n in nice.nodes]
    assert kinds.count("introduce") == 3 and kinds.count("introduce-edge") == 3
    assert nice.nodes[nice.root].bag == frozenset()
    assert to_nice(heuristic_decomposition(gen_path(5)), gen_path(5)).width == 1


def test_nice_form_invariants():
    for g in small_graphs(9, seed=4, count=50):
        td = heuristic_decomposition(g, "min-fill")
        nice = to_nice(td, g)
        assert nice.width == td.width
        assert validate_decomposition(g, nice.to_tree_decomposition()) is None
        introduced = [n.edge for n in nice.nodes if n.kind == "introduce-edge"]
        assert sorted(introduced) == g.sorted_edges()
        for i, node in enumerate(nice.nodes):
            assert all(c < i for c in node.children)
            if node.kind == "join":
                assert all(nice.nodes[c].bag == node.bag for c in node.children)


def test_pace_round_trip():
    g = gen_grid(3, 3)
    td = heuristic_decomposition(g)
    text = serialize_td(td, g.n)
    assert text.startswith(f"s td {len(td.bags)} {td.width + 1} 9")
    back = parse_td(text)
    assert validate_decomposition(g, back) is None and back.width == td.width
    with pytest.raises(DecompositionError):
        parse_td("b 1 2\n")
    with pytest.raises(DecompositionError):
        parse_td("s td 2 2 2\nb 1 1 2\n")


def test_dichotomy_examples():
    assert isinstance(decomposition_or_wellconnected(gen_path(6), 2, 4), TreeDecomposition)
    assert isinstance(decomposition_or_wellconnected(gen_complete(3), 5, 4), TreeDecomposition)
    k44 = gen_complete_bipartite(4, 4)
    cand = decomposition_or_wellconnected(k44, 3, 8)
    assert isinstance(cand, WellConnectedCandidate) and cand.members == k44.vertices
    for y1 in ({1, 2, 3, 4}, {1, 5, 2, 6}, {1, 2, 5, 6}):
        y2 = k44.vertices - y1
        flow = cand.verify_partition(k44, y1, y2)
        assert flow.value == 4
    assert len(cand.verified) == 3
    for rec in cand.verified:
        used = [v for path in rec.flow.paths for v in path]
        assert len(used) == len(set(used)) and rec.flow.value == len(rec.y1)


def test_candidate_verification_failure():
    # Two triangles joined by one edge: no two disjoint paths across.
    g = Graph(range(1, 7), [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)])
    cand = WellConnectedCandidate(frozenset(g.vertices))
    with pytest.raises(CandidateInvalidError):
        cand.verify_partition(g, {1, 2}, {5, 6})
    with pytest.raises(ValueError):
        cand.verify_partition(g, {1}, {5, 6})


def test_dichotomy_bad_parameters():
    with pytest.raises(ValueError):
        decomposition_or_wellconnected(gen_path(3), 0, 4)


def test_dichotomy_failure_when_graph_too_small():
    from bipcontract.errors import DichotomyFailure

    with pytest.raises(DichotomyFailure):
        decomposition_or_wellconnected(gen_complete(5), 2, 10)
