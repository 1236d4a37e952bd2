from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algconn.canon import are_isomorphic, canonical_form, canonical_graph, canonical_order
from algconn.graph_core import Graph, build_from_edge_list
from strategies import graphs


def _all_labelled(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield build_from_edge_list(n, [p for k, p in enumerate(pairs) if mask >> k & 1])


def _brute_isomorphic(g, h):
    if g.n != h.n or g.m != h.m:
        return False
    target = set(h.edges())
    return any({tuple(sorted((p[i], p[j]))) for i, j in g.edges()} == target
               for p in permutations(range(g.n)))


@pytest.mark.parametrize("n, classes", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_class_counts_over_all_labelled_graphs(n, classes):
    assert len({canonical_form(g) for g in _all_labelled(n)}) == classes


@settings(max_examples=80)
@given(graphs(max_n=11), st.data())
def test_form_invariant_under_relabelling(g, data):
    perm = data.draw(st.permutations(list(range(g.n))))
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


@settings(max_examples=80)
@given(graphs(max_n=6), graphs(max_n=6))
def test_isomorphism_matches_brute_force(g, h):
    assert are_isomorphic(g, h) == _brute_isomorphic(g, h)


@given(graphs(max_n=9))
def test_canonical_graph_is_a_fixed_point(g):
    c = canonical_graph(g)
    assert _brute_isomorphic(c, g) if g.n <= 6 else c.m == g.m
    assert canonical_graph(c) == c


def test_regular_graphs_need_backtracking():
    hexagon = build_from_edge_list(6, [(i, (i + 1) % 6) for i in range(6)])
    triangles = build_from_edge_list(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not are_isomorphic(hexagon, triangles)
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    petersen = build_from_edge_list(10, outer + spokes + inner)
    shuffled = petersen.relabel([3, 7, 1, 9, 0, 5, 2, 8, 6, 4])
    assert are_isomorphic(petersen, shuffled)
    prism = build_from_edge_list(10, outer + spokes + [(5 + i, 5 + (i + 1) % 5) for i in range(5)])
    assert not are_isomorphic(petersen, prism)


def test_order_is_a_permutation_and_code_reproduces():
    g = build_from_edge_list(5, [(0, 1), (1, 2), (2, 3), (0, 4)])
    code, order = canonical_order(g)
    assert sorted(order) == list(range(5))
    assert canonical_order(g.adj, g.n)[0] == code
    assert canonical_form(Graph.empty(10)) == 0
    assert canonical_form(Graph.complete(4)) == (1 << 6) - 1
