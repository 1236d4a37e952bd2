from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algconn.graph_core import (Graph, GraphError, Partition, build_from_edge_list,
                                build_union_complete, complement, components, degree_profile,
                                laplacian, read_edge_list, union_partition, write_edge_list)
from strategies import graphs, partitions


def test_rejects_bad_labels_and_loops():
    with pytest.raises(GraphError, match="out of range"):
        build_from_edge_list(3, [(0, 3)])
    with pytest.raises(GraphError, match="self-loop"):
        build_from_edge_list(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph(0, ())
    with pytest.raises(GraphError, match="upper triangle"):
        Graph(2, (0, 1))


def test_duplicate_pairs_collapse_in_builder():
    g = build_from_edge_list(3, [(0, 1), (1, 0)])
    assert g.m == 1 and g.edges() == [(0, 1)]


@given(graphs())
def test_degree_sum_and_edge_count(g):
    assert sum(g.degrees) == 2 * g.m == 2 * len(g.edges())
    assert len(g.non_edges()) == comb(g.n, 2) - g.m


@given(graphs())
def test_complement_is_an_involution(g):
    c = complement(g)
    assert c.m == comb(g.n, 2) - g.m
    assert complement(c) == g
    assert not set(c.edges()) & set(g.edges())


@given(graphs())
def test_laplacian_structure(g):
    L = laplacian(g)
    assert (L == L.T).all()
    assert (L.sum(axis=1) == 0).all()
    assert list(np.diag(L)) == list(g.degrees)
    assert int(np.trace(L)) == 2 * g.m


@given(partitions(max_n=14))
def test_union_partition_roundtrip(p):
    g = build_union_complete(p)
    assert g.n == p.n and g.m == p.m
    assert union_partition(g) == p
    assert [len(c) for c in components(g)] == list(p.sizes)


def test_union_partition_rejects_non_cliques():
    assert union_partition(build_from_edge_list(3, [(0, 1), (1, 2)])) is None
    assert union_partition(Graph.empty(4)) == Partition.of(1, 1, 1, 1)
    assert union_partition(Graph.complete(5)) == Partition.of(5)


def test_partition_normalises_and_validates():
    p = Partition((3, 6))
    assert p.sizes == (6, 3) and str(p) == "6,3"
    assert (p.n, p.m, p.p, p.largest) == (9, 18, 2, 6)
    assert Partition.of(4, 1, 1).nontrivial() == (4,)
    with pytest.raises(GraphError):
        Partition((3, 0))
    with pytest.raises(GraphError):
        Partition(())


def test_components_order():
    g = build_from_edge_list(6, [(4, 5), (0, 1), (1, 2)])
    assert components(g) == [frozenset({0, 1, 2}), frozenset({4, 5}), frozenset({3})]


def test_degree_profile():
    prof = degree_profile(build_union_complete(Partition.of(4, 3, 2)))
    assert prof.delta_max == 3
    assert prof.d_avg * 9 == 20 and prof.ceil_d_avg == 3


@given(graphs(), st.data())
def test_relabel_preserves_structure(g, data):
    perm = data.draw(st.permutations(list(range(g.n))))
    h = g.relabel(perm)
    assert h.m == g.m
    assert sorted(h.degrees) == sorted(g.degrees)
    assert all(h.has_edge(perm[i], perm[j]) for i, j in g.edges())


@settings(max_examples=50)
@given(graphs(max_n=12))
def test_edge_list_roundtrip(g):
    assert read_edge_list(write_edge_list(g)) == g


@pytest.mark.parametrize("text, msg", [
    ("", "first line"),
    ("3\n0 1\n", "first line"),
    ("3 2\n0 1\n", "announces 2 edges"),
    ("3 2\n0 1\n1 0\n", "duplicate"),
    ("3 1\n0 x\n", "non-integer"),
    ("3 1\n0 1 2\n", "expected 'i j'"),
    ("3 1\n0 5\n", "out of range"),
])
def test_edge_list_errors(text, msg):
    with pytest.raises(GraphError, match=msg):
        read_edge_list(text)


def test_edge_list_comments_and_blank_lines():
    g = read_edge_list("# triangle\n3 3\n\n0 1\n1 2\n0 2\n")
    assert g == Graph.complete(3)
