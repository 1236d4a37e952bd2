from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algconn.graph_core import Graph, Partition, build_from_edge_list, build_union_complete, complement
from algconn.partition_builder import (EQUALITY, EQUALITY_SETTLED, SATISFIED, STRICT, VIOLATED,
                                       algorithm1, certify, check_multi_component_condition,
                                       check_two_component_condition, class_degree_bound,
                                       discriminant_equality_scan, domination_number,
                                       independence_number, is_legm, lower_bounds)
from algconn.spectral import lambda1
from strategies import graphs, partitions


@st.composite
def nm_pairs(draw, max_n=40):
    n = draw(st.integers(1, max_n))
    return n, draw(st.integers(0, comb(n, 2)))


@given(nm_pairs())
def test_construction_invariants(nm):
    n, m = nm
    res = algorithm1(n, m)
    assert res.partition.n == n
    assert res.m_actual == res.partition.m <= m
    assert res.shortfall <= max(0, n - 2)
    assert res.lambda1 == (res.partition.largest if res.m_actual else 0)
    xs = [s.x for s in res.steps]
    assert xs == sorted(set(xs), reverse=True)
    if res.rule == "exact":
        assert res.m_actual == m
        for s in res.steps:
            assert s.count == s.edges_before // comb(s.x, 2)


def test_exhaustive_small_range():
    for n in range(1, 41):
        for m in range(comb(n, 2) + 1):
            res = algorithm1(n, m)
            assert res.shortfall <= max(0, n - 2), (n, m)


@settings(max_examples=40)
@given(nm_pairs(max_n=14))
def test_built_graph_spectrum(nm):
    res = algorithm1(*nm)
    g = build_union_complete(res.partition)
    assert lambda1(g, exact=False) == pytest.approx(res.lambda1, abs=1e-9)


def test_plain_greedy_loop():
    res = algorithm1(9, 10, lookahead=False)
    assert res.rule == "literal"
    assert res.partition.nontrivial() == (3, 3, 3) and res.m_actual == 9
    assert algorithm1(9, 10).partition.nontrivial() == (4, 3, 2)


def test_edge_cases_and_errors():
    assert algorithm1(5, 0).partition == Partition.of(1, 1, 1, 1, 1)
    assert algorithm1(5, 0).lambda1 == 0
    assert algorithm1(6, 15).partition == Partition.of(6)
    for n, m in [(0, 0), (4, 7), (4, -1)]:
        with pytest.raises(ValueError):
            algorithm1(n, m)


def test_relaxed_fallback_keeps_shortfall_small():
    res = algorithm1(3, 2)
    assert res.rule == "relaxed" and res.m_actual == 1


@pytest.mark.parametrize("n, ell, status, value", [
    (9, 3, EQUALITY, Fraction(1)),
    (8, 2, EQUALITY, Fraction(1)),
    (10, 4, STRICT, Fraction(4, 5)),
    (20, 5, VIOLATED, Fraction(5, 2)),
    (9, 1, STRICT, Fraction(7, 9)),
])
def test_two_component_condition(n, ell, status, value):
    assert check_two_component_condition(n, ell) == (status, value)


def test_two_component_condition_domain():
    with pytest.raises(ValueError):
        check_two_component_condition(9, 5)
    with pytest.raises(ValueError):
        check_two_component_condition(9, 0)


@given(st.integers(2, 60).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n // 2))))
def test_conditions_agree_for_two_components(nl):
    n, ell = nl
    _, two = check_two_component_condition(n, ell)
    _, multi = check_multi_component_condition(Partition.of(n - ell, ell))
    assert two == multi


def test_multi_component_condition():
    assert check_multi_component_condition(Partition.of(4, 3, 2)) == (SATISFIED, Fraction(7, 9))
    assert check_multi_component_condition(Partition.of(7, 5, 3))[0] == VIOLATED
    assert check_multi_component_condition(Partition.of(5, 5))[1] == 0


def test_discriminant_scan_against_direct_search():
    direct = [(n, ell) for n in range(3, 101) for ell in range(1, n // 2 + 1)
              if 2 * ell * ell - n * ell + n == 0]
    assert discriminant_equality_scan(100) == direct == [(8, 2), (9, 3)]
    assert set(EQUALITY_SETTLED) == set(direct)
    with pytest.raises(ValueError):
        discriminant_equality_scan(5)


def _brute_alpha(g):
    for k in range(g.n, 0, -1):
        for s in combinations(range(g.n), k):
            if not any(g.has_edge(a, b) for a, b in combinations(s, 2)):
                return k
    return 0


def _brute_gamma(g):
    for k in range(1, g.n + 1):
        for s in combinations(range(g.n), k):
            covered = set(s)
            for v in s:
                covered |= {u for u in range(g.n) if g.has_edge(u, v)}
            if len(covered) == g.n:
                return k


@settings(max_examples=80)
@given(graphs(max_n=8))
def test_alpha_gamma_against_brute_force(g):
    assert independence_number(g) == _brute_alpha(g)
    assert domination_number(g) == _brute_gamma(g)


def test_exact_solvers_respect_cap():
    g = Graph.empty(40)
    assert independence_number(g) is None and domination_number(g) is None
    assert independence_number(g, n_cap=40) == 40


def test_lower_bounds_on_clique_union():
    lb = lower_bounds(build_union_complete(Partition.of(6, 3)))
    assert (lb.delta_plus_1, lb.ceil_davg_plus_1, lb.alpha, lb.gamma) == (6, 5, 2, 2)
    assert lb.n_over_alpha == Fraction(9, 2) and lb.floor_n_over_gamma == 4
    assert lb.best() == 6


@settings(max_examples=60)
@given(graphs(max_n=9))
def test_lower_bounds_hold(g):
    if g.m == 0:
        return
    lb = lower_bounds(g)
    assert lambda1(g, exact=False) >= lb.best() - 1e-9


def test_class_degree_bound():
    assert class_degree_bound(9, 18) == 5
    assert class_degree_bound(20, 22) == 4
    assert class_degree_bound(5, 0) is None


def test_certificates():
    res, certs = certify(9, 12)
    assert is_legm(certs) and certs[0].kind == "LELM" and certs[0].basis == "clique-union"
    _, certs = certify(15, 34)
    assert [c.kind for c in certs] == ["LELM"]
    _, certs = certify(3, 2)                     # construction falls short of m
    assert [c.kind for c in certs] == ["LELM"]
    _, certs = certify(9, 18)
    assert "two-component-equality" in {c.basis for c in certs}
    _, certs = certify(4, 0)
    assert not is_legm(certs)


def test_certificate_with_numeric_recheck():
    _, certs = certify(7, 7, verify=True)
    assert certs[0].details["neighborhood"]["verdict"] is True
    assert not is_legm(certs)


def test_oracle_certificate_settles_n8_equality():
    _, certs = certify(8, 16, oracle=True)
    bases = {c.basis for c in certs}
    assert {"two-component-equality", "oracle"} <= bases


def test_complement_of_ring_is_dense():
    ring = build_from_edge_list(5, [(i, (i + 1) % 5) for i in range(5)])
    assert complement(ring).m == 5


def test_random_constructions_are_local_minimisers():
    import random
    from algconn.neighborhood import verify_lelm
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(2, 20)
        m = rng.randint(0, comb(n, 2))
        rep = verify_lelm(build_union_complete(algorithm1(n, m).partition))
        assert rep.verdict, (n, m, rep.violating_move)


@given(st.integers(2, 80).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n // 2))))
def test_float_evaluation_only_differs_on_the_boundary(nl):
    n, ell = nl
    status, value = check_two_component_condition(n, ell)
    approx = ell - 2 * ell * ell / n
    if abs(approx - 1) > 1e-9:
        assert (approx < 1) == (status == STRICT)
    else:
        assert status == EQUALITY


@given(partitions(max_n=30))
def test_square_sum_value_is_nonnegative(p):
    assert check_multi_component_condition(p)[1] >= 0


@pytest.mark.parametrize("sizes", [(3, 3, 3), (2, 2, 2, 2), (4, 4), (5,)])
def test_independence_bound_is_tight_on_equal_cliques(sizes):
    g = build_union_complete(Partition(sizes))
    lb = lower_bounds(g)
    assert lb.alpha == len(sizes)
    assert lambda1(g) == lb.n_over_alpha


def test_every_legm_certificate_carries_a_matching_bound():
    for n in range(1, 13):
        for m in range(1, comb(n, 2) + 1):
            _, certs = certify(n, m)
            for c in certs:
                if c.kind == "LEGM":
                    assert c.details["lower_bound"] == c.lambda1


@pytest.mark.parametrize("m", range(0, 22))
def test_certificates_agree_with_search_at_n7(m):
    from algconn.search import search_canonical
    res, certs = certify(7, m)
    if is_legm(certs):
        assert search_canonical(7, m).min_lambda1 == pytest.approx(res.lambda1, abs=1e-6)


def test_empty_graph_bounds():
    lb = lower_bounds(Graph.empty(6))
    assert lb.delta_plus_1 is None and lb.alpha == 6 and lb.gamma == 6
    assert lb.n_over_alpha == 1 and lb.floor_n_over_gamma == 1
