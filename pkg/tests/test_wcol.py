import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from fhitting.pattern import complete_graph, cycle_graph, path_graph, star_graph
from fhitting.wcol import (CapabilityError, VertexOrdering, augment, choose_ordering,
                           exact_ordering, greedy_ordering, weak_reach_sets, wcol)
import oracles


def ident(n):
    return VertexOrdering.from_sequence(range(n))


def test_examples():
    idx = weak_reach_sets(path_graph(3), ident(3), 1)
    assert idx.reach(1) == {1, 2}
    g = cycle_graph(5)
    assert all(weak_reach_sets(g, ident(5), 0).reach(v) == {v} for v in range(5))
    # path 0-1-2 has 2 as its largest vertex, so 2 is weakly 2-reachable from 0
    c4 = weak_reach_sets(cycle_graph(4), ident(4), 2)
    assert c4.reach(0) == oracles.weak_reach(cycle_graph(4), list(range(4)), 2, 0) == {0, 1, 2, 3}


def test_ordering_rejects_non_permutation():
    with pytest.raises(ValueError):
        VertexOrdering.from_sequence([0, 0, 1])


@given(graphs(max_n=10), st.integers(0, 4), st.randoms(use_true_random=False))
def test_wr_matches_path_enumeration(g, r, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    sigma = VertexOrdering.from_sequence(perm)
    idx = weak_reach_sets(g, sigma, r)
    for v in range(g.n):
        assert idx.reach(v) == oracles.weak_reach(g, sigma.position, r, v)


@given(graphs(max_n=9))
def test_wcol_monotone_in_r(g):
    sigma = greedy_ordering(g)
    vals = [wcol(g, sigma, r) for r in range(5)]
    assert vals == sorted(vals)
    for r in range(4):
        a, b = weak_reach_sets(g, sigma, r), weak_reach_sets(g, sigma, r + 1)
        assert all(x & ~y == 0 for x, y in zip(a.sets, b.sets))


def test_exact_examples():
    assert wcol(complete_graph(3), exact_ordering(complete_graph(3), 1), 1) == 3
    assert wcol(path_graph(3), exact_ordering(path_graph(3), 1), 1) == 2
    # brute force over all 6 orderings of P3 agrees
    best = min(wcol(path_graph(3), VertexOrdering.from_sequence(p), 1)
               for p in itertools.permutations(range(3)))
    assert best == 2


def test_star_greedy():
    g = star_graph(4)
    assert wcol(g, choose_ordering(g, 1, "greedy"), 1) == 2


@given(graphs(max_n=6), st.integers(1, 3))
def test_exact_is_optimal(g, r):
    best = min(wcol(g, VertexOrdering.from_sequence(p), r)
               for p in itertools.permutations(range(g.n))) if g.n else 0
    assert wcol(g, exact_ordering(g, r), r) == best


def test_exact_capability():
    with pytest.raises(CapabilityError):
        choose_ordering(path_graph(11), 2, "exact")
    with pytest.raises(ValueError):
        choose_ordering(path_graph(3), 2, "magic")


def test_augment():
    g = cycle_graph(5)
    assert sorted(augment(g, ident(5), 0).edges()) == sorted(g.edges())
    a = augment(path_graph(3), ident(3), 2)
    assert sorted(a.edges()) == [(0, 1), (0, 2), (1, 2)]
    k = complete_graph(5)
    assert augment(k, greedy_ordering(k), 3).m == 10


@given(graphs(max_n=9), st.integers(0, 3))
def test_augment_supergraph(g, r):
    a = augment(g, greedy_ordering(g), r)
    assert a.n == g.n and set(g.edges()) <= set(a.edges())
