import itertools

import pytest
from hypothesis import given

from conftest import graphs
from fhitting.generators import grid
from fhitting.graph import Graph
from fhitting.pattern import (FCopy, PatternFamily, add_apex, all_trees, canonical_form,
                              complete_graph, copy_vertex_sets, cycle_graph, disjoint_union,
                              enumerate_copies, find_constrained_copy, is_family_free,
                              is_valid_copy, path_graph, plus_construction, preset_family,
                              star_graph)
import oracles


def fam(*gs):
    return PatternFamily(list(gs))


def test_copy_counts():
    cs = enumerate_copies(complete_graph(3), fam(complete_graph(2)))
    assert len(cs) == 6 and len(copy_vertex_sets(cs)) == 3
    cs = enumerate_copies(path_graph(3), fam(path_graph(3)))
    assert len(cs) == 2 and len(copy_vertex_sets(cs)) == 1
    cs = enumerate_copies(cycle_graph(4), fam(path_graph(3)))
    assert len(cs) == 8 and len(copy_vertex_sets(cs)) == 4


def test_limit():
    assert len(enumerate_copies(complete_graph(5), fam(complete_graph(3)), limit=4)) == 4


PATTERNS = [complete_graph(2), path_graph(3), complete_graph(3), cycle_graph(4), star_graph(3),
            disjoint_union([complete_graph(2)] * 2), Graph.from_edges(2, [])]


@given(graphs(max_n=8))
def test_enumeration_matches_naive(g):
    for p in PATTERNS:
        ours = enumerate_copies(g, fam(p))
        assert all(is_valid_copy(g, fam(p), c) for c in ours)
        assert sorted(c.image for c in ours) == sorted(oracles.copy_maps(g, p))
        assert len(set(ours)) == len(ours)


def test_enumeration_is_deterministic():
    g = grid(3, 3)
    f = preset_family("c4")
    assert enumerate_copies(g, f) == enumerate_copies(g, f)


def test_family_free_examples():
    assert is_family_free(cycle_graph(5), fam(complete_graph(3)))
    assert not is_family_free(complete_graph(3), fam(complete_graph(3)))
    assert not is_family_free(grid(3, 3), fam(cycle_graph(4)))


def test_constrained_examples():
    c = find_constrained_copy(complete_graph(3), fam(complete_graph(2)), required=[0])
    assert c is not None and 0 in c.image
    assert find_constrained_copy(path_graph(3), fam(complete_graph(2)), forbidden=[1]) is None
    c = find_constrained_copy(complete_graph(4), fam(complete_graph(3)), required=[0],
                              blockers=[[0, 1]])
    assert c.vertices == frozenset({0, 2, 3})
    with pytest.raises(ValueError):
        find_constrained_copy(complete_graph(3), fam(complete_graph(2)), required=[0], forbidden=[0])


@given(graphs(max_n=7))
def test_constrained_matches_bruteforce(g):
    p = path_graph(3)
    sets = oracles.copy_sets(g, [p])
    for req, forb in [((0,), (1,)), ((), (0, 2)), ((1, 2), ())]:
        if any(v >= g.n for v in req + forb):
            continue
        blockers = [frozenset({0, 1})]
        want = [s for s in sets if set(req) <= s and not s & set(forb) and not blockers[0] <= s]
        got = find_constrained_copy(g, fam(p), req, forb, blockers)
        assert (got is None) == (not want)
        if got is not None:
            assert got.vertices in want


def test_plus_construction_examples():
    gp, fp, apex = plus_construction(path_graph(3), fam(complete_graph(2)))
    assert gp.n == 4 and gp.m == 5 and apex == 3
    two_k1 = Graph.from_edges(2, [])
    _, fp, _ = plus_construction(path_graph(3), fam(two_k1))
    assert canonical_form(fp.patterns[0]) == canonical_form(path_graph(3))
    assert fp.all_connected
    g = disjoint_union([complete_graph(2)] * 2)
    f = [g]
    gp, fp, _ = plus_construction(g, fam(g))
    assert oracles.min_hitting_size(g, f) == 1
    assert oracles.min_hitting_size(gp, fp.patterns) == 1


@given(graphs(max_n=7))
def test_plus_construction_preserves_hitting_sets(g):
    f = [disjoint_union([complete_graph(2)] * 2)]
    gp, fp, apex = plus_construction(g, fam(*f))
    a = oracles.copy_sets(g, f)
    b = oracles.copy_sets(gp, fp.patterns)
    for size in range(min(g.n, 3) + 1):
        for S in itertools.combinations(range(g.n), size):
            ss = set(S)
            assert all(x & ss for x in a) == all(x & ss for x in b)


def test_presets():
    assert preset_family("k2").gamma == 2
    assert preset_family("star2").patterns[0].m == 3
    assert len(preset_family("coc4")) == 2
    assert len(preset_family("coc5")) == 3
    assert [p.n for p in preset_family("p3,c4").patterns] == [3, 4]
    f = preset_family("2k2")
    assert f.gamma == 4 and not f.all_connected
    with pytest.raises(ValueError):
        preset_family("q7")


def test_family_dedupes_isomorphic():
    f = PatternFamily([path_graph(3), Graph.from_edges(3, [(0, 2), (2, 1)])])
    assert len(f) == 1


def test_trees_counts():
    assert [len(all_trees(n)) for n in range(1, 8)] == [1, 1, 1, 2, 3, 6, 11]


def test_apex():
    h = add_apex(Graph.from_edges(2, []))
    assert h.m == 2 and h.degree(2) == 2


def test_invalid_copy_detected():
    g = path_graph(3)
    f = fam(complete_graph(2))
    assert not is_valid_copy(g, f, FCopy(0, (0, 2)))
    assert not is_valid_copy(g, f, FCopy(0, (0, 0)))
