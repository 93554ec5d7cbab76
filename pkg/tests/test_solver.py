import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs, random_graph
from fhitting.graph import Graph
from fhitting.pattern import complete_graph, cycle_graph, path_graph, preset_family
from fhitting.solver import (SolverConfig, WeightedInstance, naive_copy_sets, oracle_solve, solve,
                             verify_hitting, write_result)
import oracles


def run(g, fam, k, w=None, **cfg):
    return solve(WeightedInstance(g, preset_family(fam), k, w or {}), SolverConfig(**cfg))[0]


def test_solver_examples():
    sol = run(path_graph(3), "k2", 1)
    assert sol.vertices == (1,) and sol.weight == 1 and sol.verified
    assert run(cycle_graph(4), "p3", 2).weight == 2
    assert run(cycle_graph(4), "p3", 1) is None
    assert run(complete_graph(4), "k3", 2).weight == 2


def test_oracle_examples():
    k3 = complete_graph(3)
    assert oracle_solve(WeightedInstance(k3, preset_family("k2"), 2)).weight == 2
    assert oracle_solve(WeightedInstance(k3, preset_family("k2"), 1)) is None
    s = oracle_solve(WeightedInstance(cycle_graph(5), preset_family("k3"), 0))
    assert s.weight == 0 and s.vertices == ()
    for method in ("bnb", "subsets"):
        assert oracle_solve(WeightedInstance(cycle_graph(4), preset_family("p3"), 2), method).weight == 2
    with pytest.raises(ValueError):
        oracle_solve(WeightedInstance(k3, preset_family("k2"), 1), "magic")


def test_naive_enumerator_matches_test_oracle():
    rnd = random.Random(12)
    for _ in range(20):
        g = random_graph(rnd, rnd.randint(1, 8), 0.4)
        fam = preset_family(rnd.choice(["p3", "c4", "star2", "2k2"]))
        assert naive_copy_sets(g, fam) == oracles.copy_sets(g, fam.patterns)


def test_weights_change_answer():
    w = {1: 5}
    sol = run(path_graph(3), "k2", 2, w)
    assert sol.vertices == (0, 2) and sol.weight == 2
    # with k=1 only the heavy middle vertex works
    assert run(path_graph(3), "k2", 1, w).weight == 5


def test_weighted_skips_kernel():
    inst = WeightedInstance(path_graph(3), preset_family("k2"), 2, {1: 5})
    _, rep = solve(inst)
    assert "kernel_n" not in rep
    assert any("not uniform" in n for n in rep["notes"])
    _, rep = solve(WeightedInstance(path_graph(3), preset_family("k2"), 2))
    assert rep["kernel_n"] <= 3


def test_instance_validation():
    with pytest.raises(ValueError):
        WeightedInstance(path_graph(3), preset_family("k2"), -1)
    with pytest.raises(ValueError):
        WeightedInstance(path_graph(3), preset_family("k2"), 1, {0: -2})
    with pytest.raises(ValueError):
        WeightedInstance(path_graph(3), preset_family("k2"), 1, {7: 1})


@settings(max_examples=40)
@given(graphs(max_n=9), st.sampled_from(["k2", "p3", "k3", "c4", "2k2"]), st.integers(0, 4),
       st.booleans(), st.randoms(use_true_random=False))
def test_matches_oracle(g, fam, k, weighted, rnd):
    w = {v: rnd.randint(1, 10) for v in range(g.n)} if weighted else {}
    inst = WeightedInstance(g, preset_family(fam), k, w)
    got, rep = solve(inst)
    ref = oracle_solve(inst)
    assert (got is None) == (ref is None)
    if got is not None:
        assert got.weight == ref.weight
        assert verify_hitting(g, inst.family, got.vertices) and len(got.vertices) <= k
        assert got.certificate.startswith("collection:")


def test_monotone_in_k():
    rnd = random.Random(4)
    for _ in range(15):
        g = random_graph(rnd, rnd.randint(3, 9), 0.45)
        w = {v: rnd.randint(1, 10) for v in range(g.n)}
        prev = None
        for k in range(5):
            sol = run(g, "p3", k, w)
            cur = None if sol is None else sol.weight
            if prev is not None:
                assert cur is not None and cur <= prev
            prev = cur


def test_toggles_agree():
    rnd = random.Random(8)
    for _ in range(10):
        g = random_graph(rnd, rnd.randint(3, 9), 0.4)
        base = run(g, "k3", 2)
        for cfg in ({"kernel": False}, {"td_mode": "exact"}, {"ordering": "exact"},
                    {"budget_policy": "formula"}, {"delta": 3, "tau": 2}):
            other = run(g, "k3", 2, **cfg)
            assert (base is None) == (other is None)
            if base:
                assert base.weight == other.weight


def test_report_and_result_files(tmp_path):
    sol, rep = solve(WeightedInstance(cycle_graph(4), preset_family("p3"), 2))
    for key in ("t", "tree_size", "max_width", "mean_width", "budgets", "times"):
        assert key in rep
    write_result(sol, rep, tmp_path / "r.txt", tmp_path / "s.json")
    text = (tmp_path / "r.txt").read_text()
    assert text.startswith("status solved") and "weight 2" in text
    import json
    assert json.loads((tmp_path / "s.json").read_text())["solution"]["weight"] == 2
    write_result(None, rep, tmp_path / "r.txt", tmp_path / "s.json")
    assert (tmp_path / "r.txt").read_text().startswith("status infeasible")
