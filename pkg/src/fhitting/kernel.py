"""Polynomial kernel: shrink G to an induced subgraph G' whose size-≤k
F-hitting sets are F-hitting sets of G."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import factorial

from .graph import (Graph, back_degrees, bits, clique_number_bounded, degeneracy,
                    induced_subgraph, popcount, smallest_last_ordering)
from .pattern import PatternFamily, copy_vertex_sets, enumerate_copies, find_constrained_copy
from .sunflower import maximal_sunflower_with_core


def kernel_size_bound(gamma: int, k: int) -> int:
    return factorial(gamma) * gamma ** (gamma + 1) * (k + 1) ** gamma


def round_bound(gamma: int, k: int) -> int:
    return factorial(gamma) * gamma ** gamma * (k + 1) ** gamma


def default_degree_threshold(g: Graph, fam: PatternFamily, k: int) -> int:
    return (k + fam.gamma) * degeneracy(g) + 1


@dataclass
class KernelResult:
    kernel: Graph
    kernel_vertices: list[int]       # K as ids of the input graph, sorted
    g0_vertices: list[int]
    cores: list[frozenset[int]]      # the collected set 𝒳, in insertion order
    rounds: list[frozenset[int]]     # V chosen in each while-loop round
    truncated: bool = False
    truncation_skipped: bool = False
    threshold: int = 0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kernel_vertices": self.kernel_vertices,
            "g0_vertices": self.g0_vertices,
            "cores": [sorted(x) for x in self.cores],
            "rounds": [sorted(v) for v in self.rounds],
            "truncated": self.truncated,
            "truncation_skipped": self.truncation_skipped,
            "threshold": self.threshold,
        }

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1)


def _truncate(g: Graph, fam: PatternFamily, k: int, threshold: int):
    order = smallest_last_ordering(g)
    bd = back_degrees(g, order)
    cut = next((i for i, d in enumerate(bd) if d >= threshold), None)
    if cut is None or cut == g.n - 1:
        return list(range(g.n)), False, False
    prefix = sorted(order[:cut + 1])
    g0, _ = induced_subgraph(g, prefix)
    # only drop vertices when the prefix provably has no size-≤k solution:
    # a (k+γ)-clique survives every k deletions with a γ-clique left
    if clique_number_bounded(g0, k + fam.gamma).at_least_cap:
        return prefix, True, False
    return list(range(g.n)), False, True


def _find_round_set(g0: Graph, fam: PatternFamily, K: int, cores: list[int]) -> int | None:
    """Some V ∈ 𝒱_F(G0) with V ⊄ K and no core inside V, via feasible (F, I)."""
    kv = bits(K)
    for idx, p in enumerate(fam.patterns):
        single = PatternFamily([p])
        for size in range(min(p.n - 1, len(kv)) + 1):
            for combo in itertools.combinations(kv, size):
                I = sum(1 << v for v in combo)
                if any(x & I == x for x in cores):
                    continue
                c = find_constrained_copy(g0, single, required=I, forbidden=K & ~I)
                if c is not None:
                    return c.mask
    return None


def kernelize(g: Graph, fam: PatternFamily, k: int, degree_threshold: int | None = None) -> KernelResult:
    if k < 0:
        raise ValueError("k must be >= 0")
    if degree_threshold is None:
        degree_threshold = default_degree_threshold(g, fam, k)
    if degree_threshold < 1:
        raise ValueError("degree_threshold must be >= 1")
    g0_ids, truncated, skipped = _truncate(g, fam, k, degree_threshold)
    g0, relabel = induced_subgraph(g, g0_ids)
    back = {i: v for v, i in relabel.items()}
    gamma = fam.gamma

    K = 0
    cores: list[int] = []
    core_set: set[int] = set()
    rounds: list[int] = []
    while True:
        V = _find_round_set(g0, fam, K, cores)
        if V is None:
            break
        K |= V
        rounds.append(V)
        gk, rl = induced_subgraph(g0, K)
        inv = {i: v for v, i in rl.items()}
        local = copy_vertex_sets(enumerate_copies(gk, fam))
        sets = [sum(1 << inv[i] for i in bits(s)) for s in local]
        # only subsets of copy vertex sets can head a sunflower
        candidates: set[int] = set()
        for s in sets:
            vs = bits(s)
            for size in range(min(gamma - 1, len(vs)) + 1):
                for combo in itertools.combinations(vs, size):
                    candidates.add(sum(1 << v for v in combo))
        for X in sorted(candidates, key=lambda m: (popcount(m), bits(m))):
            if X in core_set:
                continue
            if len(maximal_sunflower_with_core(sets, X)) > k:
                cores.append(X)
                core_set.add(X)

    kv = sorted(back[i] for i in bits(K))
    kernel, _ = induced_subgraph(g, kv)
    res = KernelResult(
        kernel=kernel,
        kernel_vertices=kv,
        g0_vertices=sorted(g0_ids),
        cores=[frozenset(back[i] for i in bits(x)) for x in cores],
        rounds=[frozenset(back[i] for i in bits(v)) for v in rounds],
        truncated=truncated,
        truncation_skipped=skipped,
        threshold=degree_threshold,
    )
    if skipped:
        res.notes.append("truncation skipped: prefix not certified infeasible")
    return res
