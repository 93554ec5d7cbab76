"""Brute-force reference implementations used only by the tests.

Nothing here imports the algorithmic modules of the package; graphs are
read through their public ``n``/``edges()`` view only.
"""
from __future__ import annotations

import itertools

import networkx as nx


def adjacency(g) -> list[set[int]]:
    adj = [set() for _ in range(g.n)]
    for u, v in g.edges():
        adj[u].add(v)
        adj[v].add(u)
    return adj


def copy_maps(g, pattern):
    """All injective edge-preserving maps as image tuples."""
    adj = adjacency(g)
    pe = pattern.edges()
    return [img for img in itertools.permutations(range(g.n), pattern.n)
            if all(img[b] in adj[img[a]] for a, b in pe)]


def copy_sets(g, patterns, within=None) -> set[frozenset[int]]:
    out = set()
    for p in patterns:
        for img in copy_maps(g, p):
            s = frozenset(img)
            if within is None or s <= within:
                out.add(s)
    return out


def is_free(g, patterns, removed=()) -> bool:
    rem = set(removed)
    return not any(not (s & rem) for s in copy_sets(g, patterns))


def min_hitting_size(g, patterns, cap=None):
    sets = copy_sets(g, patterns)
    for size in range(g.n + 1):
        if cap is not None and size > cap:
            return None
        for S in itertools.combinations(range(g.n), size):
            ss = set(S)
            if all(s & ss for s in sets):
                return size
    return None


def min_weight_hitting(g, patterns, k, w):
    """(weight, S) or None, over all S with |S| ≤ k."""
    sets = copy_sets(g, patterns)
    best = None
    for size in range(min(k, g.n) + 1):
        for S in itertools.combinations(range(g.n), size):
            ss = set(S)
            if all(s & ss for s in sets):
                c = sum(w.get(v, 1) for v in S)
                if best is None or c < best[0]:
                    best = (c, S)
    return best


def set_system_min_hitting(sets, k, w=None):
    """Brute-force minimum-weight hitting set of a set system, |S| ≤ k."""
    w = w or {}
    sets = [frozenset(x) for x in sets]
    if any(not x for x in sets):
        return None
    universe = sorted(set().union(*sets)) if sets else []
    best = None
    for size in range(min(k, len(universe)) + 1):
        for S in itertools.combinations(universe, size):
            ss = set(S)
            if all(x & ss for x in sets):
                c = sum(w.get(v, 1) for v in S)
                if best is None or c < best[0]:
                    best = (c, S)
    return best


def simple_paths_from(adj, v, r):
    """All simple paths starting at v with at most r edges."""
    out = []

    def rec(path):
        out.append(tuple(path))
        if len(path) - 1 == r:
            return
        for u in adj[path[-1]]:
            if u not in path:
                path.append(u)
                rec(path)
                path.pop()

    rec([v])
    return out


def weak_reach(g, position, r, v) -> set[int]:
    """u ∈ WR_r(v) iff some path v..u of length ≤ r has u as its σ-largest vertex."""
    adj = adjacency(g)
    res = set()
    for path in simple_paths_from(adj, v, r):
        u = path[-1]
        if all(position[x] <= position[u] for x in path):
            res.add(u)
    return res


def peeling_degeneracy(g) -> int:
    """max over subgraphs of the min degree, by exhaustive min-degree peeling."""
    adj = adjacency(g)
    alive = set(range(g.n))
    best = 0
    while alive:
        v = min(alive, key=lambda u: len(adj[u] & alive))
        best = max(best, len(adj[v] & alive))
        alive.remove(v)
    return best


def max_clique(g) -> int:
    adj = adjacency(g)
    best = 0 if g.n == 0 else 1
    for size in range(2, g.n + 1):
        found = any(all(b in adj[a] for a, b in itertools.combinations(c, 2))
                    for c in itertools.combinations(range(g.n), size))
        if not found:
            break
        best = size
    return best


def treewidth_exact(g) -> int:
    """Exact treewidth via the subset recurrence over elimination prefixes."""
    n = g.n
    if n == 0:
        return -1
    adj = adjacency(g)
    from functools import lru_cache

    def q(S, v):
        seen, stack, out = {v}, [v], set()
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in seen:
                    continue
                seen.add(y)
                if y in S:
                    stack.append(y)
                else:
                    out.add(y)
        return len(out)

    @lru_cache(maxsize=None)
    def tw(S):
        if not S:
            return -1
        return min(max(tw(S - {v}), q(S - {v}, v)) for v in S)

    return tw(frozenset(range(n)))


def max_disjoint(sets) -> int:
    sets = [frozenset(x) for x in sets]
    best = 0
    for size in range(len(sets), 0, -1):
        for combo in itertools.combinations(sets, size):
            if all(not (a & b) for a, b in itertools.combinations(combo, 2)):
                return size
    return best


def is_sunflower(sets) -> bool:
    sets = [frozenset(x) for x in sets]
    if len(sets) < 2:
        return True
    core = frozenset.intersection(*sets)
    return all(a & b == core for a, b in itertools.combinations(sets, 2))


def nx_graph(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h
