"""Weak r-reachability and weak colouring numbers under a vertex ordering."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits, popcount, smallest_last_ordering


class CapabilityError(RuntimeError):
    """An exact routine was asked to run beyond its supported size."""


@dataclass(frozen=True)
class VertexOrdering:
    perm: tuple[int, ...]
    position: tuple[int, ...]

    @classmethod
    def from_sequence(cls, seq) -> "VertexOrdering":
        perm = tuple(seq)
        pos = [0] * len(perm)
        for i, v in enumerate(perm):
            pos[v] = i
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("not a permutation")
        return cls(perm, tuple(pos))

    def less(self, u: int, v: int) -> bool:
        return self.position[u] < self.position[v]


@dataclass(frozen=True)
class WeakReachIndex:
    radius: int
    ordering: VertexOrdering
    sets: tuple[int, ...]  # bitmask WR_r(v) per vertex

    @property
    def wcol(self) -> int:
        return max((popcount(s) for s in self.sets), default=0)

    def reach(self, v: int) -> set[int]:
        return set(bits(self.sets[v]))


def weak_reach_sets(g: Graph, sigma: VertexOrdering, r: int) -> WeakReachIndex:
    """WR_r(G, σ, v) for all v.

    For every target u, a BFS of depth r from u restricted to vertices σ-below
    u finds exactly the v with u ∈ WR_r(v).
    """
    if r < 0:
        raise ValueError("radius must be >= 0")
    sets = [1 << v for v in range(g.n)]
    below = 0
    for u in sigma.perm:
        seen = 1 << u
        frontier = seen
        for _ in range(r):
            nxt = 0
            for w in bits(frontier):
                nxt |= g.nbr[w]
            nxt &= below & ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
        for v in bits(seen & ~(1 << u)):
            sets[v] |= 1 << u
        below |= 1 << u
    return WeakReachIndex(r, sigma, tuple(sets))


def wcol(g: Graph, sigma: VertexOrdering, r: int) -> int:
    return weak_reach_sets(g, sigma, r).wcol


def greedy_ordering(g: Graph) -> VertexOrdering:
    # reverse smallest-last: the σ-larger neighbours of v are its back-neighbours
    return VertexOrdering.from_sequence(reversed(smallest_last_ordering(g)))


def exact_ordering(g: Graph, r: int) -> VertexOrdering:
    """An ordering minimising wcol_r by branch and bound (n ≤ 10).

    Vertices are placed from the σ-largest down.  Placing u while ``rest``
    (u included) is still unplaced charges u to every v ∈ rest within
    distance r of u in g[rest]; nothing placed later changes that charge.
    """
    if g.n > 10:
        raise CapabilityError("exact ordering search supports n <= 10")
    start = greedy_ordering(g)
    best_val = wcol(g, start, r)
    best = list(start.perm)
    count = [0] * g.n
    placed: list[int] = []

    def charge(u: int, rest: int) -> int:
        seen = 1 << u
        frontier = seen
        for _ in range(r):
            nxt = 0
            for w in bits(frontier):
                nxt |= g.nbr[w]
            nxt &= rest & ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
        return seen

    def rec(rest: int, cur: int):
        nonlocal best_val, best
        if not rest:
            if cur < best_val:
                best_val = cur
                best = list(reversed(placed))
            return
        for u in bits(rest):
            hit = charge(u, rest)
            for v in bits(hit):
                count[v] += 1
            worst = max(cur, max(count[v] for v in bits(hit)))
            if worst < best_val:
                placed.append(u)
                rec(rest & ~(1 << u), worst)
                placed.pop()
            for v in bits(hit):
                count[v] -= 1

    rec(g.all_mask, 0)
    return VertexOrdering.from_sequence(best)


def choose_ordering(g: Graph, r: int, mode: str = "greedy") -> VertexOrdering:
    if mode == "greedy":
        return greedy_ordering(g)
    if mode == "exact":
        return exact_ordering(g, r)
    raise ValueError(f"unknown ordering mode {mode!r}")


def augment(g: Graph, sigma: VertexOrdering, r: int) -> Graph:
    """Add an edge from every v to each vertex weakly r-reachable from it."""
    idx = weak_reach_sets(g, sigma, r)
    extra = [(v, u) for v in range(g.n) for u in bits(idx.sets[v]) if u != v]
    return Graph.from_edges(g.n, g.edges() + extra)
