"""Simple undirected graphs on dense integer vertex ids.

Vertex sets are passed around as Python int bitmasks internally (bit ``v`` set
means vertex ``v`` is present); the public helpers also accept iterables.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field


class GraphInputError(ValueError):
    """Raised for malformed graph input (bad ids, loops, parse errors)."""


def to_mask(vs: Iterable[int] | int) -> int:
    if isinstance(vs, int):
        return vs
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def bits(mask: int) -> list[int]:
    """Vertices of a bitmask in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    nbr: tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"loop at vertex {u}")
            sets[u].add(v)
            sets[v].add(u)
        adj = tuple(tuple(sorted(s)) for s in sets)
        nbr = tuple(to_mask(s) for s in sets)
        return cls(n, adj, nbr)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.nbr[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def induced_subgraph(g: Graph, vs: Iterable[int] | int) -> tuple[Graph, dict[int, int]]:
    """Return ``g[vs]`` relabelled to ``0..|vs|-1`` plus the old->new map."""
    if isinstance(vs, int):
        if vs >> g.n:
            raise GraphInputError("vertex mask exceeds graph order")
        keep = bits(vs)
    else:
        keep = sorted(set(vs))
        for v in keep:
            if not 0 <= v < g.n:
                raise GraphInputError(f"vertex {v} out of range for n={g.n}")
    relabel = {v: i for i, v in enumerate(keep)}
    edges = [(relabel[u], relabel[v]) for u in keep for v in g.adj[u]
             if v in relabel and u < v]
    return Graph.from_edges(len(keep), edges), relabel


def delete_vertices(g: Graph, vs: Iterable[int] | int) -> tuple[Graph, list[int]]:
    """``g - vs``; returns the graph and the new->old id list."""
    drop = to_mask(vs)
    keep = [v for v in range(g.n) if not drop >> v & 1]
    h, _ = induced_subgraph(g, keep)
    return h, keep


def smallest_last_ordering(g: Graph) -> list[int]:
    """Smallest-last ordering ``(v_1, ..., v_n)``.

    ``v_n`` is a minimum-degree vertex of ``g``, ``v_{n-1}`` one of ``g - v_n``
    and so on.  Ties go to the smallest vertex id.  Bucket queue, O(n + m).
    """
    n = g.n
    deg = [len(a) for a in g.adj]
    maxdeg = max(deg, default=0)
    buckets: list[set[int]] = [set() for _ in range(maxdeg + 1)]
    for v in range(n):
        buckets[deg[v]].add(v)
    removed = [False] * n
    peel: list[int] = []
    d = 0
    for _ in range(n):
        d = max(d - 1, 0)
        while not buckets[d]:
            d += 1
        v = min(buckets[d])
        buckets[d].remove(v)
        removed[v] = True
        peel.append(v)
        for u in g.adj[v]:
            if not removed[u]:
                buckets[deg[u]].remove(u)
                deg[u] -= 1
                buckets[deg[u]].add(u)
    peel.reverse()
    return peel


def back_degrees(g: Graph, order: list[int]) -> list[int]:
    """``|N(v_i) ∩ {v_1..v_i}|`` for each position ``i``."""
    seen = 0
    out = []
    for v in order:
        out.append(popcount(g.nbr[v] & seen))
        seen |= 1 << v
    return out


def degeneracy(g: Graph) -> int:
    return max(back_degrees(g, smallest_last_ordering(g)), default=0)


def connected_components(g: Graph, within: int | None = None) -> list[list[int]]:
    """Components of ``g`` (or of ``g[within]`` when a mask is given)."""
    todo = g.all_mask if within is None else within
    comps = []
    while todo:
        start = todo & -todo
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.nbr[v]
            nxt &= todo & ~comp
            comp |= nxt
            frontier = nxt
        todo &= ~comp
        comps.append(bits(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


@dataclass(frozen=True)
class CliqueBound:
    """Result of :func:`clique_number_bounded`.

    ``at_least_cap`` means the clique number reached ``cap``; ``witness`` is
    then a clique of exactly ``cap`` vertices.  Otherwise ``value`` is ω.
    """
    value: int
    at_least_cap: bool
    witness: tuple[int, ...]


def clique_number_bounded(g: Graph, cap: int, within: int | None = None) -> CliqueBound:
    """Maximum clique size, capped: stop as soon as a ``cap``-clique is found.

    Branch and bound over the degeneracy ordering: each vertex only extends
    into its later neighbours, so candidate sets have size ≤ degeneracy.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    alive = g.all_mask if within is None else within
    if not alive:
        return CliqueBound(0, False, ())
    order = [v for v in smallest_last_ordering(g) if alive >> v & 1]
    pos = {v: i for i, v in enumerate(order)}
    best: list[int] = []

    def expand(clique: list[int], cand: int) -> bool:
        nonlocal best
        if len(clique) > len(best):
            best = list(clique)
            if len(best) >= cap:
                return True
        if not cand or len(clique) + popcount(cand) <= len(best):
            return False
        for v in bits(cand):
            if len(clique) + popcount(cand) <= len(best):
                return False
            cand &= ~(1 << v)
            clique.append(v)
            if expand(clique, cand & g.nbr[v]):
                return True
            clique.pop()
        return False

    for v in reversed(order):
        # v with earlier neighbours only: those are ≤ degeneracy many
        earlier = 0
        for u in g.adj[v]:
            if alive >> u & 1 and pos[u] < pos[v]:
                earlier |= 1 << u
        if 1 + popcount(earlier) <= len(best):
            continue
        if expand([v], earlier):
            break
    if len(best) >= cap:
        return CliqueBound(cap, True, tuple(sorted(best[:cap])))
    return CliqueBound(len(best), False, tuple(sorted(best)))
