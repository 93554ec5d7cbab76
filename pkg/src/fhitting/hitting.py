"""Gaifman graphs, tree decompositions and the bounded-cardinality
minimum-weight hitting-set DP.

The DP works on the auxiliary graph H: the Gaifman graph of 𝒳 plus one
sentinel vertex x_i per set X_i, adjacent to exactly X_i.  S hits 𝒳 iff S
(a set of real vertices) dominates every sentinel.  A decomposition of the
Gaifman graph extends to H by hanging a bag X_i ∪ {x_i} below any bag that
contains the clique X_i.
"""
from __future__ import annotations

import itertools
import json
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .graph import Graph, bits, popcount, to_mask
from .wcol import CapabilityError


class ContractError(ValueError):
    """Inputs violate a precondition (for example a decomposition that does
    not belong to the instance)."""


@dataclass(frozen=True)
class GaifmanGraph:
    vertices: tuple[int, ...]        # compact id -> original id
    graph: Graph
    cover: dict                      # compact edge (u, v) -> index of a set containing it

    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}


def gaifman_graph(sets: Iterable[Iterable[int]]) -> GaifmanGraph:
    sets = [sorted(set(x)) for x in sets]
    verts = sorted({v for x in sets for v in x})
    idx = {v: i for i, v in enumerate(verts)}
    cover: dict[tuple[int, int], int] = {}
    for si, x in enumerate(sets):
        for a, b in itertools.combinations(x, 2):
            cover.setdefault((idx[a], idx[b]), si)
    return GaifmanGraph(tuple(verts), Graph.from_edges(len(verts), list(cover)), cover)


# -- tree decompositions --------------------------------------------------

@dataclass
class TreeDecomposition:
    bags: list[frozenset[int]]
    parent: list[int]                # -1 for the root

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def children(self) -> list[list[int]]:
        ch: list[list[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(i)
        return ch

    def validate(self, g: Graph) -> list[str]:
        """Problems found; empty when the three axioms hold and the tree is a tree."""
        errs = []
        n_nodes = len(self.bags)
        if g.n and not n_nodes:
            return ["no bags"]
        roots = [i for i, p in enumerate(self.parent) if p < 0]
        if n_nodes and len(roots) != 1:
            errs.append(f"expected one root, found {len(roots)}")
        depth_ok = [False] * n_nodes
        for i in range(n_nodes):
            seen, j = set(), i
            while j >= 0 and not depth_ok[j]:
                if j in seen or not 0 <= j < n_nodes:
                    errs.append("parent links contain a cycle")
                    return errs
                seen.add(j)
                j = self.parent[j]
            for j in seen:
                depth_ok[j] = True
        covered = set().union(*self.bags) if self.bags else set()
        if any(v not in covered for v in range(g.n)):
            errs.append("some vertex lies in no bag")
        if any(v >= g.n or v < 0 for v in covered):
            errs.append("bag contains a foreign vertex")
        for u, v in g.edges():
            if not any(u in b and v in b for b in self.bags):
                errs.append(f"edge {u}-{v} in no bag")
                break
        for v in covered:
            nodes = {i for i, b in enumerate(self.bags) if v in b}
            # connected iff exactly one node has its parent outside the set
            tops = [i for i in nodes if self.parent[i] not in nodes]
            if len(tops) != 1:
                errs.append(f"bags of vertex {v} are not connected")
                break
        return errs

    def is_valid(self, g: Graph) -> bool:
        return not self.validate(g)

    def to_dict(self) -> dict:
        return {"bags": [sorted(b) for b in self.bags], "parent": list(self.parent)}


def _elimination_order(g: Graph, rule: str) -> list[int]:
    nbr = [set(a) for a in g.adj]
    alive = set(range(g.n))
    order = []
    while alive:
        if rule == "min-degree":
            v = min(alive, key=lambda u: (len(nbr[u]), u))
        else:
            def fill(u):
                ns = list(nbr[u])
                return sum(1 for a, b in itertools.combinations(ns, 2) if b not in nbr[a])
            v = min(alive, key=lambda u: (fill(u), len(nbr[u]), u))
        ns = list(nbr[v])
        for a, b in itertools.combinations(ns, 2):
            nbr[a].add(b)
            nbr[b].add(a)
        for a in ns:
            nbr[a].discard(v)
        alive.discard(v)
        order.append(v)
    return order


def decomposition_from_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """One bag per vertex: v plus its later neighbours in the filled graph."""
    pos = {v: i for i, v in enumerate(order)}
    nbr = [set(a) for a in g.adj]
    bags, parent = [], []
    for v in order:
        later = {u for u in nbr[v] if pos[u] > pos[v]}
        for a, b in itertools.combinations(later, 2):
            nbr[a].add(b)
            nbr[b].add(a)
        bags.append(frozenset(later | {v}))
        parent.append(pos[min(later, key=pos.__getitem__)] if later else -1)
    if not bags:
        return TreeDecomposition([frozenset()], [-1])
    roots = [i for i, p in enumerate(parent) if p < 0]
    for a, b in zip(roots, roots[1:]):
        parent[a] = b  # chain the components' roots; shared bags are empty
    return TreeDecomposition(bags, parent)


def _exact_order(g: Graph) -> list[int]:
    """Elimination order of minimum width by branch and bound over the
    eliminated set (the filled graph depends only on that set)."""
    n = g.n
    best_order = _elimination_order(g, "min-fill")
    best = decomposition_from_order(g, best_order).width if n else -1
    memo: dict[int, int] = {}

    def q(S: int, v: int) -> int:
        # neighbours of v in the filled graph after eliminating S
        seen = 1 << v
        frontier = seen
        out = 0
        while frontier:
            nxt = 0
            for w in bits(frontier):
                nxt |= g.nbr[w]
            nxt &= ~seen
            seen |= nxt
            out |= nxt & ~S
            frontier = nxt & S
        return out

    path: list[int] = []

    def rec(S: int, cur: int):
        nonlocal best, best_order
        if cur >= best:
            return
        rest = (1 << n) - 1 & ~S
        if popcount(rest) - 1 <= cur:
            # any completion keeps width ≤ max(cur, |rest| - 1)
            best = cur
            best_order = path + bits(rest)
            return
        m = memo.get(S)
        if m is not None and m <= cur:
            return
        memo[S] = cur
        cands = []
        for v in bits(rest):
            d = popcount(q(S, v))
            cands.append((d, v))
        cands.sort()
        if max(cur, cands[0][0]) >= best:
            return
        for d, v in cands:
            w = max(cur, d)
            if w >= best:
                break
            path.append(v)
            rec(S | 1 << v, w)
            path.pop()
            if d == 0:
                break  # an isolated vertex can go first at no cost

    if n:
        rec(0, 0)
    return best_order


def tree_decomposition(g: Graph, mode: str = "heuristic") -> TreeDecomposition:
    if mode == "exact":
        if g.n > 18:
            raise CapabilityError("exact tree decomposition supports n <= 18")
        td = decomposition_from_order(g, _exact_order(g))
    elif mode == "heuristic":
        cands = [decomposition_from_order(g, _elimination_order(g, r))
                 for r in ("min-fill", "min-degree")]
        td = min(cands, key=lambda t: t.width)
    else:
        raise ValueError(f"unknown decomposition mode {mode!r}")
    errs = td.validate(g)
    if errs:
        raise AssertionError("invalid decomposition: " + "; ".join(errs))
    return td


# -- hitting instances ----------------------------------------------------

@dataclass
class HittingInstance:
    sets: list[frozenset[int]]
    weights: Mapping[int, float] = field(default_factory=dict)   # missing -> 1
    k: int = 0

    def __post_init__(self):
        self.sets = [frozenset(x) for x in self.sets]
        if self.k < 0:
            raise ValueError("k must be >= 0")
        for v, w in self.weights.items():
            if not (isinstance(w, (int, float)) and math.isfinite(w) and w >= 0):
                raise ValueError(f"weight of {v} must be finite and >= 0")

    @property
    def infeasible(self) -> bool:
        """An empty set can never be hit."""
        return any(not x for x in self.sets)

    def weight(self, v: int):
        return self.weights.get(v, 1)

    def cost(self, S) -> float:
        return sum(self.weight(v) for v in S)

    def hits(self, S) -> bool:
        s = set(S)
        return all(x & s for x in self.sets)

    def dumps(self) -> str:
        return json.dumps({"k": self.k, "sets": [sorted(x) for x in self.sets],
                           "weights": {str(v): w for v, w in sorted(self.weights.items())}})

    @classmethod
    def loads(cls, text: str) -> "HittingInstance":
        d = json.loads(text)
        return cls([frozenset(x) for x in d["sets"]],
                   {int(v): w for v, w in d.get("weights", {}).items()}, d["k"])


def greedy_hit(inst: HittingInstance) -> set[int]:
    used: set[int] = set()
    for x in inst.sets:
        if not x & used:
            used |= x
    return used


def auxiliary_graph(inst: HittingInstance, gg: GaifmanGraph) -> tuple[Graph, list[int]]:
    """H on compact ids: Gaifman vertices 0..m-1 then one sentinel per set."""
    idx = gg.index()
    m = gg.graph.n
    edges = list(gg.graph.edges())
    sentinels = []
    for i, x in enumerate(inst.sets):
        s = m + i
        sentinels.append(s)
        edges += [(idx[v], s) for v in x]
    return Graph.from_edges(m + len(inst.sets), edges), sentinels


def extend_decomposition(td: TreeDecomposition, inst: HittingInstance,
                         gg: GaifmanGraph) -> TreeDecomposition:
    idx = gg.index()
    m = gg.graph.n
    bags = list(td.bags)
    parent = list(td.parent)
    for i, x in enumerate(inst.sets):
        cx = frozenset(idx[v] for v in x)
        host = next((j for j, b in enumerate(td.bags) if cx <= b), None)
        if host is None:
            raise ContractError("decomposition has no bag containing a set of the instance")
        bags.append(cx | {m + i})
        parent.append(host)
    return TreeDecomposition(bags, parent)


def _introduce(table, v, real, sent_adj, weight, k, bagmask):
    out = {}
    vb = 1 << v
    for (ins, dom, cnt), (w, sol) in table.items():
        if real:
            _put(out, (ins, dom, cnt), w, sol)
            if weight is not None and cnt < k:
                _put(out, (ins | vb, dom | sent_adj[v] & bagmask, cnt + 1), w + weight, sol | vb)
        else:
            d = dom | (vb if sent_adj[v] & ins else 0)
            _put(out, (ins, d, cnt), w, sol)
    return out


def _put(table, key, w, sol):
    cur = table.get(key)
    if cur is None or (w, popcount(sol), sol) < (cur[0], popcount(cur[1]), cur[1]):
        table[key] = (w, sol)


def min_weight_hitting_set(inst: HittingInstance, td: TreeDecomposition | None = None,
                           gg: GaifmanGraph | None = None):
    """Minimum-weight S with |S| ≤ k hitting every set, as (sorted ids,
    weight), or None when no such S exists."""
    if inst.infeasible:
        return None
    if not inst.sets:
        return [], 0
    if gg is None:
        gg = gaifman_graph(inst.sets)
    if td is None:
        td = tree_decomposition(gg.graph)
    errs = td.validate(gg.graph)
    if errs:
        raise ContractError("decomposition does not fit the instance: " + errs[0])
    m = gg.graph.n
    H, sentinels = auxiliary_graph(inst, gg)
    etd = extend_decomposition(td, inst, gg)
    is_sent = [False] * m + [True] * len(sentinels)
    # adjacency toward sentinels (real v -> sentinels) and toward reals (x -> reals)
    sent_adj = [H.nbr[v] & ~((1 << m) - 1) if v < m else H.nbr[v] for v in range(H.n)]
    wts = [inst.weight(v) for v in gg.vertices]
    k = inst.k

    children = etd.children()
    root = etd.parent.index(-1)
    order, stack = [], [root]
    while stack:
        j = stack.pop()
        order.append(j)
        stack.extend(children[j])
    tables: dict[int, dict] = {}
    for j in reversed(order):
        bag = etd.bags[j]
        bagmask = to_mask(bag)
        acc = None
        kids = children[j] or [None]
        for c in kids:
            if c is None:
                t = {(0, 0, 0): (0, 0)}
                cur = 0
            else:
                t = tables.pop(c)
                cur = to_mask(etd.bags[c])
            for v in sorted(bits(cur & ~bagmask)):
                t = _forget(t, v, is_sent[v])
                cur &= ~(1 << v)
            for v in sorted(bits(bagmask & ~cur), key=lambda u: (is_sent[u], u)):
                cur |= 1 << v
                t = _introduce(t, v, not is_sent[v], sent_adj, None if is_sent[v] else wts[v], k, cur)
            acc = t if acc is None else _join(acc, t, k, wts)
        tables[j] = acc
    final = tables[root]
    for v in bits(to_mask(etd.bags[root])):
        final = _forget(final, v, is_sent[v])
    if not final:
        return None
    w, sol = min(final.values(), key=lambda x: (x[0], popcount(x[1]), x[1]))
    return sorted(gg.vertices[v] for v in bits(sol)), w


def _forget(table, v, sentinel):
    out = {}
    vb = 1 << v
    for (ins, dom, cnt), (w, sol) in table.items():
        if sentinel and not dom & vb:
            continue
        _put(out, (ins & ~vb, dom & ~vb, cnt), w, sol)
    return out


def _join(a, b, k, wts):
    by_ins: dict[int, list] = {}
    for (ins, dom, cnt), val in b.items():
        by_ins.setdefault(ins, []).append((dom, cnt, val))
    out = {}
    for (ins, dom, cnt), (w, sol) in a.items():
        shared = popcount(ins)
        sw = sum(wts[v] for v in bits(ins))
        for dom2, cnt2, (w2, sol2) in by_ins.get(ins, ()):
            c = cnt + cnt2 - shared
            if c > k:
                continue
            _put(out, (ins, dom | dom2, c), w + w2 - sw, sol | sol2)
    return out
