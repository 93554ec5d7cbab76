"""Branching on heavy cores, clique reduction and their composition into a
bundle of hitting-set collections.

The bundle {𝒳_1, …, 𝒳_t} has the property that a vertex set S with
|S| ≤ k is an F-hitting set of G exactly when S hits every set of some 𝒳_i.
"""
from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from math import ceil, factorial

from .graph import Graph, bits, clique_number_bounded, delete_vertices, popcount, to_mask
from .heavy import HeavyCoreTable, config_sets_pruned, enumerate_heavy_cores
from .pattern import PatternFamily, is_family_free, plus_construction
from .wcol import choose_ordering, wcol

log = logging.getLogger(__name__)


@dataclass
class BranchState:
    U: int
    X: tuple[int, ...]
    d_yes: int
    d_no: int
    path: str = ""
    start: int = 0    # active cores before this index are already in X


@dataclass
class CollectionBundle:
    n: int
    collections: list[list[frozenset[int]]]
    provenance: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.collections)

    def normalize(self) -> "CollectionBundle":
        """Deduplicate collections and sort them canonically."""
        seen: dict[tuple, int] = {}
        for i, col in enumerate(self.collections):
            key = tuple(sorted(tuple(sorted(x)) for x in set(col)))
            seen.setdefault(key, i)
        order = sorted(seen)
        prov = [self.provenance[seen[key]] for key in order] if self.provenance else []
        return CollectionBundle(self.n, [[frozenset(x) for x in key] for key in order], prov,
                                dict(self.stats))

    def hits(self, S) -> int | None:
        """Index of the first collection all of whose sets meet S."""
        s = set(S)
        for i, col in enumerate(self.collections):
            if all(x & s for x in col):
                return i
        return None

    def to_records(self) -> list[dict]:
        out = []
        for i, col in enumerate(self.collections):
            rec = {"sets": [sorted(x) for x in col]}
            if self.provenance:
                rec.update(self.provenance[i])
            out.append(rec)
        return out

    def dumps(self) -> str:
        head = json.dumps({"n": self.n, "t": len(self.collections), "stats": self.stats})
        return "\n".join([head] + [json.dumps(r) for r in self.to_records()]) + "\n"

    @classmethod
    def loads(cls, text: str) -> "CollectionBundle":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = json.loads(lines[0])
        cols, prov = [], []
        for ln in lines[1:]:
            rec = json.loads(ln)
            cols.append([frozenset(x) for x in rec.pop("sets")])
            prov.append(rec)
        if not any(prov):
            prov = []
        return cls(head["n"], cols, prov, head.get("stats", {}))


# -- budgets ---------------------------------------------------------------

def theta_yes_formula(fam: PatternFamily, k: int, delta: int) -> int:
    g = fam.gamma
    return len(fam) * (g ** (2 * g + 1) * delta) ** g * factorial(g) * k


def theta_no_formula(fam: PatternFamily, k: int, delta: int, W: int) -> int | None:
    """None when δ ≤ γ + W, where the formula does not apply."""
    g = fam.gamma
    if delta <= g + W:
        return None
    num = g * len(fam) * (2 * g ** g * (g + W)) ** g * factorial(g) * W
    return ceil(num / (delta - g - W)) * k


def budgets(g: Graph, fam: PatternFamily, k: int, delta: int, policy: str = "complete",
            table: HeavyCoreTable | None = None,
            ordering: str = "greedy") -> tuple[int, int, dict]:
    """(θ_yes, θ_no, info).

    ``complete``: θ_yes = number of distinct heavy-core vertex sets and
    θ_no = n.  A branch never adds the same set twice and every no-decision
    grows U, so these budgets never cut a branch.
    ``formula``: the closed-form budgets, with θ_no = k when δ ≤ γ + W.
    """
    info: dict = {"policy": policy}
    if policy == "complete":
        if table is None:
            table = enumerate_heavy_cores(g, fam, delta)
        ty = len({t.X for t in table.cores})
        return ty, g.n, info
    if policy != "formula":
        raise ValueError(f"unknown budget policy {policy!r}")
    W = wcol(g, choose_ordering(g, 2 * fam.gamma, ordering), 2 * fam.gamma)
    tn = theta_no_formula(fam, k, delta, W)
    info["wcol"] = W
    if tn is None:
        info["theta_no_fallback"] = True
        tn = k
    return theta_yes_formula(fam, k, delta), tn, info


# -- Generate / Branch ------------------------------------------------------

def greedy_hit_approx(sets) -> int:
    """Union of a maximal pairwise-disjoint subfamily, taken in input order."""
    used, out = 0, 0
    for x in sets:
        m = to_mask(x)
        if not m & used:
            used |= m
            out |= m
    return out


def _disjoint_count(masks) -> int:
    used, cnt = 0, 0
    for m in sorted(masks, key=lambda m: (popcount(m), m)):
        if not m & used:
            used |= m
            cnt += 1
    return cnt


def generate_collections(g: Graph, fam: PatternFamily, k: int, delta: int,
                         theta_yes: int | None = None, theta_no: int | None = None,
                         table: HeavyCoreTable | None = None,
                         max_nodes: int | None = None) -> CollectionBundle:
    """Depth-first branching over U-active heavy cores.

    Besides the budget counters, a branch is cut when it provably cannot
    lead to an emitted collection or to a hitting set of size ≤ k: G[U]
    contains a copy (U only grows), some chosen set lies inside U, or more
    than k chosen sets are pairwise disjoint outside U.
    """
    if not fam.all_connected:
        raise ValueError("generate_collections needs connected patterns")
    if k < 0 or delta < 1:
        raise ValueError("need k >= 0 and delta >= 1")
    if table is None:
        table = enumerate_heavy_cores(g, fam, delta)
    else:
        table.check(g, fam, delta)
    if theta_yes is None or theta_no is None:
        ty, tn, _ = budgets(g, fam, k, delta, "complete", table)
        theta_yes = ty if theta_yes is None else theta_yes
        theta_no = tn if theta_no is None else theta_no
    gamma = fam.gamma

    free_cache: dict[int, bool] = {}

    def free(U: int) -> bool:
        r = free_cache.get(U)
        if r is None:
            r = free_cache[U] = is_family_free(g, fam, within=U)
        return r

    collections: list[list[frozenset[int]]] = []
    provenance: list[dict] = []
    visited: set[tuple[int, frozenset[int]]] = set()
    nodes = 0
    max_yes = max_no = 0
    budget_cut = 0
    stack = [BranchState(0, (), theta_yes, theta_no)]
    while stack:
        st = stack.pop()
        if st.d_yes < 0 or st.d_no < 0:
            budget_cut += 1
            continue
        key = (st.U, frozenset(st.X))
        if key in visited:
            continue
        visited.add(key)
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise RuntimeError("branching tree exceeded max_nodes")
        U = st.U
        rest = [x & ~U for x in st.X]
        if not all(rest) or not free(U) or _disjoint_count(rest) > k:
            continue
        chosen = set(st.X)
        active = table.active(U)
        pos = next((i for i in range(st.start, len(active)) if active[i].X not in chosen), None)
        core = None if pos is None else active[pos]
        if core is None:
            if popcount(greedy_hit_approx(rest)) <= gamma * k or not rest:
                cols = sorted({frozenset(bits(m)) for m in rest}, key=sorted)
                collections.append(cols)
                provenance.append({"path": st.path, "U": bits(U)})
                max_yes = max(max_yes, theta_yes - st.d_yes)
                max_no = max(max_no, theta_no - st.d_no)
            continue
        base = U | core.X
        w = table.witnesses[core]
        configs = config_sets_pruned(core, w, gamma, fam, lambda P: free(base | P))
        # pushed in reverse so the yes-branch, then configs in order, run first
        for P in reversed(configs):
            stack.append(BranchState(base | P, st.X, st.d_yes, st.d_no - 1, st.path + "n"))
        stack.append(BranchState(U, st.X + (core.X,), st.d_yes - 1, st.d_no, st.path + "y",
                                 pos + 1))

    stats = {"tree_size": nodes, "theta_yes": theta_yes, "theta_no": theta_no,
             "yes_used": max_yes, "no_used": max_no, "budget_cut": budget_cut,
             "heavy_cores": len(table.cores), "copies": len(table.copies)}
    return CollectionBundle(g.n, collections, provenance, stats).normalize()


# -- CliqueReduce -------------------------------------------------------------

def clique_reduce(g: Graph, fam: PatternFamily, k: int, tau: int) -> list[frozenset[int]]:
    """Sets S_1..S_r with |S_i| ≤ k and ω(G − S_i) ≤ τ + γ such that every
    F-hitting set of size ≤ k contains one of them."""
    if tau < 1:
        raise ValueError("tau must be >= 1")
    cap = tau + fam.gamma
    out: list[frozenset[int]] = []
    seen: set[int] = set()

    def rec(V: int):
        if V in seen:
            return
        seen.add(V)
        # a set larger than k cannot sit inside a size-≤k solution
        if popcount(V) > k:
            return
        cb = clique_number_bounded(g, cap + 1, within=g.all_mask & ~V)
        if not cb.at_least_cap:
            out.append(frozenset(bits(V)))
            return
        if popcount(V) >= k:
            return
        H = sorted(cb.witness)[:cap]
        for size in range(tau + 1, cap + 1):
            for sub in itertools.combinations(H, size):
                rec(V | to_mask(sub))

    rec(0)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


# -- composition ------------------------------------------------------------

def default_delta(k: int) -> int:
    return max(2, ceil(k ** (1 / 3) - 1e-9))


def default_tau(k: int) -> int:
    return max(1, ceil(k ** 0.5 - 1e-9))


def reduce_to_instances(g: Graph, fam: PatternFamily, k: int, delta: int | None = None,
                        tau: int | None = None, theta_yes: int | None = None,
                        theta_no: int | None = None, budget_policy: str = "complete",
                        max_nodes: int | None = None, ordering: str = "greedy") -> CollectionBundle:
    delta = default_delta(k) if delta is None else delta
    tau = default_tau(k) if tau is None else tau
    S_list = clique_reduce(g, fam, k, tau)
    cols: list[list[frozenset[int]]] = []
    prov: list[dict] = []
    tree = 0
    per_branch = []
    facts = True
    for si, S in enumerate(S_list):
        if len(S) > k:
            continue
        gi, keep = delete_vertices(g, S)
        famx = fam
        apex = None
        if not fam.all_connected:
            gi, famx, apex = plus_construction(gi, fam)
        table = enumerate_heavy_cores(gi, famx, delta)
        W = wcol(gi, choose_ordering(gi, 2 * famx.gamma, ordering), 2 * famx.gamma)
        if delta <= W:
            facts = False
            log.info("delta=%d <= wcol_2gamma=%d: facts-not-guaranteed", delta, W)
        ty, tn = theta_yes, theta_no
        if ty is None or tn is None:
            by, bn, info = budgets(gi, famx, k - len(S), delta, budget_policy, table, ordering)
            ty = by if ty is None else ty
            tn = bn if tn is None else tn
            if info.get("theta_no_fallback"):
                log.info("theta_no formula inapplicable (delta <= gamma + W), using k")
        sub = generate_collections(gi, famx, k - len(S), delta, ty, tn, table, max_nodes)
        tree += sub.stats["tree_size"]
        per_branch.append(sub.stats)
        singles = [frozenset([v]) for v in sorted(S)]
        for ci, col in enumerate(sub.collections):
            mapped = []
            for x in col:
                y = frozenset(keep[v] for v in x if v != apex)
                mapped.append(y)
            if any(not y for y in mapped):
                # the set was the apex alone: nothing in G hits it
                continue
            cols.append(singles + mapped)
            p = dict(sub.provenance[ci]) if sub.provenance else {}
            p["U"] = sorted(keep[v] for v in p.get("U", []) if v != apex)
            p["clique_branch"] = si
            prov.append(p)
    stats = {"t": 0, "clique_sets": len(S_list), "tree_size": tree, "delta": delta,
             "tau": tau, "apex": not fam.all_connected, "branches": per_branch,
             "facts_guaranteed": facts}
    b = CollectionBundle(g.n, cols, prov, stats).normalize()
    b.stats["t"] = len(b.collections)
    return b
