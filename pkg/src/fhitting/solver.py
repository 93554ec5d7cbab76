"""End-to-end minimum-weight F-hitting solver and an independent oracle."""
from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field

from .branching import default_delta, default_tau, reduce_to_instances
from .graph import Graph
from .hitting import HittingInstance, gaifman_graph, min_weight_hitting_set, tree_decomposition
from .kernel import kernelize
from .pattern import PatternFamily


@dataclass
class WeightedInstance:
    graph: Graph
    family: PatternFamily
    k: int
    weights: dict[int, float] = field(default_factory=dict)   # missing -> 1

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be >= 0")
        for v, w in self.weights.items():
            if not 0 <= v < self.graph.n:
                raise ValueError(f"weight given for unknown vertex {v}")
            if not isinstance(w, (int, float)) or w < 0 or w != w or w == float("inf"):
                raise ValueError(f"weight of {v} must be finite and >= 0")

    def weight(self, v: int):
        return self.weights.get(v, 1)

    @property
    def uniform(self) -> bool:
        return len({self.weight(v) for v in range(self.graph.n)}) <= 1


@dataclass
class SolverConfig:
    delta: int | None = None
    tau: int | None = None
    theta_yes: int | None = None
    theta_no: int | None = None
    kernel: bool = True
    budget_policy: str = "complete"
    td_mode: str = "heuristic"
    ordering: str = "greedy"
    max_nodes: int | None = None


@dataclass
class Solution:
    vertices: tuple[int, ...]
    weight: float
    certificate: str
    verified: bool

    def to_kv(self) -> str:
        return "\n".join([
            f"solution {' '.join(map(str, self.vertices))}".rstrip(),
            f"weight {self.weight}",
            f"certificate {self.certificate}",
            f"verified {str(self.verified).lower()}",
        ]) + "\n"


# -- naive enumeration (shared by the oracle and final verification) --------

def naive_copy_sets(g: Graph, fam: PatternFamily, within: set[int] | None = None) -> set[frozenset[int]]:
    """Vertex sets of all F-copies, found by trying every injective map."""
    verts = sorted(range(g.n) if within is None else within)
    out: set[frozenset[int]] = set()
    for p in fam.patterns:
        pe = p.edges()
        for image in itertools.permutations(verts, p.n):
            if all(g.has_edge(image[a], image[b]) for a, b in pe):
                out.add(frozenset(image))
    return out


def verify_hitting(g: Graph, fam: PatternFamily, S) -> bool:
    rest = set(range(g.n)) - set(S)
    for p in fam.patterns:
        pe = p.edges()
        for image in itertools.permutations(sorted(rest), p.n):
            if all(g.has_edge(image[a], image[b]) for a, b in pe):
                return False
    return True


def oracle_solve(inst: WeightedInstance, method: str = "bnb") -> Solution | None:
    """Exact optimum by branching on the vertices of an unhit copy."""
    g, k = inst.graph, inst.k
    sets = naive_copy_sets(g, inst.family)
    # supersets of another copy set are hit whenever the smaller one is
    minimal = [s for s in sets if not any(t < s for t in sets)]
    minimal.sort(key=lambda s: (len(s), sorted(s)))
    if method == "subsets":
        best = None
        for size in range(k + 1):
            for S in itertools.combinations(range(g.n), size):
                ss = set(S)
                if all(s & ss for s in minimal):
                    w = sum(inst.weight(v) for v in S)
                    if best is None or w < best[0]:
                        best = (w, S)
        if best is None:
            return None
        return Solution(tuple(best[1]), best[0], "oracle:subsets", True)
    if method != "bnb":
        raise ValueError(f"unknown oracle method {method!r}")
    best: list = [None, None]

    def rec(chosen: frozenset[int], w):
        if best[0] is not None and w >= best[0]:
            return
        unhit = next((s for s in minimal if not s & chosen), None)
        if unhit is None:
            best[0], best[1] = w, chosen
            return
        if len(chosen) >= k:
            return
        for v in sorted(unhit, key=lambda u: (inst.weight(u), u)):
            rec(chosen | {v}, w + inst.weight(v))

    rec(frozenset(), 0)
    if best[0] is None:
        return None
    return Solution(tuple(sorted(best[1])), best[0], "oracle:bnb", True)


# -- pipeline ----------------------------------------------------------------

def solve(inst: WeightedInstance, cfg: SolverConfig | None = None) -> tuple[Solution | None, dict]:
    """Minimum-weight F-hitting set of size ≤ k, or None, plus a run report."""
    cfg = cfg or SolverConfig()
    g, fam, k = inst.graph, inst.family, inst.k
    report: dict = {"n": g.n, "m": g.m, "k": k, "times": {}, "notes": []}
    t0 = time.perf_counter()

    work, ids = g, list(range(g.n))
    if cfg.kernel and inst.uniform:
        kr = kernelize(g, fam, k)
        ids = kr.kernel_vertices
        work = kr.kernel
        report["kernel_n"] = work.n
        report["kernel_rounds"] = len(kr.rounds)
        report["notes"] += kr.notes
    elif cfg.kernel:
        report["notes"].append("kernel skipped: weights are not uniform")
    t1 = time.perf_counter()
    report["times"]["kernel"] = t1 - t0

    delta = cfg.delta if cfg.delta is not None else default_delta(k)
    tau = cfg.tau if cfg.tau is not None else default_tau(k)
    bundle = reduce_to_instances(work, fam, k, delta, tau, cfg.theta_yes, cfg.theta_no,
                                 cfg.budget_policy, cfg.max_nodes, cfg.ordering)
    t2 = time.perf_counter()
    report["times"]["reduce"] = t2 - t1
    report.update(t=len(bundle), delta=delta, tau=tau, tree_size=bundle.stats["tree_size"],
                  clique_sets=bundle.stats["clique_sets"],
                  facts_guaranteed=bundle.stats["facts_guaranteed"])
    report["budgets"] = [{key: b[key] for key in ("theta_yes", "theta_no", "yes_used", "no_used")}
                         for b in bundle.stats["branches"]]

    best = None
    widths = []
    for ci, col in enumerate(bundle.collections):
        hw = {v: inst.weight(ids[v]) for x in col for v in x}
        hi = HittingInstance(col, hw, k)
        if hi.infeasible:
            continue
        gg = gaifman_graph(hi.sets)
        td = tree_decomposition(gg.graph, cfg.td_mode)
        widths.append(td.width)
        res = min_weight_hitting_set(hi, td, gg)
        if res is None:
            continue
        S, w = res
        if best is None or (w, len(S), S) < (best[1], len(best[0]), best[0]):
            best = (S, w, ci)
    t3 = time.perf_counter()
    report["times"]["dp"] = t3 - t2
    report["max_width"] = max(widths, default=-1)
    report["mean_width"] = sum(widths) / len(widths) if widths else -1
    if best is None:
        report["times"]["total"] = t3 - t0
        return None, report
    S = tuple(sorted(ids[v] for v in best[0]))
    ok = len(S) <= k and verify_hitting(g, fam, S)
    report["times"]["total"] = time.perf_counter() - t0
    if not ok:
        raise AssertionError(f"pipeline produced a set that fails verification: {S}")
    return Solution(S, best[1], f"collection:{best[2]}", ok), report


def write_result(sol: Solution | None, report: dict, kv_path, summary_path) -> None:
    with open(kv_path, "w") as fh:
        if sol is None:
            fh.write("status infeasible\n")
        else:
            fh.write("status solved\n" + sol.to_kv())
        for key in ("t", "tree_size", "max_width", "delta", "tau"):
            if key in report:
                fh.write(f"{key} {report[key]}\n")
    with open(summary_path, "w") as fh:
        json.dump({"solution": None if sol is None else asdict(sol), "report": report},
                  fh, indent=1, default=str)
