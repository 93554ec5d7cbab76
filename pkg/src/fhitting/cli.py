"""Command-line front end: ``fhitting {solve,verify,bench,kernel,reduce}``.

The worker count for ``verify`` and ``bench`` comes from the environment
variable ``FHITTING_WORKERS`` (default 1).
"""
from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import generators
from .branching import default_delta, default_tau, reduce_to_instances
from .graph import GraphInputError
from .hitting import gaifman_graph, tree_decomposition
from .io import format_instance, load_family, parse_weights, read_graph
from .kernel import kernelize
from .solver import SolverConfig, WeightedInstance, oracle_solve, solve, write_result

log = logging.getLogger("fhitting")

BENCH_COLUMNS = ["graph_class", "n", "m", "k", "family", "delta", "tau", "t", "max_width",
                 "exact_width", "tree_size", "yes_used", "no_used", "time_s", "weight"]


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("FHITTING_WORKERS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    items = list(items)
    if _workers() == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(_workers()) as ex:
        return list(ex.map(fn, items))


def _config(args) -> SolverConfig:
    return SolverConfig(delta=args.delta, tau=args.tau, theta_yes=args.theta_yes,
                        theta_no=args.theta_no, kernel=not args.no_kernel,
                        budget_policy=args.budgets, td_mode=args.td_mode,
                        ordering=args.ordering)


def _load_instance(args) -> WeightedInstance:
    g = read_graph(args.graph)
    fam = load_family(args.family)
    w = {}
    if args.weights and args.weights != "unit":
        w = parse_weights(Path(args.weights).read_text(), args.weights)
    return WeightedInstance(g, fam, args.k, w)


def cmd_solve(args) -> int:
    inst = _load_instance(args)
    sol, report = solve(inst, _config(args))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_result(sol, report, out / "result.txt", out / "summary.json")
    if sol is None:
        print("status infeasible")
        return 2
    print("status solved")
    print(sol.to_kv(), end="")
    return 0


def _random_trial(payload):
    i, seed, max_n, families, classes = payload
    rng = np.random.default_rng([seed, i])
    cls = classes[int(rng.integers(len(classes)))]
    n = int(rng.integers(1, max_n + 1))
    g = generators.random_graph(cls, n, rng)
    fam_name = families[int(rng.integers(len(families)))]
    k = int(rng.integers(0, 5))
    weights = {}
    if rng.random() < 0.5:
        weights = {v: int(x) for v, x in enumerate(rng.integers(1, 11, g.n))}
    inst = WeightedInstance(g, load_family(fam_name), k, weights)
    got, _ = solve(inst)
    ref = oracle_solve(inst)
    a = None if got is None else got.weight
    b = None if ref is None else ref.weight
    return {"trial": i, "class": cls, "family": fam_name, "n": g.n, "k": k, "agree": a == b,
            "pipeline": a, "oracle": b,
            "instance": format_instance(g, fam_name, k, weights) if a != b else None}


def cmd_verify(args) -> int:
    if args.max_n > 20:
        print("error: max-n must be <= 20", file=sys.stderr)
        return 1
    families = args.families.split(";") if ";" in args.families else args.families.split(",")
    classes = args.classes.split(",")
    results = _pmap(_random_trial, [(i, args.seed, args.max_n, families, classes)
                                    for i in range(args.trials)])
    ok = sum(r["agree"] for r in results)
    print(f"agreement {ok}/{len(results)}")
    bad = next((r for r in results if not r["agree"]), None)
    if bad is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"counterexample_{bad['trial']}.inst"
        path.write_text(bad["instance"])
        print(f"first counterexample: trial {bad['trial']} written to {path}")
        return 1
    return 0


def _parse_range(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            a, b = part.split("-")
            out += list(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _bench_row(payload):
    cls, n, k, fam_name, seed, td_mode, exact = payload
    rng = np.random.default_rng([seed, n, k])
    if cls == "grid":
        side = max(1, round(n ** 0.5))
        g = generators.grid(side, max(1, n // side))
    else:
        g = generators.random_graph(cls, n, rng)
    inst = WeightedInstance(g, load_family(fam_name), k)
    t0 = time.perf_counter()
    sol, rep = solve(inst, SolverConfig(td_mode=td_mode))
    dt = time.perf_counter() - t0
    exact_w = ""
    if exact:
        # exact width over the reduction's collections, for comparison with max_width
        bundle = reduce_to_instances(g if rep.get("kernel_n") is None else
                                     kernelize(g, inst.family, k).kernel, inst.family, k)
        ws = [tree_decomposition(gaifman_graph(c).graph, "exact").width for c in bundle.collections
              if gaifman_graph(c).graph.n <= 18]
        exact_w = max(ws) if ws else ""
    bud = rep.get("budgets") or [{}]
    return {"graph_class": cls, "n": g.n, "m": g.m, "k": k, "family": fam_name,
            "delta": rep["delta"], "tau": rep["tau"], "t": rep["t"], "max_width": rep["max_width"],
            "exact_width": exact_w, "tree_size": rep["tree_size"],
            "yes_used": max((b.get("yes_used", 0) for b in bud), default=0),
            "no_used": max((b.get("no_used", 0) for b in bud), default=0),
            "time_s": f"{dt:.4f}", "weight": "" if sol is None else sol.weight}


def cmd_bench(args) -> int:
    jobs = [(args.graph_class, n, k, args.family, args.seed, args.td_mode, args.exact_width)
            for n in _parse_range(args.n) for k in _parse_range(args.k)]
    rows = _pmap(_bench_row, jobs)
    fh = open(args.csv, "w", newline="") if args.csv != "-" else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
        w.writeheader()
        w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def cmd_kernel(args) -> int:
    g = read_graph(args.graph)
    res = kernelize(g, load_family(args.family), args.k, args.degree_threshold)
    if args.out:
        res.dump(args.out)
    print(f"kernel_n {res.kernel.n}")
    print(f"kernel_vertices {' '.join(map(str, res.kernel_vertices))}".rstrip())
    print(f"rounds {len(res.rounds)}")
    print(f"cores {len(res.cores)}")
    return 0


def cmd_reduce(args) -> int:
    g = read_graph(args.graph)
    fam = load_family(args.family)
    delta = args.delta if args.delta is not None else default_delta(args.k)
    tau = args.tau if args.tau is not None else default_tau(args.k)
    bundle = reduce_to_instances(g, fam, args.k, delta, tau, args.theta_yes, args.theta_no,
                                 args.budgets)
    text = bundle.dumps()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"t {len(bundle)}", file=sys.stderr)
    return 0


def _solver_flags(p):
    p.add_argument("--delta", type=int)
    p.add_argument("--tau", type=int)
    p.add_argument("--theta-yes", type=int)
    p.add_argument("--theta-no", type=int)
    p.add_argument("--budgets", choices=["complete", "formula"], default="complete")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fhitting", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def instance_flags(p):
        p.add_argument("--graph", required=True, help="edge list or DIMACS file")
        p.add_argument("--family", required=True, help="preset (k2, p3, c4, 2k2, ...) or pattern file")
        p.add_argument("--k", type=int, required=True)

    s = sub.add_parser("solve", help="minimum-weight hitting set of size <= k")
    instance_flags(s)
    s.add_argument("--weights", default="unit", help="weight file or 'unit'")
    _solver_flags(s)
    s.add_argument("--no-kernel", action="store_true")
    s.add_argument("--ordering", choices=["greedy", "exact"], default="greedy")
    s.add_argument("--td-mode", choices=["heuristic", "exact"], default="heuristic")
    s.add_argument("--out", default="fhitting_out")
    s.add_argument("--seed", type=int, default=0, help="recorded only; the solver is deterministic")
    s.set_defaults(fn=cmd_solve)

    v = sub.add_parser("verify", help="pipeline against the oracle on random instances")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--max-n", type=int, default=12)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--families", default="k2,p3,k3")
    v.add_argument("--classes", default=",".join(generators.GRAPH_CLASSES))
    v.add_argument("--out", default="verify_out")
    v.set_defaults(fn=cmd_verify)

    b = sub.add_parser("bench", help="CSV of measured quantities over a sweep")
    b.add_argument("--graph-class", choices=list(generators.GRAPH_CLASSES), default="grid")
    b.add_argument("--n", default="16", help="sizes, e.g. '9,16' or '9-12'")
    b.add_argument("--k", default="1-6")
    b.add_argument("--family", default="c4")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--td-mode", choices=["heuristic", "exact"], default="heuristic")
    b.add_argument("--exact-width", action="store_true")
    b.add_argument("--csv", default="-")
    b.set_defaults(fn=cmd_bench)

    kp = sub.add_parser("kernel", help="run the kernelization alone and dump its trace")
    instance_flags(kp)
    kp.add_argument("--degree-threshold", type=int)
    kp.add_argument("--out")
    kp.set_defaults(fn=cmd_kernel)

    r = sub.add_parser("reduce", help="dump the bundle of hitting-set collections")
    instance_flags(r)
    _solver_flags(r)
    r.add_argument("--out")
    r.set_defaults(fn=cmd_reduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if isinstance(getattr(args, "k", None), int) and args.k < 0:
            raise ValueError("k must be >= 0")
        return args.fn(args)
    except (GraphInputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
