"""
End to end: kernel, branching, DP, verification
===============================================

``solve`` returns the cheapest F-hitting set with at most k vertices, or
None, together with a report of what each stage did.  ``oracle_solve``
is an independent brute force for cross-checking.
"""
import numpy as np

from fhitting import SolverConfig, WeightedInstance, oracle_solve, preset_family, solve
from fhitting.generators import planar_triangulation_subgraph

rng = np.random.default_rng(7)
g = planar_triangulation_subgraph(13, 0.7, rng)
w = {v: int(x) for v, x in enumerate(rng.integers(1, 10, g.n))}

for fam_name in ["k3", "c4", "star2"]:
    inst = WeightedInstance(g, preset_family(fam_name), 6, w)
    sol, rep = solve(inst)
    ref = oracle_solve(inst)
    got = None if sol is None else (sol.vertices, sol.weight)
    print(f"{fam_name:4s} pipeline {got}  oracle {None if ref is None else ref.weight}"
          f"  collections {rep['t']}  max width {rep['max_width']}")

# unit weights let the kernel run first
sol, rep = solve(WeightedInstance(g, preset_family("k3"), 5), SolverConfig(td_mode="exact"))
print("unit weights: kernel kept", rep["kernel_n"], "of", g.n, "vertices; answer", sol and sol.weight)
