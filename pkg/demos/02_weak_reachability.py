"""
Weak reachability under an ordering
===================================

u is weakly r-reachable from v when a path of length at most r leads from
v to u and u is the largest vertex on it.  Sparse classes keep the largest
such set small; the greedy ordering is the usual starting point.
"""
import numpy as np

from fhitting.generators import grid, planar_triangulation_subgraph
from fhitting.wcol import exact_ordering, greedy_ordering, weak_reach_sets, wcol

rng = np.random.default_rng(1)
for name, g in [("grid 6x6", grid(6, 6)), ("planar n=40", planar_triangulation_subgraph(40, 0.9, rng))]:
    sigma = greedy_ordering(g)
    print(name, "wcol_r for r=1..4:", [wcol(g, sigma, r) for r in range(1, 5)])

small = grid(3, 3)
idx = weak_reach_sets(small, greedy_ordering(small), 2)
print("WR_2 of the corner 0:", sorted(idx.reach(0)))

# exhaustive search over orderings is only possible on tiny graphs
best = exact_ordering(small, 2)
print("greedy wcol_2 =", idx.wcol, " optimal wcol_2 =", wcol(small, best, 2))
