"""
From a graph to a few hitting-set instances
===========================================

The branching step turns "hit every copy of F in G with k vertices" into a
short list of plain set systems.  A set S of at most k vertices hits all
copies exactly when it hits every set of at least one system in the list.
"""
import itertools

from fhitting import reduce_to_instances
from fhitting.generators import grid
from fhitting.hitting import gaifman_graph, tree_decomposition
from fhitting.pattern import enumerate_copies, preset_family

g = grid(4, 4)
fam, k = preset_family("c4"), 4
bundle = reduce_to_instances(g, fam, k)
print("collections:", len(bundle), " branch tree nodes:", bundle.stats["tree_size"])
for i, col in enumerate(bundle.collections):
    w = tree_decomposition(gaifman_graph(col).graph).width
    print(f"  collection {i}: {len(col)} sets, Gaifman width {w}")

# spot check the equivalence against brute force
copies = [set(c.image) for c in enumerate_copies(g, fam)]
agree = all((bundle.hits(S) is not None) == all(c & set(S) for c in copies)
            for S in itertools.combinations(range(g.n), k))
print("agrees with brute force on all 4-sets:", agree)

# heavy-core tables drive the branching; the stats show what was spent
b = bundle.stats["branches"][0]
print("budgets yes/no:", b["theta_yes"], b["theta_no"], " used:", b["yes_used"], b["no_used"])
