"""
Weighted hitting set over a tree decomposition
==============================================

Each collection is solved exactly by dynamic programming over a tree
decomposition of its Gaifman graph (sets become cliques).
"""
from fhitting import HittingInstance, gaifman_graph, min_weight_hitting_set, tree_decomposition

sets = [{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}]
gg = gaifman_graph(sets)
td = tree_decomposition(gg.graph)
print("Gaifman graph of a 5-cycle of pairs: width", td.width, "bags", [sorted(b) for b in td.bags])

for k, w in [(3, {}), (3, {1: 10}), (2, {})]:
    res = min_weight_hitting_set(HittingInstance(sets, w, k))
    print(f"k={k} weights={w or 'unit'} ->", res)

exact = tree_decomposition(gg.graph, "exact")
print("exact width", exact.width, "valid:", exact.is_valid(gg.graph))
