"""
Pattern families and copy enumeration
=====================================

A family is a list of small pattern graphs.  Presets cover cliques, paths,
cycles, stars, all trees of a given order and disjoint unions.
"""
from fhitting import enumerate_copies, is_family_free, preset_family
from fhitting.generators import grid
from fhitting.pattern import plus_construction

g = grid(3, 3)
fam = preset_family("c4")
copies = enumerate_copies(g, fam)
print("C4 copies in the 3x3 grid:", len(copies))
print("first copy maps pattern vertices to", copies[0].image)

# 'coc4' is every tree on four vertices (the path and the star)
print("trees on 4 vertices:", len(preset_family("coc4").patterns))

# deleting the centre destroys every square
centre = 4
print("free after deleting the centre:", is_family_free(g, fam, within=g.all_mask & ~(1 << centre)))

# disconnected patterns become connected once an apex joins everything
two_k2 = preset_family("2k2")
gp, fp, apex = plus_construction(g, two_k2)
print("2K2 connected?", two_k2.all_connected, "-> plus version connected?", fp.all_connected)
print("apex id", apex, "of", gp.n, "vertices")
