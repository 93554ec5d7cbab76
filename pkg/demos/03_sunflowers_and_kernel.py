"""
Sunflowers and the polynomial kernel
====================================

Enough small sets always contain an r-sunflower.  The kernel uses this to
replace large sunflowers of pattern copies by their cores, which leaves an
induced subgraph whose small hitting sets still work for the whole graph.
"""
import itertools
import random

from fhitting.graph import bits, to_mask
from fhitting.generators import stars_with_noise
from fhitting.kernel import kernel_size_bound, kernelize
from fhitting.pattern import preset_family
from fhitting.sunflower import find_sunflower, sunflower_threshold

import numpy as np

rnd = random.Random(3)
p, r = 2, 3
need = sunflower_threshold(p, r) + 1
pool = [to_mask(c) for c in itertools.combinations(range(8), 2)]
sets = rnd.sample(pool, need)
core, idx = find_sunflower(sets, r)
print(f"{need} pairs (threshold {need - 1}) contain a {r}-sunflower:",
      [bits(sets[i]) for i in idx], "core", bits(core))

g = stars_with_noise(80, 3, 0.01, np.random.default_rng(0))
fam, k = preset_family("p3"), 3
res = kernelize(g, fam, k)
print(f"kernel: {g.n} -> {len(res.kernel_vertices)} vertices "
      f"(bound {kernel_size_bound(fam.gamma, k)}), {len(res.rounds)} rounds")
