"""
B x B-cells of P(M_3)
=====================

Each rank stratum of P(M_3) is one G x G-orbit.  Inside it the B x B-orbits
are indexed by pairs of permutations, up to the canonical form computed by
``canonicalize_cell``.  Here we count them both ways over F_2.
"""

from itertools import product

import numpy as np

from gstrata.ffverify import bxb_orbit
from gstrata.ffverify.checks import cell_seed
from gstrata.orbits import builtin_model, canonicalize_cell

n, q = 3, 2
model = builtin_model("proj_matrices", n)
W = model.group.elements()

for orbit in model.orbits:
    r = int(orbit.name.removeprefix("rank"))
    keys = {canonicalize_cell(orbit, u, v).key() for u, v in product(W, W)}

    # BFS every seed u h v^{-1} and keep the distinct orbits
    masks = {}
    for u, v in product(W, W):
        m = bxb_orbit(cell_seed(n, r, u, v, q), q).mask
        masks[m.tobytes()] = m
    sizes = sorted(int(m.sum()) for m in masks.values())
    print(f"{orbit.name}: I={sorted(orbit.I)} J={sorted(orbit.J)} K={sorted(orbit.K)}")
    print(f"  canonical cells {len(keys)}, BFS orbits {len(masks)}, sizes {sizes}")

# the number of rank-r rook placements in an n x n board
print("rook placements:", [len({tuple(sorted(zip(u.perm[:r], v.perm[:r]))) for u, v in product(W, W)})
                           for r in range(1, n + 1)])

# a worked canonical form: (s2, s1.s2) in the rank-1 orbit
G = model.group
c = canonicalize_cell(model.orbit("rank1"), G.element("s2"), G.element("s1.s2"))
print("canonical form of (s2, s1.s2) in rank1:", (c.u.word_str(), c.v.word_str()))
print(np.array(cell_seed(n, 1, G.element("s2"), G.element("s1.s2"), q).matrix))
