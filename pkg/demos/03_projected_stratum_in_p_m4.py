"""
A projected stratum that is smaller than its Richardson product
===============================================================

In P(M_4) take rank-2 matrices A whose kernel and image both lie in the big
B-cell and the big B⁻-cell of Gr(2, 4), with 0 ≠ A e1 ∈ <e1,e2,e3> and
0 ≠ A e4 ∈ <e2,e3,e4>.  We list which pairs (ker A, Im A) occur.  Every pair
in general position shows up, but the pair printed below never does: for
that W, the intersections with <e1,e2,e3> and <e2,e3,e4> are two different
lines.
"""

from gstrata.ffverify import verify_example2

report = verify_example2([2, 3])
for q, c in sorted(report.counts.items()):
    print(f"q={q}: pairs of big cells = {c['big_cell_pairs']}, image = {c['image']}, "
          f"transverse = {c['transverse']}")
    print(f"   witness (<e1+e4,e2+e3>, <e1+e3,e2+e4>) absent: {c['witness_absent']}")
print("all claims hold:", report.passed)
