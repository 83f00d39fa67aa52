"""
Point counts of two wedge loci in P(M_3)
========================================

Intersect {C1∧C2 = 0} with {C2∧C3 = 0} inside the rank <= 2 locus.  The
result splits as {C2 = 0} ∪ {rank <= 1}.  Counting points over several
primes and fitting exact polynomials shows the two pieces have
dimensions 5 and 4.
"""

from gstrata.ffverify import SUPPORTED_PRIMES, fit_count_polynomial, verify_example1

report = verify_example1(SUPPORTED_PRIMES)
print("identity holds for every prime:", report.passed)

print(f"{'q':>3} {'lhs':>8} {'C2=0':>8} {'rk<=1':>8} {'both':>6}")
for q in SUPPORTED_PRIMES:
    c = report.counts[str(q)]
    print(f"{q:>3} {c['lhs']:>8} {c['c2_zero']:>8} {c['rank_le1']:>8} {c['both']:>6}")

for piece in ("c2_zero", "rank_le1", "lhs"):
    counts = [report.counts[str(q)][piece] for q in SUPPORTED_PRIMES]
    poly = fit_count_polynomial(SUPPORTED_PRIMES, counts)
    terms = " + ".join(f"{c}q^{k}" for k, c in enumerate(poly.coefficients) if c)
    print(f"{piece:>9}: degree {poly.degree}: {terms}")
