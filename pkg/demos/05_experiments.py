"""
Experiments
===========

Monte-Carlo check of the law of large numbers for log d_n / n, tail sums
used in covering arguments, and exact E(k, j) bounds.  Results can be
written as JSON or CSV.
"""
from engel.experiments import McConfig, cover_sum_beta, cover_sum_pq, ekj_breakdown, emit, mc_slln

# Random dyadic points with 4096 bits; digits are trusted while
# (d_1 ... d_n)^2 <= 2^bits.
res = mc_slln(McConfig(trials=100, precision_bits=4096, seed=2024, n_report=(5, 10, 20, 40)))
print(emit(res, "csv"))

# Cover sums are kept in log space.  The terms here still grow at n = 400,
# so the tail sums are huge: a finite window cannot show their decay.
beta = cover_sum_beta(0.5, 0.2, None, 400)
logs = dict(beta.log_partial)
print("log of beta tail sums from n = 100, 300, 400:",
      ", ".join(f"{logs[n]:.3f}" for n in (100, 300, 400)))
pq = cover_sum_pq(2, 2, 0.5, 1, 3000)
peak = max(pq.terms, key=lambda t: t[1])
print("pq terms peak at k =", peak[0], "; tail from 2500:", f"{pq.partial_from(2500):.3e}")

table = ekj_breakdown(2, 4)
print(emit(table, "csv"))
