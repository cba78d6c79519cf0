"""
Dimension formulas
==================

Closed forms for level sets of the growth exponents, plus finite-N
estimators for sets defined by a growth function phi.
"""
import math

from engel import growth
from engel.analysis import (
    count_monotone,
    dim_D_level,
    dim_fast_growth,
    dim_lambda_level,
    dim_phi,
    dim_window,
    enumerate_monotone,
    xi_estimate,
)

print("alpha   dim{lambda=alpha}  dim{D=alpha}")
for a in ("0", "1/2", "1", "2", "3", "inf"):
    print(f"{a:>5}   {str(dim_lambda_level(a).value):>16}  {str(dim_D_level(a).value):>12}")

# Double-exponential growth: both estimators approach 1/e
phi = growth.double_exponential(1.0)
print("fast growth:", dim_fast_growth(phi, 200).value, " window:", dim_window(phi, 200).value,
      " 1/e =", 1 / math.e)

for phi in (growth.power(2), growth.exponential(1.0), growth.mixed(a=1, b=0.5)):
    print(f"{phi.name:>12} {phi.params}: dim_phi = {dim_phi(phi, 400).value:.4f}, "
          f"xi = {xi_estimate(phi, 400):.4f}")

# Counting non-decreasing words, closed form against brute force
for n, M in [(3, 4), (5, 6), (6, 8)]:
    print(f"n = {n}, M = {M}: {count_monotone(n, M)} = {enumerate_monotone(n, M)}")
