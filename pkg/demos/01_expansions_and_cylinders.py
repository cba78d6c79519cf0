"""
Engel expansions and cylinders
==============================

Every x in (0, 1) has an Engel expansion: a non-decreasing digit sequence
d_1 <= d_2 <= ... with d_1 >= 2 such that

    x = 1/d_1 + 1/(d_1 d_2) + 1/(d_1 d_2 d_3) + ...

Rationals have finite expansions.  Everything here is exact.
"""
import math
from fractions import Fraction

from engel import cylinder, expand, expand_rational, locate, reconstruct

# 5/7 expands to four digits and the series gives back 5/7 on the nose
x = Fraction(5, 7)
digits = list(expand_rational(x))
print("5/7 ->", digits)
print("reconstructed:", reconstruct(digits, len(digits)))

# e - 2 has digits 2, 3, 4, ...  Its 50-digit prefix is a partial sum of 1/k!
prefix = list(range(2, 52))
approx = reconstruct(prefix, 50)
print("e - 2 to 30 places:", f"{float(approx):.15f}", "vs", f"{math.e - 2:.15f}")

# The set of points sharing a prefix is a half-open interval (a cylinder)
c = cylinder([2, 3])
print("cylinder <2, 3> =", f"[{c.left}, {c.right})", "length", c.length)

# Cylinders nest, and x belongs to the cylinder of each of its prefixes
for n in range(1, 4):
    cn = locate(x, n)
    print(f"  n={n}: [{cn.left}, {cn.right})  contains 5/7: {x in cn}")

# A long expansion of a big-denominator rational
y = Fraction(123456, 999983)
seq = expand(y, 100)
print(f"{y} has {len(seq)} digits, last one {seq.digit(len(seq))}")
