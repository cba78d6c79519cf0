"""
Building digit sequences with given properties
==============================================

Perturbations, dense approximants, window-set members and tidy envelopes.
"""
from fractions import Fraction

from engel import growth
from engel.constructions import (
    PerturbationFamily,
    approximant_irrational,
    approximant_rational,
    check_tidy,
    digits_for_lambda,
    exponent_A,
    tidy_sequence,
    window_member_digits,
)
from engel.core import DigitSeq, cylinder, reconstruct

base = DigitSeq.from_rule(lambda n: n + 1)

# Perturbations: each bit decides whether a digit is bumped by one.
fam = PerturbationFamily(base, [1, 0, 1, 1])
print("perturbed:", fam.digits.prefix(8), "bump indices:", fam.bump_indices)

# Approximants: sequences with base's tail but value close to a chosen y.
y_digits = [2, 3, 4]
y = reconstruct(y_digits, 3)
for m in (1, 5, 25):
    out = approximant_rational(y_digits, base, m)
    c = cylinder(out.prefix(40))
    print(f"m = {m:2d}: value in [{float(c.left):.8f}, {float(c.right):.8f})  y = {float(y):.8f}")

z = digits_for_lambda(Fraction(1, 2))
print("irrational approximant:", approximant_irrational(z, base, 4).prefix(8))

# Window-set members: digits floor(n t(n)) + 1
t = growth.power(1.0, scale=2.0)
print("window member for t(n) = 2n:", window_member_digits(t).prefix(6))

# Tidy envelope of phi(n) = n^2 e^{n^0.5}
phi = growth.mixed(a=2, c=0.5)
A = exponent_A(phi, 250)
ts = tidy_sequence(phi, A, 0.5, 50)
print(f"A = {A:.4f}; achievers {ts.achiever[:10]}")
print("invariants:", check_tidy(ts, phi))
