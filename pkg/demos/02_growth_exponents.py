"""
Prescribing how fast the digits grow
====================================

The exponent lambda(x) = limsup log n / log d_n(x) measures polynomial digit
growth.  ``digits_for_lambda`` builds a sequence whose exponent is any
prescribed alpha in [0, inf], and ``lambda_hat`` estimates the exponent from
a finite prefix as the maximum over the window [N/2, N].
"""
from engel import digits_for_lambda, lambda_hat, series_partial

for alpha in ("0.25", "0.5", "1", "2", "inf"):
    seq = digits_for_lambda(alpha)
    est = lambda_hat(seq, 10**5)
    print(f"alpha = {alpha:>4}: first digits {seq.prefix(6)}, estimate {est.value:.5f}")

# Sums of d_n^{-s} converge or diverge with s on either side of lambda
x = digits_for_lambda("0.5")
for s in (0.25, 0.5, 1.0):
    partial = [series_partial(x, s, N) for N in (10**3, 10**4, 10**5)]
    print(f"s = {s}: partial sums", ", ".join(f"{v:.4f}" for v in partial))

# The per-n curve behind the estimate, as a numpy array of (n, log n / log d_n)
curve = lambda_hat(digits_for_lambda(2), 1000, curve=True).per_n_curve
print("curve rows:", curve.shape[0], "max at n =", int(curve[curve[:, 1].argmax(), 0]))
