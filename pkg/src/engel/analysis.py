"""Growth exponents of digit sequences and the closed-form dimension formulas.

Limsup/liminf quantities are approximated by the sup/inf over the tail window
``[ceil(N/2), N]`` (see :func:`engel.constructions.tail_window`).  These are
finite-data proxies with construction-dependent convergence rates; nothing
here certifies a limit.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .constructions import exponent_A, parse_alpha, tail_window
from .core import DigitSeq
from .errors import DomainError, LengthError, TooLarge
from .growth import GrowthFunction


def _log_digits(seq: DigitSeq, lo: int, hi: int) -> np.ndarray:
    # math.log accepts ints of any size (it works from the bit length), so
    # digits far beyond float range are fine
    if not seq.available(hi):
        raise LengthError(f"sequence has fewer than {hi} digits")
    return np.fromiter((math.log(seq.digit(n)) for n in range(lo, hi + 1)),
                       dtype=float, count=hi - lo + 1)


def _window(N: int, window_fraction: float, burn_in: int | None) -> tuple[int, int]:
    if N < 4:
        raise DomainError("N must be at least 4")
    lo, hi = tail_window(N, window_fraction)
    if burn_in is not None:
        lo = max(lo, burn_in + 1)
        if lo > hi:
            raise DomainError("burn_in leaves an empty window")
    return lo, hi


@dataclass
class LambdaEstimate:
    """Tail-window estimate of the exponent of convergence."""

    value: float
    prefix_len: int
    burn_in: int
    window: tuple[int, int]
    per_n_curve: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        out = {"value": self.value, "prefix_len": self.prefix_len,
               "burn_in": self.burn_in, "window": list(self.window)}
        if self.per_n_curve is not None:
            out["per_n_curve"] = self.per_n_curve.tolist()
        return out


def lambda_hat(seq: DigitSeq, N: int, *, window_fraction: float = 0.5,
               burn_in: int | None = None, cap: float | None = None,
               curve: bool = False) -> LambdaEstimate:
    """``max log(n) / log(d_n)`` over the tail window.

    A terminating expansion has exponent 0 by definition and is not estimated.
    If ``cap`` is given, values above it are reported as ``inf``.
    With ``curve=True`` the ``(n, log n / log d_n)`` table is attached.
    """
    lo, hi = _window(N, window_fraction, burn_in)
    if seq.finite:
        return LambdaEstimate(0.0, len(seq), lo - 1, (lo, hi))
    ns = np.arange(lo, hi + 1)
    ratios = np.log(ns) / _log_digits(seq, lo, hi)
    value = float(ratios.max())
    if cap is not None and value > cap:
        value = math.inf
    table = np.column_stack([ns, ratios]) if curve else None
    return LambdaEstimate(value, N, lo - 1, (lo, hi), table)


def d_exponent_hat(seq: DigitSeq, N: int, *, window_fraction: float = 0.5,
                   burn_in: int | None = None) -> float:
    """``min log(d_n) / log(n)`` over the tail window (lower growth exponent)."""
    lo, hi = _window(N, window_fraction, burn_in)
    if seq.finite:
        raise DomainError("the lower growth exponent needs an infinite sequence")
    lo = max(lo, 2)
    ns = np.arange(lo, hi + 1)
    return float((_log_digits(seq, lo, hi) / np.log(ns)).min())


def series_partial(seq: DigitSeq, s: float, N: int, *, curve: bool = False):
    """``sum_{n <= N} d_n ** -s`` in floating point.

    Returns the final partial sum, or the array of all ``N`` partial sums when
    ``curve`` is true.
    """
    if s < 0:
        raise DomainError("s must be non-negative")
    logs = _log_digits(seq, 1, N)
    terms = np.exp(-s * logs)
    if curve:
        return np.cumsum(terms)
    return math.fsum(terms)


# --- closed-form dimensions ----------------------------------------------------

@dataclass(frozen=True)
class DimensionValue:
    value: float | Fraction
    formula: str
    params: dict = field(default_factory=dict)
    clamped: bool = False

    def __float__(self) -> float:
        return float(self.value)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["value"] = float(self.value)
        out["params"] = {k: (str(v) if isinstance(v, Fraction) else v)
                         for k, v in self.params.items()}
        return out


def _clamp(x: float, formula: str, params: dict) -> DimensionValue:
    if x > 1:
        return DimensionValue(1.0, formula, params, clamped=True)
    if x < 0:
        return DimensionValue(0.0, formula, params, clamped=True)
    return DimensionValue(x, formula, params)


def dim_lambda_level(alpha) -> DimensionValue:
    """Hausdorff dimension of ``{x : lambda(x) = alpha}``: ``1 - alpha`` on [0, 1], else 0."""
    a = parse_alpha(alpha)
    v = 1 - a if a <= 1 else Fraction(0)
    return DimensionValue(v, "lambda-level", {"alpha": a})


def dim_D_level(alpha) -> DimensionValue:
    """Hausdorff dimension of ``{x : D(x) = alpha}``: 0 below 1, ``(alpha-1)/alpha`` above."""
    a = parse_alpha(alpha)
    if a == math.inf:
        v = Fraction(1)
    elif a < 1:
        v = Fraction(0)
    else:
        v = (a - 1) / a
    return DimensionValue(v, "D-level", {"alpha": a})


def dim_fast_growth(phi: GrowthFunction, N: int) -> DimensionValue:
    """``1/B`` with ``log B = max log log phi(n) / n`` over the tail window."""
    lo, hi = _window(N, 0.5, None)
    log_B = max(phi.loglog(n) / n for n in range(lo, hi + 1))
    B = math.exp(log_B) if log_B < 709 else math.inf
    return _clamp(1 / B, "fast-growth", {"N": N, "B": B})


def _log_factorials(n_max: int) -> np.ndarray:
    """``out[n] = log n!`` for n = 0..n_max, by summing logs."""
    out = np.zeros(n_max + 1)
    out[1:] = np.cumsum(np.log(np.arange(1, n_max + 1)))
    return out


def dim_window(t: GrowthFunction, N: int) -> DimensionValue:
    """``1/(1 + eta)`` where eta is the tail-window max of
    ``(log (n+1)! + log t(n+1)) / (log t(1) + ... + log t(n))``."""
    lo, hi = _window(N, 0.5, None)
    log_t = np.array(t.log_values(1, hi + 1))
    if log_t[0] < math.log(2) - 1e-12:
        raise DomainError("t(1) must be at least 2")
    if np.any(np.diff(log_t) < 0):
        raise DomainError("t is not non-decreasing on the sampled range")
    cum = np.cumsum(log_t)
    lf = _log_factorials(hi + 1)
    n = np.arange(lo, hi + 1)
    eta = float(((lf[n + 1] + log_t[n]) / cum[n - 1]).max())
    return _clamp(1 / (1 + eta), "window", {"N": N, "eta": eta})


def dim_phi(phi: GrowthFunction, N: int) -> DimensionValue:
    """``1/A`` with ``A`` from :func:`exponent_A`; values of ``A`` below 1 clamp to dimension 1."""
    lo, hi = tail_window(N)
    a, b = phi.log_value(lo), phi.log_value(hi)
    if b < a:
        raise DomainError("phi is decreasing on the window")
    # phi(n)/log n should be growing; compare in log space
    if math.isfinite(b) and b - math.log(math.log(hi)) <= a - math.log(math.log(max(lo, 2))):
        raise DomainError("phi(n)/log(n) is not increasing across the window")
    A = exponent_A(phi, N)
    return _clamp(1 / A if A > 0 else math.inf, "phi", {"N": N, "A": A})


def xi_estimate(phi: GrowthFunction, N: int) -> float:
    """Tail-window max of ``phi(n+1) / (phi(1) + ... + phi(n))``, computed in log space."""
    lo, hi = _window(N, 0.5, None)
    lp = np.array(phi.log_values(1, hi + 1))
    log_cum = np.logaddexp.accumulate(lp)
    n = np.arange(lo, hi + 1)
    log_ratio = float((lp[n] - log_cum[n - 1]).max())
    return math.exp(log_ratio) if log_ratio < 709 else math.inf


# --- counting non-decreasing digit strings --------------------------------------

def count_monotone(n: int, M: int) -> int:
    """Number of tuples ``2 <= d_1 <= ... <= d_n <= M``: ``(n+M-2)! / (n! (M-2)!)``."""
    if M < 2:
        raise DomainError("M must be at least 2")
    if n < 1:
        raise DomainError("n must be positive")
    return math.comb(n + M - 2, n)


ENUMERATE_MAX_N = 8
ENUMERATE_MAX_M = 12


def enumerate_monotone(n: int, M: int) -> int:
    """Brute-force count of non-decreasing tuples in ``[2, M]**n``."""
    if n > ENUMERATE_MAX_N or M > ENUMERATE_MAX_M:
        raise TooLarge(f"enumeration limited to n <= {ENUMERATE_MAX_N}, "
                       f"M <= {ENUMERATE_MAX_M}")
    if M < 2 or n < 1:
        raise DomainError("need n >= 1 and M >= 2")

    def walk(depth, low):
        if depth == n:
            return 1
        return sum(walk(depth + 1, d) for d in range(low, M + 1))

    return walk(0, 2)
