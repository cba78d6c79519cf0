"""Explicit digit sequences with prescribed growth behaviour.

All sequences are returned as lazy :class:`~engel.core.DigitSeq` objects
unless a finite length is requested.  Digits are exact integers; the only
floating point lives in :func:`tidy_sequence` and :func:`exponent_A`, which
work with logarithms of astronomically large quantities.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Iterator

from .core import DigitSeq
from .errors import DomainError, NoBumpIndex, ScanBudgetExceeded, WindowTooSmall
from .growth import GrowthFunction

SCAN_BUDGET = 10**6
TIDY_WINDOW = 200


def tail_window(N: int, fraction: float = 0.5) -> tuple[int, int]:
    """Index range ``[ceil((1 - fraction) * N), N]`` used for limsup/liminf proxies."""
    lo = max(1, math.ceil(N - fraction * N))
    return lo, N


def parse_alpha(alpha):
    """Accept numbers, Fractions and the strings ``"inf"``/``"oo"``; returns a Fraction or ``math.inf``."""
    if isinstance(alpha, str):
        s = alpha.strip().lower()
        if s in ("inf", "infinity", "oo", "+inf"):
            return math.inf
        try:
            alpha = Fraction(s)
        except ValueError:
            raise DomainError(f"cannot parse alpha {alpha!r}") from None
    if isinstance(alpha, float):
        if math.isnan(alpha):
            raise DomainError("alpha is NaN")
        if math.isinf(alpha):
            if alpha < 0:
                raise DomainError("alpha must be non-negative")
            return math.inf
        # snap to the short rational the caller most likely meant (0.3 -> 3/10)
        snapped = Fraction(alpha).limit_denominator(10**6)
        alpha = snapped if float(snapped) == alpha else Fraction(alpha)
    alpha = Fraction(alpha)
    if alpha < 0:
        raise DomainError(f"alpha = {alpha} is negative")
    return alpha


# --- integer roots and exact ceilings ----------------------------------------

def _iroot_floor(v: int, k: int) -> int:
    """Largest x with x**k <= v, for v >= 0."""
    if v < 2 or k == 1:
        return v
    if k == 2:
        return math.isqrt(v)
    if v.bit_length() < 900:
        x = int(round(v ** (1.0 / k)))
    else:
        x = 1 << -(-v.bit_length() // k)
    # Newton from above, then settle
    if x ** k < v:
        x = 1 << -(-v.bit_length() // k)
    while True:
        y = ((k - 1) * x + v // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > v:
        x -= 1
    while (x + 1) ** k <= v:
        x += 1
    return x


def _ceil_rational_power(base: int, r: Fraction) -> int:
    """Exact ``ceil(base ** r)`` for a positive integer base and rational r > 0."""
    p, q = r.numerator, r.denominator
    v = base ** p
    x = _iroot_floor(v, q)
    return x if x ** q == v else x + 1


class _ExpThresholds:
    """``floor(e**m)`` for m = 0, 1, 2, ..., computed to full precision on demand."""

    def __init__(self):
        self._table = [1]

    def __getitem__(self, m: int) -> int:
        while len(self._table) <= m:
            k = len(self._table)
            with localcontext() as ctx:
                ctx.prec = int(k / math.log(10)) + 30
                # e**k is irrational, so the floor is unambiguous at this precision
                self._table.append(int(Decimal(k).exp()))
        return self._table[m]


_EXP_FLOOR = _ExpThresholds()


def ceil_log(n: int) -> int:
    """Exact ``ceil(ln n)`` for an integer ``n >= 1``."""
    if n < 1:
        raise DomainError("ceil_log needs n >= 1")
    if n == 1:
        return 0
    m = max(1, math.ceil(math.log(n)) - 1)
    while n > _EXP_FLOOR[m]:
        m += 1
    while m > 1 and n <= _EXP_FLOOR[m - 1]:
        m -= 1
    return m


def _lambda_infinity_digits() -> Iterator[int]:
    yield 2
    yield 2
    n, m = 3, 2
    while True:
        # ceil(ln n) = m for floor(e^(m-1)) < n <= floor(e^m)
        hi = _EXP_FLOOR[m]
        while n <= hi:
            yield m
            n += 1
        m += 1


def digits_for_lambda(alpha) -> DigitSeq:
    """An infinite admissible sequence whose exponent of convergence is ``alpha``.

    * ``0 < alpha < inf``: ``ceil((n + 1) ** (1/alpha))``, computed exactly.
    * ``alpha = inf``: ``2, 2`` then ``ceil(ln n)`` for ``n >= 3``.
    * ``alpha = 0``: ``2 ** (n + 1)``.
    """
    alpha = parse_alpha(alpha)
    if alpha == math.inf:
        return DigitSeq.from_iter(_lambda_infinity_digits())
    if alpha == 0:
        return DigitSeq.from_rule(lambda n: 1 << (n + 1))
    r = 1 / alpha
    if r.denominator == 1:
        k = r.numerator
        return DigitSeq.from_rule(lambda n: (n + 1) ** k)
    if r.denominator <= 64 and r.numerator <= 4096:
        return DigitSeq.from_rule(lambda n: _ceil_rational_power(n + 1, r))
    rf = float(r)
    return DigitSeq.from_rule(lambda n: max(2, math.ceil((n + 1) ** rf)))


# --- perturbation family ------------------------------------------------------

@dataclass
class PerturbationFamily:
    """``base`` with ``bits[k]`` added at its k-th strict-increase index.

    A bump index is an ``n`` with ``base[n] < base[n + 1]``.  Bump indices are
    discovered lazily as digits of :attr:`digits` are requested and recorded in
    :attr:`bump_indices`.  A finite ``bits`` iterable is padded with zeros.
    """

    base: DigitSeq
    bits: Iterable[int]
    scan_budget: int = SCAN_BUDGET
    bump_indices: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.digits = DigitSeq.from_iter(self._generate())

    def _generate(self) -> Iterator[int]:
        bits = itertools.chain(iter(self.bits), itertools.repeat(0))
        run = 0
        for n in itertools.count(1):
            d, nxt = self.base.digit(n), self.base.digit(n + 1)
            if d < nxt:
                bit = next(bits)
                if bit not in (0, 1):
                    raise DomainError(f"bit {bit!r} is not 0 or 1")
                self.bump_indices.append(n)
                run = 0
                yield d + bit
            else:
                run += 1
                if run > self.scan_budget:
                    raise NoBumpIndex(
                        f"no strict increase in the {self.scan_budget} digits "
                        f"before index {n + 1}")
                yield d


def perturbed_digits(base: DigitSeq, bits: Iterable[int],
                     scan_budget: int = SCAN_BUDGET) -> DigitSeq:
    """The sequence ``base`` with ``bits[k]`` added at its k-th bump index."""
    return PerturbationFamily(base, bits, scan_budget).digits


# --- dense approximants -------------------------------------------------------

def _first_index(base: DigitSeq, start: int, threshold: int, budget: int) -> int:
    for ell in range(start, start + budget):
        if base.digit(ell) >= threshold:
            return ell
    raise ScanBudgetExceeded(
        f"no digit >= {threshold} among indices {start}..{start + budget - 1}")


def _splice(head: list[int], fill: int, count: int, base: DigitSeq,
            resume: int) -> Iterator[int]:
    yield from head
    yield from itertools.repeat(fill, count)
    for n in itertools.count(resume):
        yield base.digit(n)


def approximant_rational(y_digits, base: DigitSeq, m: int,
                         scan_budget: int = SCAN_BUDGET) -> DigitSeq:
    """Sequence sharing ``base``'s tail whose value lies just above the rational ``y``.

    ``y_digits`` is the complete finite expansion of ``y``.  The output is
    ``y_digits``, then ``d_k(y) + m``, then ``base[l]`` repeated ``l - k - 1``
    times, then ``base[l + 1], base[l + 2], ...`` where ``l`` is the first index
    ``>= k + 2`` with ``base[l] >= d_k(y) + m``.
    """
    if m < 1:
        raise DomainError("m must be positive")
    y = list(y_digits.prefix(len(y_digits)) if isinstance(y_digits, DigitSeq)
             else map(int, y_digits))
    k = len(y)
    DigitSeq.finite_expansion(y)  # admissibility check
    top = y[-1] + m
    ell = _first_index(base, k + 2, top, scan_budget)
    return DigitSeq.from_iter(_splice(y + [top], base.digit(ell), ell - k - 1,
                                      base, ell + 1))


def approximant_irrational(y: DigitSeq, base: DigitSeq, m: int,
                           scan_budget: int = SCAN_BUDGET) -> DigitSeq:
    """Sequence sharing ``y``'s first ``m`` digits and ``base``'s tail.

    The output is ``y[1..m]``, then ``base[l]`` repeated ``l - m`` times, then
    ``base[l + 1], ...`` where ``l`` is the first index ``>= m + 1`` with
    ``base[l] >= y[m]``.
    """
    if m < 1:
        raise DomainError("m must be positive")
    head = y.prefix(m)
    ell = _first_index(base, m + 1, head[-1], scan_budget)
    return DigitSeq.from_iter(_splice(head, base.digit(ell), ell - m, base, ell + 1))


def dense_witnesses(y, base: DigitSeq, ms: Iterable[int]) -> list[DigitSeq]:
    """Approximants of ``y`` at each depth in ``ms``; finite ``y`` uses the rational branch."""
    if isinstance(y, DigitSeq) and not y.finite:
        return [approximant_irrational(y, base, m) for m in ms]
    return [approximant_rational(y, base, m) for m in ms]


# --- window sets --------------------------------------------------------------

def window_member_digits(t: GrowthFunction, n_max: int | None = None) -> DigitSeq:
    """Digits ``floor(n * t(n)) + 1``, the least integers strictly above ``n * t(n)``.

    With ``n_max`` the first ``n_max`` digits are materialized eagerly and
    monotonicity of ``t`` is verified on ``[1, n_max]``; otherwise the sequence
    is lazy and a decrease in ``t`` raises when it is reached.
    """
    if t.value(1) < 2:
        raise DomainError(f"t(1) = {t.value(1)} < 2")

    def gen():
        prev = -math.inf
        for n in itertools.count(1):
            tn = t.value(n)
            if not math.isfinite(tn):
                raise DomainError(f"t({n}) overflows float range")
            if tn < prev:
                raise DomainError(f"t is not non-decreasing at n={n}")
            prev = tn
            yield math.floor(n * tn) + 1

    seq = DigitSeq.from_iter(gen())
    if n_max is not None:
        seq.prefix(n_max)
        return DigitSeq.known_prefix(seq.prefix(n_max))
    return seq


# --- tidy sequences -----------------------------------------------------------

def exponent_A(phi: GrowthFunction, N: int) -> float:
    """``exp(max log(phi(n)) / n)`` over the tail window; ``inf`` if it overflows."""
    if N < 4:
        raise DomainError("N must be at least 4")
    lo, hi = tail_window(N)
    best = max(phi.log_value(n) / n for n in range(lo, hi + 1))
    try:
        return math.exp(best)
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class TidySequence:
    """Regularized envelope of ``phi`` stored as ``logT[j] = log T_j``.

    Lists are 0-based: ``logT[j - 1]`` and ``achiever[j - 1]`` describe index
    ``j`` for ``j = 1..horizon``.  ``achiever`` values are 1-based indices.
    """

    A: float
    epsilon: float
    logT: tuple[float, ...]
    achiever: tuple[int, ...]
    window: int

    @property
    def horizon(self) -> int:
        return len(self.logT)

    def log_T(self, j: int) -> float:
        return self.logT[j - 1]

    def t(self, j: int) -> int:
        return self.achiever[j - 1]

    def to_json(self) -> str:
        return json.dumps({
            "A": self.A, "epsilon": self.epsilon, "horizon": self.horizon,
            "window": self.window, "logT": list(self.logT),
            "achiever": list(self.achiever)})


def tidy_sequence(phi: GrowthFunction, A: float, epsilon: float, J: int,
                  window: int = TIDY_WINDOW) -> TidySequence:
    """``logT[j] = sup_{n >= j} phi(n) * (A + eps)**(j - n)`` for ``j = 1..J``.

    Terms are compared through ``key(n) = log phi(n) - n log(A + eps)``: the
    log of the j-th term is ``key(n) + j log(A + eps)``, so the maximizer over
    ``n >= j`` does not depend on ``j`` except through the range.  The tail
    ``n >= j`` is truncated at ``J + window``; if ``key`` is still rising there
    the supremum may lie beyond it and :class:`WindowTooSmall` is raised.
    """
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    if A < 1:
        raise DomainError("A must be at least 1")
    if J < 1 or window < 2:
        raise DomainError("J must be positive and window at least 2")
    c = math.log(A + epsilon)
    top = J + window
    log_phi = phi.log_values(1, top)
    if any(b < a for a, b in zip(log_phi, log_phi[1:])):
        raise DomainError("phi is not non-decreasing on the sampled range")
    key = [lp - n * c for n, lp in enumerate(log_phi, start=1)]
    if key[-1] > key[-2]:
        raise WindowTooSmall(
            f"terms still increasing at n = {top}; the supremum lies beyond the window")

    # suffix argmax with ties resolved to the smallest index
    achiever = [0] * (top + 1)
    best = top
    for n in range(top, 0, -1):
        if key[n - 1] >= key[best - 1]:
            best = n
        achiever[n] = best
    logT = []
    for j in range(1, J + 1):
        tj = achiever[j]
        if tj == j:
            logT.append(phi.value(j) if math.isfinite(phi.value(j))
                        else math.exp(log_phi[j - 1]))
        else:
            logT.append(math.exp(log_phi[tj - 1] + (j - tj) * c))
    return TidySequence(A=A, epsilon=epsilon, logT=tuple(logT),
                        achiever=tuple(achiever[1:J + 1]), window=window)


def check_tidy(ts: TidySequence, phi: GrowthFunction, rtol: float = 1e-9) -> dict:
    """Evaluate the four structural properties; returns ``{name: bool}``."""
    J, lt, ach = ts.horizon, ts.logT, ts.achiever
    growth = ts.A + ts.epsilon
    monotone = all(b >= a * (1 - rtol) for a, b in zip(lt, lt[1:]))
    ratio = all(lt[j + 1] <= growth * lt[j] * (1 + rtol) for j in range(J - 1))
    plateau = all(ach[j - 1] >= j for j in range(1, J + 1)) and all(
        ach[ach[j - 1] - 1] == ach[j - 1] and
        all(ach[i - 1] == ach[j - 1] for i in range(j, ach[j - 1] + 1))
        for j in range(1, J + 1) if ach[j - 1] <= J)
    exact = all(math.isclose(lt[p - 1], phi.value(p), rel_tol=rtol)
                for p in range(1, J + 1) if ach[p - 1] == p)
    return {"monotone": monotone, "growth_ratio": ratio,
            "plateau": plateau, "exact_at_plateau": exact}
