"""Exact Engel series machinery.

Every quantity here is an exact rational (:class:`fractions.Fraction`) or a
Python integer; nothing in this module touches floating point.

Digits are indexed from 1, matching the usual notation ``d_1, d_2, ...``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    AdmissibilityError,
    DomainError,
    LengthError,
    TerminatedEarly,
)

Ratio = Fraction


def as_ratio(x) -> Fraction:
    """Coerce ints, Fractions, decimal strings and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would silently carry binary rounding into exact code.
    """
    if isinstance(x, float):
        raise DomainError("floats are not accepted; pass a Fraction, int or string")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot interpret {x!r} as a rational") from exc


def _check_unit_interval(x: Fraction) -> None:
    if not 0 < x < 1:
        raise DomainError(f"x = {x} is not in the open interval (0, 1)")


class DigitSeq:
    """A finite or lazily generated non-decreasing sequence of digits >= 2.

    Digits produced by the source iterator are memoized, so any prefix is read
    from the source exactly once.  Each newly materialized digit is checked
    against its predecessor; a source that breaks admissibility raises
    :class:`AdmissibilityError` at the first offending digit.

    The memo is not locked.  Materialize the prefix you need (``prefix(n)``)
    before handing the sequence to other threads.
    """

    __slots__ = ("_digits", "_source", "_finite")

    def __init__(self, digits: Iterable[int] = (), source: Iterator[int] | None = None,
                 finite: bool = False):
        if finite and source is not None:
            raise ValueError("a finite sequence cannot have a generator")
        self._digits: list[int] = []
        self._source = source
        self._finite = finite
        for d in digits:
            self._push(int(d))

    @classmethod
    def finite_expansion(cls, digits: Iterable[int]) -> "DigitSeq":
        """The complete digit string of a terminating expansion."""
        seq = cls(digits, finite=True)
        if not seq._digits:
            raise AdmissibilityError("a finite expansion has at least one digit")
        return seq

    @classmethod
    def from_iter(cls, it: Iterable[int]) -> "DigitSeq":
        return cls(source=iter(it))

    @classmethod
    def from_rule(cls, rule: Callable[[int], int]) -> "DigitSeq":
        """Infinite sequence whose n-th digit (n >= 1) is ``rule(n)``."""
        return cls(source=map(rule, itertools.count(1)))

    @classmethod
    def known_prefix(cls, digits: Iterable[int]) -> "DigitSeq":
        """A prefix of an infinite sequence with no way to extend it."""
        return cls(digits)

    def _push(self, d: int) -> None:
        if self._digits:
            if d < self._digits[-1]:
                raise AdmissibilityError(
                    f"digit {d} at position {len(self._digits) + 1} is smaller "
                    f"than its predecessor {self._digits[-1]}")
        elif d < 2:
            raise AdmissibilityError(f"first digit {d} is smaller than 2")
        self._digits.append(d)

    @property
    def finite(self) -> bool:
        return self._finite

    @property
    def materialized(self) -> int:
        """Number of digits computed so far."""
        return len(self._digits)

    def _extend_to(self, n: int) -> bool:
        while len(self._digits) < n and self._source is not None:
            try:
                d = next(self._source)
            except StopIteration:
                self._source = None
                break
            self._push(int(d))
        return len(self._digits) >= n

    def available(self, n: int) -> bool:
        """True if at least ``n`` digits exist (materializing them if needed)."""
        return self._extend_to(n)

    def digit(self, n: int) -> int:
        """The n-th digit, 1-based."""
        if n < 1:
            raise IndexError("digits are indexed from 1")
        if not self._extend_to(n):
            raise LengthError(f"sequence has only {len(self._digits)} digit(s), "
                              f"digit {n} requested")
        return self._digits[n - 1]

    def prefix(self, n: int) -> list[int]:
        """The first ``n`` digits as a new list."""
        if not self._extend_to(n):
            raise LengthError(f"sequence has only {len(self._digits)} digit(s), "
                              f"{n} requested")
        return self._digits[:n]

    def __getitem__(self, n: int) -> int:
        return self.digit(n)

    def __iter__(self) -> Iterator[int]:
        for n in itertools.count(1):
            if not self._extend_to(n):
                return
            yield self._digits[n - 1]

    def __len__(self) -> int:
        if not self._finite:
            raise TypeError("length of a non-terminating sequence is undefined")
        return len(self._digits)

    def __repr__(self) -> str:
        shown = ", ".join(map(str, self._digits[:8]))
        if self._finite:
            return f"DigitSeq<{shown}{', ...' if len(self._digits) > 8 else ''}>"
        return f"DigitSeq<{shown}{', ' if shown else ''}...>"


def _digits_of(prefix) -> list[int]:
    if isinstance(prefix, DigitSeq):
        return prefix._digits if prefix.finite else prefix.prefix(prefix.materialized)
    return [int(d) for d in prefix]


def engel_step(x) -> tuple[int, Fraction]:
    """One application of the Engel map: returns ``(ceil(1/x), x*ceil(1/x) - 1)``."""
    x = as_ratio(x)
    _check_unit_interval(x)
    p, q = x.numerator, x.denominator
    d = -(-q // p)
    return d, Fraction(p * d - q, q)


def expand(x, max_n: int) -> DigitSeq:
    """Engel digits of ``x``, stopping when the map reaches 0 or after ``max_n`` digits.

    The result is flagged finite only when the expansion actually terminated.
    """
    x = as_ratio(x)
    _check_unit_interval(x)
    if max_n < 1:
        raise DomainError("max_n must be positive")
    # integer-only loop: x = p/q, step p <- p*d - q
    p, q = x.numerator, x.denominator
    digits = []
    while len(digits) < max_n:
        d = -(-q // p)
        digits.append(d)
        p = p * d - q
        if p == 0:
            return DigitSeq.finite_expansion(digits)
    return DigitSeq.known_prefix(digits)


def expand_rational(x) -> DigitSeq:
    """Full (always terminating) expansion of a rational in (0, 1)."""
    x = as_ratio(x)
    _check_unit_interval(x)
    # the numerator strictly decreases at every step, so this terminates
    return expand(x, x.numerator)


def _partial_sum(digits: Sequence[int], n: int) -> Fraction:
    num, den = 0, 1
    for d in digits[:n]:
        # num/den + 1/(den*d) with den the running product
        num = num * d + 1
        den *= d
    return Fraction(num, den)


def reconstruct(prefix, n: int) -> Fraction:
    """Exact value of the first ``n`` terms of the Engel series."""
    if n < 1:
        raise DomainError("n must be positive")
    if isinstance(prefix, DigitSeq):
        digits = prefix.prefix(n)
    else:
        digits = [int(d) for d in prefix]
        if len(digits) < n:
            raise LengthError(f"only {len(digits)} digit(s) available, {n} requested")
    return _partial_sum(digits, n)


def value(seq: DigitSeq) -> Fraction:
    """Exact value of a finite expansion."""
    if not seq.finite:
        raise DomainError("only finite expansions have an exact rational value")
    return _partial_sum(seq.prefix(len(seq)), len(seq))


def is_admissible(prefix) -> bool:
    digits = list(prefix)
    if not digits or digits[0] < 2:
        return False
    return all(a <= b for a, b in zip(digits, digits[1:]))


@dataclass(frozen=True)
class CylinderInterval:
    """Set of x whose first ``len(digits)`` Engel digits equal ``digits``.

    The set is the half-open interval ``[left, right)``.
    """

    digits: tuple[int, ...]
    left: Fraction
    right: Fraction

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    @property
    def order(self) -> int:
        return len(self.digits)

    def __contains__(self, x) -> bool:
        return self.left <= as_ratio(x) < self.right

    def contains_interval(self, other: "CylinderInterval") -> bool:
        return self.left <= other.left and other.right <= self.right


def cylinder_length(digits: Sequence[int]) -> Fraction:
    """Closed-form length ``1 / (s_1 ... s_n (s_n - 1))``."""
    prod = 1
    for d in digits:
        prod *= d
    return Fraction(1, prod * (digits[-1] - 1))


def cylinder(prefix, n: int | None = None) -> CylinderInterval:
    """Order-``n`` cylinder of an admissible prefix (default: the whole prefix)."""
    if isinstance(prefix, DigitSeq):
        if n is None:
            n = prefix.materialized
        digits = prefix.prefix(n)
    else:
        digits = [int(d) for d in prefix]
        if n is not None:
            if len(digits) < n:
                raise LengthError(f"only {len(digits)} digit(s) available, {n} requested")
            digits = digits[:n]
    if not is_admissible(digits):
        raise AdmissibilityError(f"{digits} is not admissible")
    head = _partial_sum(digits, len(digits) - 1) if len(digits) > 1 else Fraction(0)
    prod = 1
    for d in digits[:-1]:
        prod *= d
    last = digits[-1]
    left = head + Fraction(1, prod * last)
    right = head + Fraction(1, prod * (last - 1))
    return CylinderInterval(tuple(digits), left, right)


def locate(x, n: int) -> CylinderInterval:
    """The order-``n`` cylinder containing ``x``.

    A rational whose expansion has exactly ``n`` digits is the left endpoint of
    the cylinder of its full digit string and is located there.
    """
    seq = expand(x, n)
    if seq.finite and len(seq) < n:
        raise TerminatedEarly(len(seq))
    return cylinder(seq.prefix(n))


# --- JSON wire format: big integers always travel as decimal strings ---------

def digits_to_json(digits) -> str:
    return json.dumps([str(d) for d in _digits_of(digits)])


def digits_from_json(text: str) -> list[int]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise DomainError("digit sequences serialize as a JSON array")
    return [int(d) for d in data]


def ratio_to_dict(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def ratio_from_dict(obj: dict) -> Fraction:
    try:
        return Fraction(int(obj["num"]), int(obj["den"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed ratio object {obj!r}") from exc
