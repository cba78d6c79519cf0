import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engel import core
from engel.core import (
    DigitSeq,
    cylinder,
    engel_step,
    expand,
    expand_rational,
    is_admissible,
    locate,
    reconstruct,
)
from engel.errors import (
    AdmissibilityError,
    DomainError,
    LengthError,
    TerminatedEarly,
)


def oracle_expand(x: Fraction) -> list[int]:
    """Engel digits via Fraction.__ceil__ rather than integer ceiling division."""
    out = []
    while x:
        d = math.ceil(1 / x)
        out.append(d)
        x = x * d - 1
    return out


def oracle_series(digits) -> Fraction:
    total, prod = Fraction(0), 1
    for d in digits:
        prod *= d
        total += Fraction(1, prod)
    return total


rationals = st.builds(
    lambda q, p: Fraction(p % (q - 1) + 1, q),
    st.integers(min_value=2, max_value=10**6), st.integers(min_value=0))

admissible_prefixes = st.lists(st.integers(min_value=0, max_value=6), min_size=1,
                               max_size=8).map(
    lambda steps: [2 + sum(steps[:i + 1]) for i in range(len(steps))])


@pytest.mark.parametrize("x, expected", [
    (Fraction(1, 2), (2, Fraction(0))),
    (Fraction(3, 4), (2, Fraction(1, 2))),
    (Fraction(2, 3), (2, Fraction(1, 3))),
])
def test_engel_step_examples(x, expected):
    assert engel_step(x) == expected


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1), Fraction(7, 5), Fraction(-1, 3)])
def test_engel_step_rejects_outside_unit_interval(x):
    with pytest.raises(DomainError):
        engel_step(x)


def test_floats_rejected():
    with pytest.raises(DomainError):
        engel_step(0.5)


@pytest.mark.parametrize("x, digits", [
    (Fraction(1, 2), [2]),
    (Fraction(3, 4), [2, 2]),
    (Fraction(5, 7), [2, 3, 4, 7]),
])
def test_expand_examples(x, digits):
    seq = expand(x, 10)
    assert seq.finite
    assert seq.prefix(len(seq)) == digits == oracle_expand(x)


def test_five_sevenths_series_is_exact():
    assert oracle_series([2, 3, 4, 7]) == Fraction(5, 7)


def test_expand_truncates_without_finite_flag():
    seq = expand(Fraction(5, 7), 2)
    assert not seq.finite
    assert seq.prefix(2) == [2, 3]
    with pytest.raises(LengthError):
        seq.digit(3)


@pytest.mark.parametrize("digits, n, expected", [
    ([2], 1, Fraction(1, 2)),
    ([2, 3, 4], 3, Fraction(17, 24)),
])
def test_reconstruct_examples(digits, n, expected):
    assert reconstruct(digits, n) == expected


def test_reconstruct_e_minus_two_prefix():
    N = 30
    expected = sum(Fraction(1, math.factorial(k)) for k in range(2, N + 2))
    assert reconstruct(list(range(2, N + 2)), N) == expected


def test_reconstruct_length_error():
    with pytest.raises(LengthError):
        reconstruct([2, 3], 3)


@pytest.mark.parametrize("digits, ok", [
    ([2, 2, 5], True),
    ([1, 2, 3], False),
    ([2, 4, 3], False),
    ([], False),
    ([2], True),
])
def test_is_admissible(digits, ok):
    assert is_admissible(digits) is ok


@pytest.mark.parametrize("digits, left, right, length", [
    ([2], Fraction(1, 2), Fraction(1), Fraction(1, 2)),
    ([2, 3], Fraction(2, 3), Fraction(3, 4), Fraction(1, 12)),
    ([2, 2], Fraction(3, 4), Fraction(1), Fraction(1, 4)),
])
def test_cylinder_examples(digits, left, right, length):
    c = cylinder(digits)
    assert (c.left, c.right, c.length) == (left, right, length)


def test_cylinder_rejects_inadmissible():
    with pytest.raises(AdmissibilityError):
        cylinder([3, 2])


def test_locate_examples():
    assert locate(Fraction(5, 7), 2) == cylinder([2, 3])
    with pytest.raises(TerminatedEarly) as info:
        locate(Fraction(1, 2), 2)
    assert info.value.length == 1
    # exact finite expansion of length n sits at the left endpoint of its cylinder
    c = locate(Fraction(17, 24), 3)
    assert c == cylinder([2, 3, 4])
    assert c.left == Fraction(17, 24)


@settings(max_examples=300, deadline=None)
@given(rationals)
def test_roundtrip(x):
    seq = expand_rational(x)
    assert seq.finite
    assert core.value(seq) == x
    assert seq.prefix(len(seq)) == oracle_expand(x)


@settings(max_examples=200, deadline=None)
@given(rationals)
def test_expand_is_admissible(x):
    digits = list(expand_rational(x))
    assert digits[0] >= 2
    assert all(a <= b for a, b in zip(digits, digits[1:]))


@settings(max_examples=200, deadline=None)
@given(admissible_prefixes)
def test_cylinder_length_matches_product_formula(digits):
    c = cylinder(digits)
    assert c.length == c.right - c.left == core.cylinder_length(digits)
    assert c.length <= Fraction(1, 2 ** len(digits))


@settings(max_examples=200, deadline=None)
@given(admissible_prefixes, st.integers(min_value=0, max_value=5))
def test_cylinders_nest(digits, step):
    parent = cylinder(digits)
    child = cylinder(digits + [digits[-1] + step])
    assert parent.contains_interval(child)


def test_membership_random_rationals():
    rng = random.Random(2024)
    for _ in range(1000):
        q = rng.randint(2, 10**6)
        x = Fraction(rng.randint(1, q - 1), q)
        digits = list(expand_rational(x))
        for n in range(1, min(8, len(digits)) + 1):
            assert x in cylinder(digits[:n])


@settings(max_examples=100, deadline=None)
@given(admissible_prefixes, st.integers(min_value=1, max_value=10**6),
       st.integers(min_value=0))
def test_points_inside_cylinder_have_its_prefix(digits, den, k):
    c = cylinder(digits)
    # a point strictly inside [left, right)
    x = c.left + c.length * Fraction(k % den, den)
    assert expand(x, len(digits)).prefix(len(digits)) == digits


def test_digitseq_rejects_decrease_when_materialized():
    seq = DigitSeq.from_iter(iter([2, 3, 2]))
    assert seq.prefix(2) == [2, 3]
    with pytest.raises(AdmissibilityError):
        seq.digit(3)


def test_digitseq_memoizes_rule_calls():
    calls = []

    def rule(n):
        calls.append(n)
        return n + 1

    seq = DigitSeq.from_rule(rule)
    seq.prefix(5)
    seq.prefix(5)
    seq.digit(3)
    assert calls == [1, 2, 3, 4, 5]


def test_json_wire_format():
    big = 2**100
    text = core.digits_to_json([2, 3, big])
    assert json.loads(text) == ["2", "3", str(big)]
    assert core.digits_from_json(text) == [2, 3, big]
    r = Fraction(5, 7)
    assert core.ratio_to_dict(r) == {"num": "5", "den": "7"}
    assert core.ratio_from_dict(json.loads(json.dumps(core.ratio_to_dict(r)))) == r
