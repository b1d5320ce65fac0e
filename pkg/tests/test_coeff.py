"""Tests for the exact Q(q) coefficient field.

Expected values below were fixed independently (hand expansion / Fraction
oracle at random rational q) before the implementation was written.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qonsager.coeff import (
    MINUS_ONE,
    ONE,
    Q,
    QINV,
    ZERO,
    RatQ,
    parse,
    q_pow,
    qint,
    qsym,
)


def test_basic_identities():
    assert Q * QINV == ONE
    assert Q + (-Q) == ZERO
    assert ONE + MINUS_ONE == ZERO
    assert q_pow(3) * q_pow(-5) == q_pow(-2)
    assert q_pow(0) is ONE


def test_interning_of_zero_one():
    assert (Q - Q) is ZERO
    assert (Q * QINV) is ONE
    assert RatQ.from_int(0) is ZERO
    assert RatQ.from_int(1) is ONE


def test_qint_small():
    assert qint(0) == ZERO
    assert qint(1) == ONE
    assert qint(2) == Q + QINV
    # [3] = q^2 + 1 + q^-2
    assert qint(3) == q_pow(2) + ONE + q_pow(-2)
    assert qint(-3) == -qint(3)


def test_qint_defining_identity():
    # [n]_q * (q - q^-1) = q^n - q^-n for n <= 20
    d = Q - QINV
    for n in range(21):
        assert qint(n) * d == q_pow(n) - q_pow(-n), n


def test_quotient_example():
    # (q^2 - q^-2)/(q - q^-1) = q + q^-1
    num = q_pow(2) - q_pow(-2)
    den = Q - QINV
    assert num / den == Q + QINV


def test_xi_times_rho_squared():
    # xi = -q(q - q^-1)/(q^2 - q^-2)^4; so xi * (q^2 - q^-2)^4 = -q(q - q^-1)
    r = q_pow(2) - q_pow(-2)
    xi = (MINUS_ONE * Q * (Q - QINV)) / r ** 4
    assert xi * r ** 4 == -(Q * (Q - QINV))


def test_qsym():
    assert qsym(0) == RatQ.from_int(2)
    assert qsym(1) == Q + QINV
    assert qsym(2) == q_pow(2) + q_pow(-2)
    # [2n] / [n] = q^n + q^-n
    for n in range(1, 9):
        assert qint(2 * n) / qint(n) == qsym(n)


def test_integer_fractions():
    h = RatQ.from_ratio(3, 2)
    assert h + h == RatQ.from_int(3)
    assert h * RatQ.from_ratio(2, 3) == ONE
    assert str(h) == "(3)/(2)"


def test_division_by_zero_reported():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()


def test_str_examples():
    x = (q_pow(2) + ONE) / q_pow(3)
    assert str(x) == "(q^2+1)/(q^3)"
    assert str(qint(3)) == "(q^4+q^2+1)/(q^2)"
    assert str(ZERO) == "0"
    assert str(ONE) == "1"
    assert str(Q + ONE) == "q+1"
    assert str(-Q) == "-q"


def test_parse_round_trip():
    samples = [
        ZERO,
        ONE,
        MINUS_ONE,
        Q,
        QINV,
        qint(5),
        qsym(3),
        RatQ.from_ratio(-7, 3),
        (q_pow(2) - q_pow(-2)) ** 3 / (Q + QINV),
        (ONE + Q) / (ONE - Q),
    ]
    for x in samples:
        assert parse(str(x)) == x, str(x)


def test_parse_loose_forms():
    assert parse("q^-2") == q_pow(-2)
    assert parse("q + q^-1") == qint(2)
    assert parse("3/2") == RatQ.from_ratio(3, 2)
    assert parse("-2*q^3+q") == -2 * q_pow(3) + Q
    with pytest.raises(ValueError):
        parse("q^^2")
    with pytest.raises(ZeroDivisionError):
        parse("1/0")


# ---------------------------------------------------------------------------
# numeric cross-check: evaluate at random rational q and compare to Fraction


def _eval(x: RatQ, qv: Fraction) -> Fraction:
    num = sum(c * qv ** i for i, c in enumerate(x.num))
    den = sum(c * qv ** i for i, c in enumerate(x.den))
    return Fraction(num, den)


ratq_st = st.builds(
    lambda cs, ds, k: RatQ._make(tuple(cs) or (0,), tuple(ds) + (1,)) * q_pow(k),
    st.lists(st.integers(-9, 9), min_size=1, max_size=4),
    st.lists(st.integers(-5, 5), max_size=3),
    st.integers(-3, 3),
)


@settings(max_examples=200, deadline=None)
@given(ratq_st, ratq_st, ratq_st)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    if a != ZERO:
        assert a * a.inv() == ONE


@settings(max_examples=100, deadline=None)
@given(ratq_st, ratq_st)
def test_matches_fraction_arithmetic(a, b):
    qv = Fraction(7, 5)
    assert _eval(a + b, qv) == _eval(a, qv) + _eval(b, qv)
    assert _eval(a * b, qv) == _eval(a, qv) * _eval(b, qv)
    assert _eval(a - b, qv) == _eval(a, qv) - _eval(b, qv)


@settings(max_examples=150, deadline=None)
@given(ratq_st)
def test_canonical_idempotent(a):
    # re-normalizing canonical data must be the identity
    b = RatQ._make(a.num, a.den)
    assert b.num == a.num and b.den == a.den
    # denominator sign convention
    if a.den:
        assert a.den[-1] > 0
    # round trip through text
    assert parse(str(a)) == a
