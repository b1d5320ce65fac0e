"""Truncated series layer: order bookkeeping, composition, inversion,
exact division, bivariate (s - t) division."""

from __future__ import annotations

import math

import pytest

from qonsager.coeff import MINUS_ONE, ONE, Q, QINV, RatQ, TWO_BRACKET, q_pow, qint
from qonsager.ncpoly import NcPoly, W0, W1
from qonsager.series import NcSeries, NcSeries2, geometric_alternating, u_series

X, Y = NcPoly.sym(W0), NcPoly.sym(W1)


def test_order_honesty():
    f = NcSeries({0: NcPoly.scalar(ONE)}, order=3)
    assert f.coeff(3) == 0
    with pytest.raises(ValueError):
        f.coeff(4)
    g = NcSeries({1: X}, order=5)
    assert (f + g).order == 3
    # product order: min(3 + 1, 5 + 0) = 4
    assert (f * g).order == 4


def test_mul_noncommutative_coefficients():
    f = NcSeries({0: X}, order=4)
    g = NcSeries({0: Y}, order=4)
    assert (f * g).coeff(0) == X * Y
    assert (g * f).coeff(0) == Y * X
    assert (f * g).coeff(0) != (g * f).coeff(0)


def test_scale_var_matches_composition():
    u = u_series(TWO_BRACKET, 9)
    via_scale = u.scale_var(QINV)
    inner = NcSeries.monomial(QINV, 1)
    via_subst = u.subst(inner)
    for n in range(10):
        assert via_scale.coeff(n) == via_subst.coeff(n)


def test_standard_scalar_series():
    # (q+q^-1)/(t+t^-1) evaluated at q^-1 t: expansion
    # (q+q^-1)(q^-1 t - q^-3 t^3 + q^-5 t^5 - ...)
    s = u_series(TWO_BRACKET, 5).scale_var(QINV)
    assert s.coeff(0) == 0
    assert s.coeff(1) == NcPoly.scalar(TWO_BRACKET * q_pow(-1))
    assert s.coeff(2) == 0
    assert s.coeff(3) == NcPoly.scalar(-TWO_BRACKET * q_pow(-3))
    assert s.coeff(5) == NcPoly.scalar(TWO_BRACKET * q_pow(-5))
    # the twin with q <-> q^-1
    t = u_series(TWO_BRACKET, 5).scale_var(Q)
    assert t.coeff(3) == NcPoly.scalar(-TWO_BRACKET * q_pow(3))


def test_geometric_inverse():
    one_minus_t = NcSeries({0: NcPoly.scalar(ONE), 1: NcPoly.scalar(MINUS_ONE)},
                           order=8)
    inv = one_minus_t.invert()
    for n in range(9):
        assert inv.coeff(n) == NcPoly.scalar(ONE), n
    prod = one_minus_t * inv
    assert prod.coeff(0) == NcPoly.scalar(ONE)
    for n in range(1, 8):
        assert prod.coeff(n) == 0


def test_invert_two_sided_noncommutative():
    f = NcSeries({0: NcPoly.scalar(RatQ.from_int(2)), 1: X, 2: Y * X}, order=6)
    g = f.invert()
    left = f * g
    right = g * f
    for n in range(7):
        expect = NcPoly.scalar(ONE) if n == 0 else NcPoly.zero()
        assert left.coeff(n) == expect
        assert right.coeff(n) == expect


def test_invert_preconditions():
    with pytest.raises(ValueError):
        NcSeries({1: X}, order=4).invert()
    with pytest.raises(ValueError):
        NcSeries({0: X}, order=4).invert()  # non-scalar constant term
    with pytest.raises(ValueError):
        NcSeries({0: NcPoly.scalar(ONE)}, order=math.inf).invert()


def test_div_exact_univariate():
    t2_plus_t3 = NcSeries({2: NcPoly.scalar(ONE), 3: NcPoly.scalar(ONE)},
                          order=9)
    d = NcSeries({1: NcPoly.scalar(ONE), 2: NcPoly.scalar(ONE)}, order=9)
    quot = t2_plus_t3.div_exact(d)
    assert quot.coeff(1) == NcPoly.scalar(ONE)
    for n in range(2, 8):
        assert quot.coeff(n) == 0
    with pytest.raises(ValueError):
        NcSeries({0: NcPoly.scalar(ONE)}, order=5).div_exact(d)


def test_subst_preconditions():
    f = u_series(TWO_BRACKET, 5)
    bad_inner = NcSeries({0: NcPoly.scalar(ONE), 1: NcPoly.scalar(ONE)},
                         order=5)
    with pytest.raises(ValueError):
        f.subst(bad_inner)
    laurent = NcSeries({-1: NcPoly.scalar(ONE)}, order=5)
    with pytest.raises(ValueError):
        laurent.subst(NcSeries.monomial(ONE, 1, order=5))


def test_shift_laurent():
    f = NcSeries({0: X}, order=4)
    a = f.shift(-1)
    assert a.coeff(-1) == X
    assert a.order == 3
    back = a.shift(1)
    assert back.coeff(0) == X


# -- bivariate ---------------------------------------------------------------


def _emb(f, slot, order=None):
    return NcSeries2.embed(f, slot, order)


def test_embed_and_product():
    f = NcSeries({1: X, 2: Y}, order=6)
    fs = _emb(f, 0)
    ft = _emb(f, 1)
    prod = fs * ft
    assert prod.coeff(1, 1) == X * X
    assert prod.coeff(1, 2) == X * Y
    assert prod.coeff(2, 1) == Y * X
    # bracket [f(s), f(t)] need not vanish in the free algebra
    br = fs * ft - ft * fs
    assert br.coeff(1, 2) == X * Y - Y * X


def test_div_st_exact():
    # s^2 - t^2 = (s - t)(s + t)
    f = NcSeries2({(2, 0): NcPoly.scalar(ONE), (0, 2): NcPoly.scalar(MINUS_ONE)},
                  order=6)
    q = f.div_st()
    assert q.coeff(1, 0) == NcPoly.scalar(ONE)
    assert q.coeff(0, 1) == NcPoly.scalar(ONE)
    assert q.coeff(1, 1) == 0


def test_div_st_divided_difference_reads_linear_coeff():
    # (f(s) - f(t))/(s - t) has constant component equal to the t^1
    # coefficient of f
    f = NcSeries({0: X, 1: Y * X, 2: X * Y, 3: Y}, order=5)
    num = _emb(f, 0) - _emb(f, 1)
    qq = num.div_st()
    assert qq.coeff(0, 0) == Y * X


def test_div_st_rejects_nondivisible():
    f = NcSeries2({(2, 0): NcPoly.scalar(ONE)}, order=6)
    with pytest.raises(ValueError):
        f.div_st()
    g = NcSeries2({(0, 0): X}, order=6)
    with pytest.raises(ValueError):
        g.div_st()


def test_div_1_minus_st():
    one = NcSeries2({(0, 0): NcPoly.scalar(ONE)}, order=8)
    geo = one.div_1_minus_st()
    for k in range(5):
        assert geo.coeff(k, k) == NcPoly.scalar(ONE)
    assert geo.coeff(1, 2) == 0
    # multiplying back by (1 - st) recovers 1
    one_minus_st = NcSeries2({(0, 0): NcPoly.scalar(ONE),
                              (1, 1): NcPoly.scalar(MINUS_ONE)}, order=8)
    back = one_minus_st * geo
    assert back.coeff(0, 0) == NcPoly.scalar(ONE)
    for i in range(1, 5):
        assert back.coeff(i, i) == 0


def test_eq_upto():
    f = NcSeries({1: X}, order=3)
    g = NcSeries({1: X, 4: Y}, order=4)
    assert f.eq_upto(g, 3)
    with pytest.raises(ValueError):
        f.eq_upto(g, 4)
