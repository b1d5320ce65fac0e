"""Commutative z-polynomial layer: the two triangular families, the
substitution identity, the vee endomorphism and its inverse, grading facts.

Expected polynomials below are frozen from independent sources (hand
expansion for small n; all table rows re-derived with a separate
Fraction-valued oracle before this module was written).
"""

from __future__ import annotations

import pytest

from qonsager.coeff import ONE, RatQ, TWO_BRACKET, q_pow, qsym
from qonsager.zpoly import (
    ZPoly,
    filtration_equal_upto,
    partitions,
    set_var_cutoff,
    theta,
    theta_kernel_coincidence,
    vee_inverse_table,
    vee_map,
    zdown,
    zsubst_ST,
    zvee,
)

B2 = TWO_BRACKET


def z(n):
    return ZPoly.gen(n)


def test_ring_basics():
    p = z(2) * z(1) + z(1) * z(2)
    assert p == z(1) * z(2) * 2
    assert (z(1) + z(2)) * (z(1) - z(2)) == z(1) ** 2 - z(2) ** 2
    assert z(3).coeff((3,)) == ONE
    assert (z(2) * z(1) * z(1)).coeff((2, 1, 1)) == ONE
    assert ZPoly.one().theta() == ONE
    assert z(1).theta() == 0


def test_partition_rendering():
    p = z(3) * z(1) * z(1) + ZPoly.one()
    assert str(p) == "(1)*z3*z1^2 + (1)*1"


def test_zdown_table_small():
    assert zdown(0) == ZPoly.one()
    assert zdown(1) == z(1)
    assert zdown(2) == z(2)
    assert zdown(3) == z(3) - z(1) * B2 ** -2
    assert zdown(4) == z(4) - z(2) * (B2 ** -2 * 2)


def test_zdown_table_full():
    # rows n = 5..9 of the frozen table
    assert zdown(5) == z(5) - z(3) * (B2 ** -2 * 3) + z(1) * B2 ** -4
    assert zdown(6) == z(6) - z(4) * (B2 ** -2 * 4) + z(2) * (B2 ** -4 * 3)
    assert zdown(7) == (z(7) - z(5) * (B2 ** -2 * 5) + z(3) * (B2 ** -4 * 6)
                        - z(1) * B2 ** -6)
    assert zdown(8) == (z(8) - z(6) * (B2 ** -2 * 6) + z(4) * (B2 ** -4 * 10)
                        - z(2) * (B2 ** -6 * 4))
    assert zdown(9) == (z(9) - z(7) * (B2 ** -2 * 7) + z(5) * (B2 ** -4 * 15)
                        - z(3) * (B2 ** -6 * 10) + z(1) * B2 ** -8)


def test_zvee_examples():
    assert zvee(0) == ZPoly.one()
    assert zvee(1) == z(1) * B2 ** 2
    assert zvee(2) == z(2) * (B2 ** 2 * qsym(2)) + z(1) ** 2 * B2 ** 2
    assert zvee(3) == (z(3) * (B2 ** 3 * qsym(3))
                       + z(1) * z(2) * B2 ** 4
                       - z(1) * (B2 * qsym(3)))


def test_zvee_leading_coefficient_and_grading():
    for n in range(1, 9):
        v = zvee(n)
        assert v.coeff((n,)) == B2 ** n * qsym(n), n
        assert v.theta() == 0
        assert v.max_grade() <= n
        assert v.max_var() == n


def test_substitution_identity_to_order_12():
    # raises internally on any mismatch; reaching the end is the assertion
    zs, zt, vee = zsubst_ST(12)
    assert zs[0] == ZPoly.one()
    assert vee[0] == ZPoly.one()
    # spot-check the closed form on one side
    assert zs[3] == zdown(3) * (B2 ** 3 * q_pow(-3))


def test_inner_series_requires_no_constant_term():
    from qonsager.zpoly import z_of_scalar_series

    with pytest.raises(ValueError):
        z_of_scalar_series({0: ONE, 1: ONE}, 4)


def test_vee_inverse_examples():
    inv = vee_inverse_table(3)
    # entry n is written in placeholders: z_k stands for the k-th vee element
    v1, v2, v3 = z(1), z(2), z(3)
    assert inv[0] == v1 * B2 ** -2
    assert inv[1] == (v2 * B2 ** 2 - v1 ** 2) * (B2 ** 4 * qsym(2)).inv()
    expected3 = (v3 * (B2 ** 2 * qsym(2))
                 - v1 * v2 * B2 ** 2
                 + v1 ** 3
                 + v1 * (B2 * qsym(2) * qsym(3))) \
        * (B2 ** 5 * qsym(2) * qsym(3)).inv()
    assert inv[2] == expected3


def test_vee_inverse_round_trip_to_8():
    inv = vee_inverse_table(8)
    images = {k: zvee(k) for k in range(1, 9)}
    for n in range(1, 9):
        assert inv[n - 1].subst(images) == z(n)
        # and the inverse leading coefficient
        assert inv[n - 1].coeff((n,)) == (B2 ** n * qsym(n)).inv()


def test_vee_map_is_homomorphism():
    a = z(1) + z(2) * 3
    b = z(1) * z(1) - z(3)
    assert vee_map(a * b, n_max=4) == vee_map(a, n_max=4) * vee_map(b, n_max=4)
    assert vee_map(ZPoly.one()) == ZPoly.one()


def test_filtration_and_kernel_coincidences():
    assert filtration_equal_upto(8)
    res = theta_kernel_coincidence(8)
    assert all(res.values()), res


def test_partitions():
    assert list(partitions(0)) == [()]
    assert sorted(partitions(4)) == sorted(
        [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])
    assert len(list(partitions(8))) == 22


def test_var_cutoff_reported():
    set_var_cutoff(3)
    try:
        with pytest.raises(ValueError):
            ZPoly.gen(4)
        with pytest.raises(ValueError):
            zdown(5)
        assert zdown(3) == z(3) - z(1) * B2 ** -2
    finally:
        set_var_cutoff(None)


def test_theta():
    assert theta(ZPoly.one() * RatQ.from_int(5) + z(2)) == RatQ.from_int(5)
