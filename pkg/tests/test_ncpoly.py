"""Free algebra layer: symbols, ordering, polynomials, generator maps."""

from __future__ import annotations

import pytest

from qonsager.coeff import MINUS_ONE, ONE, Q, QINV, RatQ, q_pow
from qonsager.ncpoly import (
    W0,
    W1,
    GenMap,
    NcPoly,
    comm,
    compose_maps,
    deglex_key,
    g,
    gt,
    name_of,
    parse_sym,
    qcomm,
    wm,
    word_name,
    wp,
)


def test_symbol_rendering():
    assert name_of(wm(0)) == "Wm0"
    assert name_of(wp(3)) == "Wp3"
    assert name_of(g(2)) == "G2"
    assert name_of(gt(1)) == "Gt1"
    assert name_of(W0) == "W0"
    assert name_of(W1) == "W1"


def test_symbol_parse_round_trip():
    for s in [wm(0), wm(4), wp(1), wp(7), g(1), g(5), gt(2), W0, W1]:
        assert parse_sym(name_of(s)) == s


def test_alphabet_order():
    # G* < Wm* < Wp* < Gt* < W0 < W1, ascending index inside each family
    chain = [g(1), g(2), wm(0), wm(1), wp(1), wp(2), gt(1), gt(2), W0, W1]
    assert chain == sorted(chain)


def test_index_validation():
    with pytest.raises(ValueError):
        g(0)
    with pytest.raises(ValueError):
        gt(0)
    with pytest.raises(ValueError):
        wp(0)
    with pytest.raises(ValueError):
        wm(-1)


def test_deglex():
    a, b = W0, W1
    # length dominates; ties broken lexicographically by the int order
    assert deglex_key((b,)) < deglex_key((a, a))
    assert deglex_key((a, b)) < deglex_key((b, a))
    p = NcPoly.word((a, b)) + NcPoly.word((b, a)) + NcPoly.word((b,))
    assert p.leading_word() == (b, a)


def test_arithmetic_basics():
    x = NcPoly.sym(W0)
    y = NcPoly.sym(W1)
    assert x * y != y * x
    assert (x + y) * (x - y) == x * x - x * y + y * x - y * y
    assert (x - x) == NcPoly.zero()
    assert not (x - x)
    z = x * 0
    assert z == 0 and not z
    assert x * 3 == x + x + x
    assert (x * Q) * QINV == x
    assert -(x - y) == y - x


def test_scalar_embedding():
    one = NcPoly.scalar(ONE)
    x = NcPoly.sym(W0)
    assert one * x == x
    assert x * one == x
    assert NcPoly.scalar(RatQ.from_int(0)) == NcPoly.zero()


def test_commutators():
    x = NcPoly.sym(W0)
    y = NcPoly.sym(W1)
    assert comm(x, y) == x * y - y * x
    assert comm(x, x) == 0
    # [x, y]_q = q xy - q^-1 yx
    assert qcomm(x, y) == x * y * Q - y * x * QINV
    # q-twisted bracket of the two plain generators equals -q times
    # (q^-2 W1 W0 - W0 W1)
    b_delta = NcPoly.word((W1, W0), q_pow(-2)) - NcPoly.word((W0, W1))
    assert qcomm(x, y) == b_delta * (MINUS_ONE * Q)


def test_str_deterministic():
    p = NcPoly.word((W1, W0), q_pow(-2)) - NcPoly.word((W0, W1))
    assert str(p) == "((1)/(q^2))*W1 W0 + (-1)*W0 W1"
    assert word_name(()) == "1"
    assert str(NcPoly.zero()) == "0"


def test_genmap_homomorphism():
    x, y = NcPoly.sym(W0), NcPoly.sym(W1)
    swap = GenMap({W0: y, W1: x}, name="swap")
    p = x * y * x + x * 2
    assert swap(p) == y * x * y + y * 2
    sq = compose_maps(swap, swap)
    assert sq(p) == p


def test_genmap_antihomomorphism():
    x, y = NcPoly.sym(W0), NcPoly.sym(W1)
    rev = GenMap({W0: x, W1: y}, antihom=True, name="rev")
    assert rev(x * y) == y * x
    assert rev(x * y * y + x) == y * y * x + x
    # antihom . antihom = hom
    both = compose_maps(rev, rev)
    assert not both.antihom
    assert both(x * y) == x * y


def test_genmap_missing_symbol():
    x = NcPoly.sym(W0)
    m = GenMap({W0: x}, name="partial")
    with pytest.raises(KeyError):
        m(NcPoly.sym(W1))


def test_genmap_involutions_on_extension_alphabet():
    # symbol-swap maps mirror the two real involutions used downstream
    K = 3
    images_sigma = {}
    images_dag = {}
    for k in range(K + 1):
        images_sigma[wm(k)] = NcPoly.sym(wp(k + 1))
        images_sigma[wp(k + 1)] = NcPoly.sym(wm(k))
        images_sigma[g(k + 1)] = NcPoly.sym(gt(k + 1))
        images_sigma[gt(k + 1)] = NcPoly.sym(g(k + 1))
        images_dag[wm(k)] = NcPoly.sym(wm(k))
        images_dag[wp(k + 1)] = NcPoly.sym(wp(k + 1))
        images_dag[g(k + 1)] = NcPoly.sym(gt(k + 1))
        images_dag[gt(k + 1)] = NcPoly.sym(g(k + 1))
    sigma = GenMap(images_sigma, name="sigma")
    dag = GenMap(images_dag, antihom=True, name="dagger")
    tau = compose_maps(sigma, dag, name="tau")
    assert tau.antihom

    p = (NcPoly.sym(wm(0)) * NcPoly.sym(g(2)) * NcPoly.sym(wp(1))
         + NcPoly.sym(gt(3)) * Q)
    for m in (sigma, dag, tau):
        assert compose_maps(m, m)(p) == p
    assert compose_maps(sigma, dag)(p) == compose_maps(dag, sigma)(p)
