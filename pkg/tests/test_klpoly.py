import itertools

import pytest

from affcat import rootsys
from affcat.affweyl import WeylGroup
from affcat.klpoly import (
    ONE,
    ZERO,
    IntPoly,
    KLSession,
    SessionConfig,
    kl_polynomial,
    kl_polynomial_oracle,
    mu_coefficient,
)


def test_intpoly():
    p = IntPoly([1, 2, 0, 0])
    assert p == IntPoly([1, 2]) and p.degree == 1
    assert p + IntPoly([0, -2]) == ONE
    assert p.shift(2) == IntPoly([0, 0, 1, 2])
    assert p(1) == 3 and p(2) == 5
    assert ZERO.shift(3) == ZERO and ZERO.degree == -1


def test_frozen_values():
    A3 = WeylGroup.finite(rootsys.build("A", 3))
    s = KLSession(A3)
    assert kl_polynomial(s, A3.identity, A3.element([2, 1, 3, 2])) == IntPoly([1, 1])
    assert kl_polynomial(s, A3.element([2]), A3.element([2, 1, 3, 2])) == IntPoly([1, 1])
    assert kl_polynomial(s, A3.element([1]), A3.element([2, 1, 3, 2])) == ONE
    aff = WeylGroup.affine(rootsys.build("A", 2), 3)
    s = KLSession(aff)
    assert kl_polynomial(s, aff.identity, aff.element([0, 1, 2, 0])) == IntPoly([1, 1])
    assert kl_polynomial(s, aff.element([1]), aff.identity) == ZERO


@pytest.mark.parametrize("series,rank", [("A", 2), ("B", 2), ("G", 2)])
def test_dihedral_all_one(series, rank):
    G = WeylGroup.finite(rootsys.build(series, rank))
    s = KLSession(G)
    elems = G.elements(12)
    for x, w in itertools.product(elems, repeat=2):
        assert kl_polynomial(s, x, w) == (ONE if s.bruhat_leq(x, w) else ZERO)


@pytest.mark.parametrize("group,max_len", [
    (WeylGroup.finite(rootsys.build("A", 3)), 6),
    (WeylGroup.finite(rootsys.build("B", 3)), 5),
    (WeylGroup.affine(rootsys.build("B", 2), 3), 5),
])
def test_properties_and_oracle(group, max_len):
    s = KLSession(group)
    elems = group.elements(max_len)
    for x, w in itertools.product(elems, repeat=2):
        p = kl_polynomial(s, x, w)
        if x.length > w.length:
            continue
        assert p == kl_polynomial_oracle(x, w)
        if not s.bruhat_leq(x, w):
            assert p == ZERO
            continue
        assert p.coeff(0) == 1
        assert x == w or 2 * p.degree <= w.length - x.length - 1
        assert all(c >= 0 for c in p)
        # inversion symmetry
        assert kl_polynomial(s, group.inverse(x), group.inverse(w)) == p


def test_mu_coefficient():
    A3 = WeylGroup.finite(rootsys.build("A", 3))
    s = KLSession(A3)
    w = A3.element([2, 1, 3, 2])
    assert mu_coefficient(s, A3.identity, w) == 0  # length gap 4 is even
    assert mu_coefficient(s, A3.element([1, 2, 3]), w) == 0  # not below
    assert mu_coefficient(s, A3.element([2, 1, 2]), w) == 1
    assert mu_coefficient(s, A3.element([1, 3, 2]), w) == 1
    assert mu_coefficient(s, A3.element([2]), w) == 1  # coefficient of q in 1 + q


def test_small_memo_still_correct():
    aff = WeylGroup.affine(rootsys.build("A", 2), 3)
    tiny = KLSession(aff, SessionConfig(max_poly_entries=10, max_bruhat_entries=20))
    big = KLSession(aff)
    elems = aff.elements(4)
    for x, w in itertools.product(elems, repeat=2):
        assert tiny.poly(x, w) == big.poly(x, w)
    assert len(tiny._poly) <= 10
