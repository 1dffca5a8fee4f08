import itertools
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affcat import affweyl, rootsys
from affcat.affweyl import (
    ANTIDOMINANT_REGULAR,
    DOMINANT_REGULAR,
    EXTERIOR,
    ON_WALL,
    REGULAR_GENERIC,
    CoxeterSession,
    GenericLevelError,
    WeylGroup,
    affine_weight,
    make_level,
)

A1 = rootsys.build("A", 1)
A2 = rootsys.build("A", 2)
B2 = rootsys.build("B", 2)


def affine(rs, p=None):
    return WeylGroup.affine(rs, p or rs.dual_coxeter)


# --- levels -------------------------------------------------------------------


def test_level_parsing():
    lv = make_level(A1, "1/2")
    assert (lv.p, lv.q, lv.positive) == (5, 2, True)
    lv = make_level(A1, "-7/2")
    assert (lv.p, lv.q, lv.negative) == (-3, 2, True)
    assert make_level(A2, "-4").p == -1
    assert make_level(A1, "generic").generic
    for bad in (0.5, "0.5", "1e2"):
        with pytest.raises(ValueError):
            make_level(A1, bad)


def test_critical_level_rejected():
    with pytest.raises(ValueError):
        make_level(A1, -2)


def test_small_positive_level_warns():
    with pytest.warns(UserWarning):
        make_level(A2, "-5/2")  # k + h = 1/2: only the zero weight is integrable


# --- group structure --------------------------------------------------------------


def _bott_series(exponents, n):
    """Coefficients of prod_i (1 + q + ... + q^m_i) / (1 - q^m_i) up to q^n."""
    series = [1] + [0] * n
    for m in exponents:
        num = [1 if i <= m else 0 for i in range(n + 1)]
        series = [sum(series[j] * num[i - j] for j in range(i + 1)) for i in range(n + 1)]
        for i in range(m, n + 1):  # divide by 1 - q^m
            series[i] += series[i - m]
    return series


@pytest.mark.parametrize("rs,exponents,max_len", [
    (A1, (1,), 8), (A2, (1, 2), 6), (B2, (1, 3), 6), (rootsys.build("G", 2), (1, 5), 6),
])
def test_layer_sizes_match_bott(rs, exponents, max_len):
    G = affine(rs)
    assert [len(layer) for layer in G.layers(max_len)] == _bott_series(exponents, max_len)


def test_bott_series_frozen():
    assert _bott_series((1, 2), 4) == [1, 3, 6, 9, 12]


@pytest.mark.parametrize("rs,max_len", [(A1, 6), (A2, 4), (B2, 4)])
def test_length_three_ways(rs, max_len):
    G = affine(rs)
    for n, layer in enumerate(G.layers(max_len)):
        for w in layer:
            assert w.length == n
            assert len(w.word) == n
            assert affweyl.separating_hyperplanes(G, w) == n


@pytest.mark.parametrize("rs,max_len", [(A1, 5), (A2, 4)])
def test_canonical_word_is_lex_least(rs, max_len):
    G = affine(rs)
    best = {}
    for n in range(max_len + 1):
        for word in itertools.product(G.generators, repeat=n):
            w = G.element(word)
            if w.length == n and (w not in best or word < best[w]):
                best[w] = word
    for w, word in best.items():
        assert w.word == word


def test_relations():
    G = affine(A2)
    for s in G.generators:
        assert G.mul(G.gen(s), G.gen(s)) == G.identity
    s0, s1 = G.gen(0), G.gen(1)
    braid = G.mul(G.mul(s0, s1), s0)
    assert braid == G.mul(G.mul(s1, s0), s1)
    assert G.element(affweyl.parse_word("e")) == G.identity
    assert affweyl.parse_word("s1s0") == affweyl.parse_word("s1 s0") == (1, 0)
    assert affweyl.format_word(G.element([1, 0]).word) == "s1 s0"
    with pytest.raises(ValueError):
        affweyl.parse_word("s1 t0")


@pytest.mark.parametrize("rs,max_len", [(A1, 6), (A2, 4)])
def test_bruhat_against_subword(rs, max_len):
    G = affine(rs)
    session = CoxeterSession(G)
    elems = G.elements(max_len)
    for x, w in itertools.product(elems, repeat=2):
        assert session.bruhat_leq(x, w) == affweyl.bruhat_leq_subword(x, w)


def test_lower_interval_sizes():
    G = affine(A1)
    session = CoxeterSession(G)
    for w in G.elements(6):
        # infinite dihedral: two elements of each smaller length, plus e
        assert len(session.lower_interval(w)) == 2 * w.length if w.length else 1


# --- action and alcoves -----------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from([0, 1, 2]), max_size=6), st.lists(st.sampled_from([0, 1, 2]), max_size=6),
       st.tuples(st.integers(-6, 6), st.integers(-6, 6)))
def test_affine_dot_action_axiom(u, v, lam):
    G = affine(A2, 4)
    a, b = G.element(u), G.element(v)
    assert G.dot(G.mul(a, b), lam) == G.dot(a, G.dot(b, lam))


@pytest.mark.parametrize("rs,k", [(A1, "1/2"), (A1, "-7/2"), (A2, "1"), (A2, "-5")])
def test_orbit_walk_round_trip(rs, k):
    level = make_level(rs, k)
    G = WeylGroup.for_level(level)
    for lam in affweyl.alcove_weights(level):
        for w in G.elements(4):
            mu = affweyl.dot_act_affine(w, lam)
            rep, u = affweyl.orbit_walk(mu)
            assert rep == lam and u == w


def test_classify_examples():
    lv = make_level(A1, "1/2")  # p = 5
    kinds = {m: affweyl.classify(affine_weight(lv, [m])) for m in range(-2, 6)}
    assert kinds == {-2: EXTERIOR, -1: ON_WALL, 0: DOMINANT_REGULAR, 1: DOMINANT_REGULAR,
                     2: DOMINANT_REGULAR, 3: DOMINANT_REGULAR, 4: ON_WALL, 5: EXTERIOR}
    neg = make_level(A1, "-7/2")  # p = -3
    assert affweyl.classify(affine_weight(neg, [-2])) == ANTIDOMINANT_REGULAR
    assert affweyl.classify(affine_weight(neg, [-1])) == ON_WALL
    assert affweyl.classify(affine_weight(make_level(A1, "generic"), [3])) == REGULAR_GENERIC
    with pytest.raises(GenericLevelError):
        affweyl.classify(affine_weight(make_level(A1, "generic"), ["1/2"]))


@pytest.mark.parametrize("k", ["1", "-5"])
def test_classify_constant_on_alcove_interiors(k):
    # rational points strictly inside the fundamental alcove and its images
    level = make_level(A2, k)
    G = WeylGroup.for_level(level)
    p = level.p
    sign = 1 if p > 0 else -1
    pts = [(Q(a, 7) * sign * abs(p), Q(b, 7) * sign * abs(p)) for a in range(1, 7) for b in range(1, 7) if a + b < 7]
    base = affweyl.DOMINANT_REGULAR if p > 0 else affweyl.ANTIDOMINANT_REGULAR
    for x in pts:
        lam = affine_weight(level, rootsys.sub(x, A2.rho))
        assert affweyl.classify(lam) == base
        for w in G.elements(2):
            if w.length:
                img = affine_weight(level, G.dot(w, lam.weight))
                assert affweyl.classify(img) == EXTERIOR


def test_default_anchor_rational_fallback():
    lam = affweyl.default_anchor(make_level(A2, "-4"))
    assert lam.weight == (Q(-4, 3), Q(-4, 3))
    assert affweyl.classify(lam) == ANTIDOMINANT_REGULAR


@pytest.mark.parametrize("rs,k", [(A1, "1/2"), (A1, "-7/2"), (A2, "1"), (A2, "-4")])
def test_norm_identity_with_grade(rs, k):
    # the affine form is invariant: |w.lam + rho|^2 + 2 (k + h) grade = |lam + rho|^2
    level = make_level(rs, k)
    lam = affweyl.default_anchor(level)
    G = WeylGroup.for_level(level)
    x = rootsys.add(lam.weight, rs.rho)
    for w in G.elements(4):
        y = rootsys.add(G.dot(w, lam.weight), rs.rho)
        shift = affweyl.affine_grade_shift(w, lam)
        assert rs.norm2(y) + 2 * level.shifted * shift == rs.norm2(x)


def test_k_order_matches_bruhat_on_labels():
    level = make_level(A1, "-7/2")
    lam = affweyl.default_anchor(level)
    G = WeylGroup.for_level(level)
    session = CoxeterSession(G)
    elems = G.elements(4)
    for u, w in itertools.product(elems, repeat=2):
        a, b = affweyl.dot_act_affine(u, lam), affweyl.dot_act_affine(w, lam)
        assert affweyl.k_order_leq(a, b, session) == session.bruhat_leq(u, w)


def test_lemma_checks_at_small_scale():
    lv = make_level(A1, "3")  # p = 5
    alcove = affweyl.alcove_weights(lv)
    assert [a.weight for a in alcove] == [(0,), (1,), (2,), (3,)]
    for lam, mu in itertools.product(alcove, repeat=2):
        assert affweyl.verify_weight_geometry(lam, mu, 4) == []
    lam = affweyl.default_anchor(make_level(B2, "-7/2"))
    assert affweyl.verify_length_monotonicity(lam, 3) == []
