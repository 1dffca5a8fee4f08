import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affcat import affweyl, kgroup, rootsys
from affcat.affweyl import CoxeterSession, WeylGroup, affine_weight, make_level
from affcat.kgroup import Block, GroupAlgebraElement, TiltingTable

A1, A2 = rootsys.build("A", 1), rootsys.build("A", 2)
POS = make_level(A1, "1/2")  # p = 5
NEG = make_level(A1, "-7/2")  # p = -3
G_POS = WeylGroup.for_level(POS)
G_NEG = WeylGroup.for_level(NEG)


def block(level, lam):
    return Block(level, affine_weight(level, lam))


def e(G):
    return GroupAlgebraElement.basis(G, G.identity)


# --- group algebra ----------------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_group_algebra_axioms(seed):
    rng = random.Random(seed)
    G = WeylGroup.affine(A2, 3)
    a, b, c = (kgroup.random_element(G, 3, rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert e(G) * a == a == a * e(G)
    assert (a - a) == GroupAlgebraElement(G)
    assert GroupAlgebraElement.from_json(G, json.loads(json.dumps(a.to_json()))) == a


def test_left_translate_and_truncate():
    G = G_POS
    s0, s1 = G.gen(0), G.gen(1)
    v = GroupAlgebraElement(G, {s1: 2, G.mul(s0, s1): -1})
    assert v.left_translate(s0).support == {G.mul(s0, s1): 2, s1: -1}
    assert v.truncate(1).support == {s1: 2}
    assert v.mass() == 1 and v.max_length() == 2


# --- blocks, translation, tensoring -----------------------------------------------


def test_block_requires_regular_anchor():
    with pytest.raises(ValueError):
        block(POS, [4])  # on a wall
    with pytest.raises(ValueError):
        block(POS, [7])  # regular but outside the alcove
    with pytest.raises(ValueError):
        block(make_level(A1, "generic"), [0])


def test_block_labels():
    b = block(POS, [1])
    for u in G_POS.elements(5):
        assert b.label_of(b.weight_of(u)) == u
    assert b.label_of([-1]) is None  # singular
    assert b.label_of([2]) is None  # other block


def test_translate_round_trip_and_incompatible_levels():
    rng = random.Random(1)
    src, dst = block(POS, [0]), block(POS, [3])
    for _ in range(20):
        v = kgroup.random_element(G_POS, 6, rng)
        assert kgroup.translate(dst, src, kgroup.translate(src, dst, v)) == v
    with pytest.raises(ValueError):
        kgroup.translate(src, block(make_level(A1, "3/2"), [0]), e(G_POS))


def test_tensor_action_frozen():
    b0, b3 = block(POS, [0]), block(POS, [3])
    r = kgroup.tensor_action_detail(b3, b0, [3], e(G_POS))
    assert r.image == e(G_POS) and (r.dropped, r.projected_out) == (1, 2)
    r = kgroup.tensor_action_detail(b0, b0, [2], e(G_POS))
    assert r.image.to_json() == {"e": 1, "s1": 1} and (r.dropped, r.projected_out) == (0, 1)
    assert kgroup.tensor_action(b3, b3, [1], e(G_POS)) == GroupAlgebraElement(G_POS)


def test_translation_is_tensoring_with_extremal_module():
    # between alcove anchors a, b the functor p_b(V_dom(b-a) x ?) relabels the basis
    anchors = affweyl.alcove_weights(POS)
    for a in anchors:
        for b in anchors:
            src, dst = Block(POS, a), Block(POS, b)
            mu = rootsys.dominant_representative(A1, rootsys.sub(b.weight, a.weight))[0]
            for u in G_POS.elements(5):
                x = GroupAlgebraElement.basis(G_POS, u)
                assert kgroup.tensor_action(src, dst, mu, x) == kgroup.translate(src, dst, x)


def test_mass_accounting():
    rng = random.Random(2)
    src, dst = block(POS, [1]), block(POS, [2])
    for _ in range(20):
        v = GroupAlgebraElement(G_POS, {u: abs(c) for u, c in kgroup.random_element(G_POS, 4, rng)})
        mu = [rng.randint(0, 4)]
        r = kgroup.tensor_action_detail(src, dst, mu, v)
        total = sum(kgroup.tensor_weights(src, mu, v).values())
        assert r.image.mass() + r.dropped + r.projected_out == total == v.mass() * (mu[0] + 1)


def test_linearity_small():
    b = block(NEG, [-2])
    rng = random.Random(3)
    for _ in range(10):
        v = kgroup.random_element(G_NEG, 3, rng)
        image = kgroup.tensor_action(b, b, [2], v)
        for w in G_NEG.elements(2):
            assert kgroup.tensor_action(b, b, [2], v.left_translate(w)) == image.left_translate(w)


# --- tilting tables -------------------------------------------------------------------


def test_extremal_mu_frozen():
    lam = affweyl.default_anchor(NEG)
    assert lam.weight == (-2,)
    got = {affweyl.format_word(w.word): kgroup.extremal_mu(w, lam, lam) for w in G_NEG.elements(2)}
    assert got == {"e": (0,), "s0": (4,), "s1": (2,), "s0 s1": (6,), "s1 s0": (6,)}
    with pytest.raises(ValueError):
        kgroup.extremal_mu(G_NEG.identity, affine_weight(NEG, [-1]), lam)


def test_table_json_round_trip(tmp_path):
    t = kgroup.random_unitriangular_table(G_NEG, 4, random.Random(5))
    path = tmp_path / "table.json"
    path.write_text(json.dumps(t.to_json()))
    back = TiltingTable.load(G_NEG, str(path))
    assert back.rows == t.rows and back.provenance == "external"
    with pytest.raises(ValueError):
        TiltingTable(G_NEG, {}, "guessed")


def test_table_violations():
    session = CoxeterSession(G_NEG)
    t = kgroup.random_unitriangular_table(G_NEG, 4, random.Random(6), session=session)
    assert t.violations(session, 4) == []
    bad = kgroup.corrupt_table(t, random.Random(0))
    assert bad.violations(session, 4)
    assert kgroup.generic_identity_table(G_NEG, 3).violations(session, 4)  # rows missing


def test_experimental_table_is_unitriangular():
    from affcat.klpoly import KLSession
    s = KLSession(G_NEG)
    t = kgroup.experimental_table(s, 4)
    assert t.provenance == "experimental"
    assert t.violations(s, 4) == []
    assert all(set(row.values()) == {1} for row in t.rows.values())  # affine A1: all P = 1


def test_decomposition_tie_break_independence():
    lam = affweyl.default_anchor(NEG)
    session = CoxeterSession(G_NEG)
    t = kgroup.random_unitriangular_table(G_NEG, 8, random.Random(7), session=session)
    keys = [None, lambda u: tuple(-i for i in u.word), lambda u: (u.word[-1:], u.word)]
    for mu in ([2], [4], [6]):
        results = [kgroup.decompose_tilting_functor(mu, lam, lam, t, 8, key=k) for k in keys]
        assert results[0] == results[1] == results[2]
        # reassembling the q's gives back the flag of the tensor product
        total = GroupAlgebraElement(G_NEG)
        for v, c in results[0].items():
            total = total + t.q(v).scale(c)
        b = Block(NEG, lam)
        assert total == kgroup.tensor_action(b, b, mu, e(G_NEG))


def test_decomposition_rejects_bad_input():
    lam = affweyl.default_anchor(NEG)
    t = kgroup.generic_identity_table(G_NEG, 2)
    with pytest.raises(ValueError):
        kgroup.decompose_tilting_functor([-1], lam, lam, t, 2)
    with pytest.raises(ValueError):
        kgroup.decompose_tilting_functor([8], lam, lam, t, 2)  # image leaves the table


def test_group_algebra_check_report():
    lam = affweyl.default_anchor(NEG)
    rep = kgroup.group_algebra_check(lam, kgroup.generic_identity_table(G_NEG, 3), 3, mus=[(1,), (2,)])
    assert rep["passed"] and rep["identity_map"]
    with pytest.raises(ValueError):
        kgroup.group_algebra_check(affine_weight(POS, [0]), kgroup.generic_identity_table(G_POS, 2), 2)
