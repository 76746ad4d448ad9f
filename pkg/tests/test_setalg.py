import pytest
from hypothesis import given, strategies as st

from cosetkit import Coset, EmptySet, MixedCarriers, Subgroup, UnboundSymbol, enumerate_ball
from cosetkit.covering import CosetList, piece_witness, witness_outside
from cosetkit.oracle import Window, compare_on_window, oracle_member
from cosetkit.setalg import (Atom, Diff, Empty, Full, Intersect, LTranslate, RTranslate, Symbol,
                             Union, affine_hull, close_under_intersection, eval_membership,
                             has_refined_property, is_empty, refine_family, right_translate,
                             sets_equal, simplify, to_omega_normal_form, to_relring_normal_form)

from helpers import A, B, CORPUS, D, D1, L2, L4, T2, Z2, ZZ, at, d, point, z
from strategies import carrier_and_expr, elements

Y1 = Union((at(A), at(B, z(1, 0))))


def agree(expr, nf, radius):
    return all(nf.contains(g) == oracle_member(expr, g) for g in enumerate_ball(nf.carrier, radius))


def test_membership_examples():
    assert eval_membership(Y1, z(7, 0))
    assert not eval_membership(Y1, z(2, 3))
    assert eval_membership(LTranslate(z(0, 1), at(A)), z(5, 1))


def test_unbound_symbol():
    with pytest.raises(UnboundSymbol):
        eval_membership(Union((Symbol("Y"), at(A))), z(3, 3))
    assert eval_membership(Symbol("Y"), z(3, 0), {"Y": at(A)})


def test_relring_normal_form_examples():
    expr = Intersect((Diff(Full(Z2), at(A)), Union((at(A, z(0, 1)), at(B)))))
    terms = to_relring_normal_form(expr)
    # A+(0,1), then B minus A minus the point already covered; checked on a radius 20 window
    triv = Subgroup.trivial(Z2)
    assert terms == [([Coset.make(A, z(0, 1))], []),
                     ([Coset.of(B)], [Coset.of(triv), Coset.make(triv, z(0, 1))])]
    assert to_relring_normal_form(Diff(at(A), at(A))) == []
    C = Coset.make(L2, z(1, 0))
    assert to_relring_normal_form(Atom(C)) == [([C], [])]


def test_relring_terms_are_disjoint_and_sound():
    expr = Intersect((Diff(Full(Z2), at(A)), Union((at(A, z(0, 1)), at(B)))))
    terms = to_relring_normal_form(expr)
    for g in enumerate_ball(Z2, 20):
        hits = [p[0].contains(g) and not any(n.contains(g) for n in negs) for p, negs in terms]
        assert sum(hits) == int(oracle_member(expr, g))


def test_omega_normal_form_examples():
    nf = to_omega_normal_form(Y1)
    shapes = [(p.E0, p.removals) for p in nf.pieces]
    assert (Coset.of(A), ()) in shapes
    assert (Coset.make(B, z(1, 0)), (Coset.make(Subgroup.trivial(Z2), z(1, 0)),)) in shapes
    assert len(shapes) == 2
    assert agree(Y1, nf, 20)

    two = to_omega_normal_form(Union((at(L2), at(L2, z(1, 0)))))
    assert [p.removals for p in two.pieces] == [(), ()]
    assert len(two.pieces) == 2

    nd = to_omega_normal_form(Diff(Full(Z2), at(D)))
    assert [(p.E0, p.removals) for p in nd.pieces] == [(Coset.of(ZZ), (Coset.of(D),))]


def test_refine_family_examples():
    refined, cover = refine_family([ZZ, L2])
    assert refined == [L2]
    assert set(cover[ZZ]) == {Coset.of(L2), Coset.make(L2, z(1, 0))}

    refined, _ = refine_family([A, B])
    assert set(refined) == {A, B}

    refined, cover = refine_family(close_under_intersection([ZZ, A, L2]))
    assert set(refined) == {L2, Subgroup.make(Z2, [(2, 0)])}
    # each input subgroup is the union of its covering cosets on a window
    for H, cosets in cover.items():
        for g in enumerate_ball(Z2, 8):
            assert H.contains(g) == any(c.contains(g) for c in cosets)


def test_emptiness_examples():
    assert is_empty(Intersect((at(A), at(A, z(0, 1)))))
    assert not is_empty(Diff(Full(Z2), Union((at(A), at(B), at(D)))))
    assert is_empty(Diff(Diff(Full(Z2), at(L2)), at(L2, z(1, 0))))


def test_equality_examples():
    assert sets_equal(Union((at(A), at(A, z(0, 1)))), Union((at(A, z(0, 1)), at(A))))
    assert not sets_equal(Diff(Full(Z2), at(B)), Diff(Full(Z2), at(A)))
    assert sets_equal(Union((at(L2), at(L2, z(1, 0)))), Full(Z2))
    with pytest.raises(MixedCarriers):
        sets_equal(at(A), at(T2))


def test_affine_hull_examples():
    pts = Union((point(z(0, 0)), point(z(2, 0)), point(z(0, 2))))
    assert affine_hull(pts) == Coset.of(L4)
    C = Coset.make(L2, z(1, 0))
    assert affine_hull(Atom(C)) == C
    assert affine_hull(Union((at(A), at(A, z(0, 3))))) == Coset.of(Subgroup.make(Z2, [(1, 0), (0, 3)]))
    with pytest.raises(EmptySet):
        affine_hull(Diff(at(A), at(A)))


def test_derived_affine_hull_is_minimal_on_window():
    """No smaller coset through the origin contains both lines."""
    hull = affine_hull(Union((at(A), at(A, z(0, 3)))))
    assert hull.contains(z(5, 0)) and hull.contains(z(-2, 3))
    for k in (1, 2):
        H = Subgroup.make(Z2, [(1, 0), (0, 3 * k + 3)])
        assert not Coset.of(H).contains(z(0, 3))


def test_right_translate_examples():
    assert sets_equal(right_translate(at(A, z(0, 1)), z(2, 3)), at(A, z(2, 4)))
    out = simplify(right_translate(at(T2), d(1, -1)))
    assert out == at(T2, d(1, -1))
    assert simplify(right_translate(point(z(1, 1)), z(2, 0))) == point(z(3, 1))


def test_right_and_left_translates_differ_on_the_dihedral_group():
    R = Subgroup.make(D1, [], (0,))
    right, left = RTranslate(at(R), d(1)), LTranslate(d(1), at(R))
    assert not sets_equal(right, left)
    assert sets_equal(right, Union((point(d(1)), point(d(-1, -1)))))


def test_empty_and_full_nodes():
    assert is_empty(Empty(Z2))
    assert sets_equal(Full(D1), at(Subgroup.full(D1)))


@pytest.mark.parametrize("case", CORPUS, ids=lambda c: c.name)
def test_corpus_normal_forms_agree_with_oracle(case):
    nf = to_omega_normal_form(case.expr)
    assert agree(case.expr, nf, 8)


# ---- properties -------------------------------------------------------


def check_valid_normal_form(nf):
    for p in nf.pieces:
        for r in p.removals:
            assert r.is_subset_of(p.E0)
            assert p.E0.subgroup.index_of(r.subgroup) is None
        assert p.E0.subgroup in nf.family
        assert all(r.subgroup in nf.family for r in p.removals)
    for i, p in enumerate(nf.pieces):
        for q in nf.pieces[i + 1:]:
            assert is_empty(Intersect((p.to_expr(), q.to_expr())))
    assert has_refined_property(list(nf.family))


@given(carrier_and_expr())
def test_normal_form_is_sound(ce):
    c, expr = ce
    nf = to_omega_normal_form(expr)
    terms = to_relring_normal_form(expr)
    for g in enumerate_ball(c, 5):
        want = oracle_member(expr, g)
        assert nf.contains(g) == want
        assert eval_membership(expr, g) == want
        assert any(p[0].contains(g) and not any(n.contains(g) for n in negs) for p, negs in terms) == want


@given(carrier_and_expr())
def test_normal_form_is_valid(ce):
    _, expr = ce
    check_valid_normal_form(to_omega_normal_form(expr))


@given(carrier_and_expr())
def test_pieces_are_nonempty(ce):
    _, expr = ce
    for p in to_omega_normal_form(expr).pieces:
        g = piece_witness(p)
        assert p.contains(g)
        if p.removals:
            amb = p.E0.subgroup
            h = witness_outside(CosetList.of([r.left_translate(p.E0.rep.inverse()) for r in p.removals], amb))
            assert p.contains(p.E0.rep * h)


@given(carrier_and_expr(depth=2, atoms=3), st.data())
def test_sets_equal_is_an_equivalence_and_translation_invariant(ce, data):
    c, expr = ce
    other = simplify(to_omega_normal_form(expr).to_expr())
    assert sets_equal(expr, expr)
    assert sets_equal(expr, other) and sets_equal(other, expr)
    s = data.draw(elements(c, 3))
    assert sets_equal(LTranslate(s, expr), LTranslate(s, other))
    third = Union((other, Diff(expr, expr)))
    assert sets_equal(expr, third)


@given(carrier_and_expr(depth=2), st.data())
def test_right_translate_pointwise(ce, data):
    c, expr = ce
    t = data.draw(elements(c, 3))
    shifted = right_translate(expr, t)
    for g in enumerate_ball(c, 3):
        assert eval_membership(shifted, g) == eval_membership(expr, g * t.inverse())


@given(carrier_and_expr(depth=2, atoms=3))
def test_simplify_preserves_the_set(ce):
    c, expr = ce
    assert compare_on_window(expr, simplify(expr), Window(c, 4)) is None
