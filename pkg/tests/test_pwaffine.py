import random

import pytest
from hypothesis import given, strategies as st

from cosetkit import Coset, GroupCarrier, NotAGraph, Subgroup, enumerate_ball
from cosetkit.generators import random_pw_map
from cosetkit.pwaffine import (UNDEFINED, AffinePiece, PiecewiseAffineMap, Product,
                               affine_from_graph_coset, affine_from_matrix, eval_pw_affine,
                               graph_condition, graph_of, product_carrier, pw_affine_from_graph)
from cosetkit.setalg import Atom, OmegaPiece, Union, is_empty, sets_equal, to_omega_normal_form

from helpers import A, D1, L2, Z1, Z2, Z3, ZZ, z

P21 = Product(Z2, Z1)


def x2y_minus_1():
    dom = Coset.make(L2, z(1, 0))
    f = affine_from_matrix(dom, z(1, 0), Z1.element((0,)), [(2,), (2,)], Z1)
    return PiecewiseAffineMap(((OmegaPiece(dom), f),), Z2, Z1)


def agree(m1, m2, radius):
    return all(eval_pw_affine(m1, h) == eval_pw_affine(m2, h) for h in enumerate_ball(m1.source, radius))


def test_evaluation_examples():
    m = x2y_minus_1()
    assert eval_pw_affine(m, z(3, 2)) == Z1.element((6,))
    assert eval_pw_affine(m, z(2, 0)) is UNDEFINED
    for h in enumerate_ball(Z2, 6):
        want = h.translation[0] + 2 * h.translation[1] - 1 if h.translation[0] % 2 else None
        got = eval_pw_affine(m, h)
        assert (got.translation[0] if got else None) == want


def test_two_piece_map_uses_the_right_rule():
    left = Coset.of(Subgroup.make(Z2, [(1, 0), (0, 2)]))
    right = Coset.make(left.subgroup, z(0, 1))
    f = affine_from_matrix(left, z(0, 0), Z1.element((0,)), [(1,), (0,)], Z1)
    g = affine_from_matrix(right, z(0, 1), Z1.element((100,)), [(0,), (1,)], Z1)
    m = PiecewiseAffineMap(((OmegaPiece(left), f), (OmegaPiece(right), g)), Z2, Z1)
    assert eval_pw_affine(m, z(5, 2)) == Z1.element((5,))
    assert eval_pw_affine(m, z(5, 3)) == Z1.element((101,))


def test_overlapping_pieces_are_rejected():
    f = affine_from_matrix(Coset.of(ZZ), z(0, 0), Z1.element((0,)), [(1,), (0,)], Z1)
    with pytest.raises(ValueError):
        PiecewiseAffineMap(((OmegaPiece(Coset.of(ZZ)), f), (OmegaPiece(Coset.of(A)), f)), Z2, Z1)


def test_graph_examples():
    g = graph_of(x2y_minus_1())
    want = Coset.make(Subgroup.make(Z3, [(2, 0, 2), (0, 1, 2)]), Z3.element((1, 0, 0)))
    assert g == Atom(want)

    ident = affine_from_matrix(Coset.of(A), z(0, 0), Z1.element((0,)), [(1,)], Z1)
    gi = graph_of(PiecewiseAffineMap(((OmegaPiece(Coset.of(A)), ident),), Z2, Z1))
    assert gi == Atom(Coset.of(Subgroup.make(Z3, [(1, 0, 1)])))

    C = Coset.make(L2, z(1, 0))
    const = affine_from_matrix(C, z(1, 0), Z1.element((7,)), [(0,), (0,)], Z1)
    gc = graph_of(PiecewiseAffineMap(((OmegaPiece(C), const),), Z2, Z1))
    assert gc == Atom(Coset.make(Subgroup.make(Z3, [(2, 0, 0), (0, 1, 0)]), Z3.element((1, 0, 7))))


def test_graph_coset_round_trip():
    m = x2y_minus_1()
    F = graph_of(m).coset
    f = affine_from_graph_coset(F, Z2, Z1)
    back = PiecewiseAffineMap(((OmegaPiece(f.domain), f),), Z2, Z1)
    assert agree(m, back, 15)


def test_vertical_directions_are_not_graphs():
    F = Coset.of(Subgroup.make(Z3, [(0, 0, 1)]))
    with pytest.raises(NotAGraph):
        affine_from_graph_coset(F, Z2, Z1)


def test_point_coset():
    F = Coset.make(Subgroup.trivial(Z3), Z3.element((1, 2, 5)))
    f = affine_from_graph_coset(F, Z2, Z1)
    m = PiecewiseAffineMap(((OmegaPiece(f.domain), f),), Z2, Z1)
    assert eval_pw_affine(m, z(1, 2)) == Z1.element((5,))
    assert [h for h in enumerate_ball(Z2, 4) if eval_pw_affine(m, h) is not None] == [z(1, 2)]


def test_graph_recovery_examples():
    K = Subgroup.make(Z3, [(1, 0, 1), (0, 2, 0)])
    two = Union((Atom(Coset.of(K)), Atom(Coset.make(K, Z3.element((0, 1, 4))))))
    m = pw_affine_from_graph(two, Z2, Z1)
    assert len(m.pieces) == 2

    sub = Coset.of(Subgroup.make(Z3, [(1, 0, 1)]))
    holed = Atom(Coset.of(K)) - Atom(sub)
    m = pw_affine_from_graph(holed, Z2, Z1)
    assert len(m.pieces) == 1 and len(m.pieces[0][0].removals) == 1
    assert eval_pw_affine(m, z(3, 0)) is None and eval_pw_affine(m, z(3, 2)) == Z1.element((3,))

    ident = Atom(Coset.of(Subgroup.make(GroupCarrier.ZN(4), [(1, 0, 1, 0), (0, 1, 0, 1)])))
    m = pw_affine_from_graph(ident, Z2, Z2)
    assert len(m.pieces) == 1
    assert all(eval_pw_affine(m, h) == h for h in enumerate_ball(Z2, 5))


def test_non_graph_union_is_rejected():
    lines = Union((Atom(Coset.of(Subgroup.make(Z3, [(1, 0, 0)]))),
                   Atom(Coset.of(Subgroup.make(Z3, [(1, 0, 1)])))))
    with pytest.raises(NotAGraph):
        pw_affine_from_graph(lines, Z2, Z1)


def test_certified_recovery():
    m = pw_affine_from_graph(graph_of(x2y_minus_1()), Z2, Z1, certify=True)
    assert agree(m, x2y_minus_1(), 10)


def test_integer_line_into_the_dihedral_group():
    """k -> (1;-)^k alternates between the identity and a reflection."""
    rho = D1.element((1,), -1)
    f = AffinePiece(Coset.of(Subgroup.full(Z1)), Z1.identity, D1.identity, (rho,))
    m = PiecewiseAffineMap(((OmegaPiece(f.domain), f),), Z1, D1)
    assert eval_pw_affine(m, Z1.element((3,))) == rho
    assert eval_pw_affine(m, Z1.element((4,))) == D1.identity
    back = pw_affine_from_graph(graph_of(m), Z1, D1)
    assert agree(m, back, 15)


def test_product_carriers():
    assert product_carrier(Z2, Z1) == Z3
    assert product_carrier(Z1, D1) == GroupCarrier(2, (False, True))
    assert product_carrier(D1, Z2) == GroupCarrier(3, (True, False, False))
    with pytest.raises(ValueError):
        Product(D1, D1)
    P = Product(Z1, D1)
    x = P.pair(Z1.element((2,)), D1.element((5,), -1))
    assert P.split(x) == (Z1.element((2,)), D1.element((5,), -1))


def test_graph_expressions_support_the_set_algebra():
    g = graph_of(x2y_minus_1())
    nf = to_omega_normal_form(g)
    assert sets_equal(nf.to_expr(), g)
    assert not is_empty(g)


# ---- properties -------------------------------------------------------

COMBOS = [(Z2, Z1), (Z1, Z2), (Z2, Z2), (Z1, D1), (Z2, D1), (D1, Z1)]


@given(st.integers(0, 2**32 - 1), st.sampled_from(COMBOS))
def test_graph_round_trip(seed, combo):
    s, t = combo
    m = random_pw_map(random.Random(seed), s, t)
    back = pw_affine_from_graph(graph_of(m), s, t)
    assert agree(m, back, 8)


@given(st.integers(0, 2**32 - 1), st.sampled_from(COMBOS))
def test_pieces_are_affine(seed, combo):
    s, t = combo
    rng = random.Random(seed)
    m = random_pw_map(rng, s, t)
    for _, f in m.pieces:
        pts = [h for h in enumerate_ball(s, 6) if f.domain.contains(h)]
        for _ in range(30):
            r, q, u = (rng.choice(pts) for _ in range(3))
            assert f(r * q.inverse() * u) == f(r) * f(q).inverse() * f(u)


@given(st.integers(0, 2**32 - 1))
def test_graph_condition_matches_injective_projection(seed):
    rng = random.Random(seed)
    rows = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(rng.randint(1, 2))]
    Lam = Subgroup.make(Z3, rows)
    P = Product(Z2, Z1)
    seen = {}
    injective = True
    for g in enumerate_ball(Z3, 8):
        if Lam.contains(g):
            h, _ = P.split(g)
            if h in seen and seen[h] != g:
                injective = False
            seen[h] = g
    assert graph_condition(Lam, P) == injective
