import pytest
from hypothesis import given

from cosetkit import MixedCarriers
from cosetkit.oracle import Window, compare_on_window, oracle_member, window_set
from cosetkit.setalg import Diff, Symbol, carrier_of, simplify, to_omega_normal_form

from helpers import A, CORPUS, D1, EQUALITIES, INEQUALITIES, Z2, at, d, point, z
from strategies import carrier_and_expr


def test_compare_examples():
    w = Window(Z2, 5)
    assert compare_on_window(at(A), at(A), w) is None
    assert compare_on_window(at(A), Diff(at(A), point(z(0, 0))), w) == z(0, 0)


def test_all_points_listing():
    w = Window(Z2, 2)
    bad = compare_on_window(at(A), Diff(at(A), point(z(1, 0))), w, all_points=True)
    assert bad == [z(1, 0)]
    assert compare_on_window(at(A), at(A), w, all_points=True) == []


def test_window_is_the_ball():
    assert Window(D1, 1).points() == [d(0), d(0, -1), d(-1), d(-1, -1), d(1), d(1, -1)]
    assert window_set(at(A), Window(Z2, 1)) == [z(0, 0), z(-1, 0), z(1, 0)]
    with pytest.raises(ValueError):
        Window(Z2, -1)


def test_mixed_carriers():
    with pytest.raises(MixedCarriers):
        compare_on_window(at(A), at(A), Window(D1, 2))


def test_bindings():
    assert oracle_member(Symbol("Y"), z(4, 0), {"Y": at(A)})


def test_stored_pairs_at_small_radius():
    for _, a, b in EQUALITIES:
        assert compare_on_window(a, b, Window(carrier_of(a), 10)) is None
    for name, a, b in INEQUALITIES:
        if name != "far_point":
            assert compare_on_window(a, b, Window(carrier_of(a), 10)) is not None


@given(carrier_and_expr(depth=4, atoms=5))
def test_random_expression_matches_its_normal_form(ce):
    c, expr = ce
    nf = simplify(to_omega_normal_form(expr).to_expr())
    assert compare_on_window(expr, nf, Window(c, 6)) is None


def test_corpus_matches_normal_forms():
    for case in CORPUS:
        c = carrier_of(case.expr)
        assert compare_on_window(case.expr, to_omega_normal_form(case.expr).to_expr(), Window(c, 10)) is None
