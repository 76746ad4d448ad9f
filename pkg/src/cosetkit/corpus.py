"""Named carriers, subgroups and the regression corpus used by tests and scripts."""
from __future__ import annotations

from dataclasses import dataclass

from .group import Coset, GroupCarrier, Subgroup
from .setalg import Atom, Diff, Full, Intersect, LTranslate, RTranslate, SetExpr, Union

Z1 = GroupCarrier.ZN(1)
Z2 = GroupCarrier.ZN(2)
Z3 = GroupCarrier.ZN(3)
D1 = GroupCarrier.ZN_SEMIDIRECT_C2(1)
D2 = GroupCarrier.ZN_SEMIDIRECT_C2(2)


def z(*v):
    return Z2.element(v)


def d(v, sign=1):
    return D1.element((v,), sign)


def dd(x, y, sign=1):
    return D2.element((x, y), sign)


A = Subgroup.make(Z2, [(1, 0)])
B = Subgroup.make(Z2, [(0, 1)])
D = Subgroup.make(Z2, [(1, 1)])
L2 = Subgroup.make(Z2, [(2, 0), (0, 1)])
L4 = Subgroup.make(Z2, [(2, 0), (0, 2)])
ZZ = Subgroup.full(Z2)
TRIV = Subgroup.trivial(Z2)

T2 = Subgroup.make(D1, [(2,)])              # translations by 2Z
R0 = Subgroup.make(D1, [], (0,))            # {e, (0;-)}
DINF = Subgroup.full(D1)
P2 = Subgroup.make(D2, [(1, 0)], (0, 0))    # the x-axis with the reflection through 0
Q2 = Subgroup.make(D2, [(0, 1)])


def at(H, rep=None) -> Atom:
    return Atom(Coset.make(H, rep if rep is not None else H.carrier.identity))


def point(g) -> Atom:
    return Atom(Coset.make(Subgroup.trivial(g.carrier), g))


@dataclass(frozen=True)
class Case:
    name: str
    expr: SetExpr


CORPUS = [
    Case("axis_plus_shifted_axis", Union((at(A), at(B, z(1, 0))))),
    Case("plane_minus_diagonal", Diff(Full(Z2), at(D))),
    Case("translated_coset", at(L2, z(1, 0))),
    Case("shifted_axis", at(A, z(1, 1))),
    Case("plane_minus_three_lines", Diff(Full(Z2), Union((at(A), at(B), at(D))))),
    Case("mixed_terms", Intersect((Diff(Full(Z2), at(A)), Union((at(A, z(0, 1)), at(B)))))),
    Case("two_cosets_fill_plane", Union((at(L2), at(L2, z(1, 0))))),
    Case("checkerboard", Union((at(L4), at(L4, z(1, 1))))),
    Case("coset_minus_point", Diff(at(L2, z(1, 0)), point(z(1, 0)))),
    Case("punctured_lines", Union((Diff(at(A), point(z(0, 0))), Diff(at(D, z(0, 2)), point(z(3, 5)))))),
    Case("space_plane_and_line", Union((Atom(Coset.of(Subgroup.make(Z3, [(1, 0, 0), (0, 1, 0)]))),
                                        Atom(Coset.make(Subgroup.make(Z3, [(0, 0, 1)]), Z3.element((1, 1, 0))))))),
    Case("dinf_reflection_coset", RTranslate(at(T2), d(1, -1))),
    Case("dinf_minus_identity", Diff(Full(D1), point(d(0)))),
    Case("dinf_reflections_and_coset", Union((at(R0), at(T2, d(1))))),
    Case("dinf_right_translate", RTranslate(at(R0), d(1))),
    Case("dinf2_axis_with_reflection", Union((at(P2), at(Q2, dd(1, 0))))),
    Case("dinf2_minus_axis", Diff(Full(D2), at(P2, dd(0, 1, -1)))),
    Case("left_translate_of_union", LTranslate(z(2, -1), Union((at(A), at(B))))),
]

# pairs the decision procedure must call different, with a stored reason
INEQUALITIES = [
    ("complements_of_axes", Diff(Full(Z2), at(B)), Diff(Full(Z2), at(A))),
    ("union_vs_axis", CORPUS[0].expr, at(A)),
    ("left_vs_right_translate", RTranslate(at(R0), d(1)), LTranslate(d(1), at(R0))),
    ("three_vs_two_lines", CORPUS[4].expr, Diff(Full(Z2), Union((at(A), at(B))))),
    ("axis_vs_punctured_axis", at(A), Diff(at(A), point(z(0, 0)))),
    ("index_two_vs_four", at(L2), at(L4)),
    ("far_point", Diff(Full(Z2), point(z(17, -23))), Full(Z2)),
]

EQUALITIES = [
    ("commuted_union", Union((at(A), at(A, z(0, 1)))), Union((at(A, z(0, 1)), at(A)))),
    ("exhaustion", Union((at(L2), at(L2, z(1, 0)))), Full(Z2)),
    ("checkerboard_is_subgroup", CORPUS[7].expr, at(Subgroup.make(Z2, [(1, 1), (2, 0)]))),
    ("abelian_right_is_left", RTranslate(at(A, z(0, 1)), z(2, 3)), at(A, z(2, 4))),
    ("reflection_conjugate", RTranslate(at(T2), d(1, -1)), at(T2, d(1, -1))),
]
