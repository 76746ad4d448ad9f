"""Constructive covering arguments.

A group (or subgroup) is never a finite union of cosets of infinite-index
subgroups, so a search over its elements in a fixed order always finds a
point outside such a union.  Everything here is built on that search.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InvalidCosetList
from .group import Coset, GroupElement, Subgroup
from .setalg import Atom, Intersect, LTranslate, OmegaPiece, RTranslate, Union, is_empty


@dataclass(frozen=True)
class CosetList:
    cosets: tuple
    ambient: Subgroup

    def __post_init__(self):
        object.__setattr__(self, "cosets", tuple(self.cosets))
        if not self.cosets:
            raise InvalidCosetList("a coset list must be nonempty")
        for c in self.cosets:
            if c.carrier != self.ambient.carrier:
                raise InvalidCosetList("coset carrier differs from the ambient carrier")
            meet = self.ambient.intersect(c.subgroup)
            if self.ambient.index_of(meet) is not None:
                raise InvalidCosetList(f"{c} has finite index in {self.ambient}")

    @classmethod
    def of(cls, cosets: Sequence[Coset], ambient: Optional[Subgroup] = None) -> "CosetList":
        if ambient is None:
            if not cosets:
                raise InvalidCosetList("a coset list must be nonempty")
            ambient = Subgroup.full(cosets[0].carrier)
        return cls(tuple(cosets), ambient)

    def union_expr(self):
        atoms = tuple(Atom(c) for c in self.cosets)
        return atoms[0] if len(atoms) == 1 else Union(atoms)


def witness_outside(cosets: CosetList) -> GroupElement:
    """First element of the ambient subgroup outside every listed coset."""
    for g in cosets.ambient.elements():
        if not any(c.contains(g) for c in cosets.cosets):
            return g
    # only reachable for a trivial ambient, which the invariant excludes
    raise InvalidCosetList("ambient subgroup is covered")


def _intersection_empty(exprs) -> bool:
    return is_empty(exprs[0] if len(exprs) == 1 else Intersect(tuple(exprs)))


def separate_left(cosets: CosetList) -> list[GroupElement]:
    """Elements ``t_1 = e, t_2, ...`` of the ambient with ``n_i t_i C`` empty."""
    C = cosets.union_expr()
    amb = cosets.ambient
    ts = [amb.carrier.identity]
    translates = [C]
    # obstruction subgroups s_j H_k s_j^-1, one per listed coset
    conj = [c.subgroup.conjugate(c.rep) for c in cosets.cosets]
    while not _intersection_empty(translates):
        obstacles = [Coset.make(S, t) for t in ts for S in conj]
        t = witness_outside(CosetList(tuple(obstacles), amb))
        ts.append(t)
        translates.append(LTranslate(t, C))
    return ts


def separate_right(cosets: CosetList) -> list[GroupElement]:
    """Elements ``t_1 = e, t_2, ...`` of the ambient with ``n_i C t_i`` empty."""
    C = cosets.union_expr()
    amb = cosets.ambient
    ts = [amb.carrier.identity]
    translates = [C]
    meets = []
    for c in cosets.cosets:
        m = amb.intersect(c.subgroup)
        if m not in meets:
            meets.append(m)
    while not _intersection_empty(translates):
        # right cosets (H n H_k) t_i written as left cosets t_i (t_i^-1 (H n H_k) t_i)
        obstacles = [Coset.make(M.conjugate(t.inverse()), t) for t in ts for M in meets]
        t = witness_outside(CosetList(tuple(obstacles), amb))
        ts.append(t)
        translates.append(RTranslate(C, t))
    return ts


def piece_witness(piece: OmegaPiece) -> GroupElement:
    """A point of ``E0`` outside all removals (exists since removals have infinite index)."""
    x = piece.E0.rep
    K = piece.E0.subgroup
    if not piece.removals:
        return x
    xinv = x.inverse()
    shifted = tuple(r.left_translate(xinv) for r in piece.removals)
    return x * witness_outside(CosetList(shifted, K))


def separated_points(piece: OmegaPiece, N: int) -> list[GroupElement]:
    """Greedy choice of ``N`` points of the piece whose pairwise quotients avoid every removal subgroup."""
    if N < 1:
        raise ValueError("N must be positive")
    subs = [r.subgroup for r in piece.removals]
    chosen: list[GroupElement] = []
    for c in piece.E0.elements():
        if not piece.contains(c):
            continue
        if any(c == a for a in chosen):
            continue
        ok = True
        for a in chosen:
            q = a.inverse() * c
            if any(S.contains(q) for S in subs):
                ok = False
                break
        if ok:
            chosen.append(c)
            if len(chosen) == N:
                return chosen
    return chosen
