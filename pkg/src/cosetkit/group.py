"""Exact arithmetic in Z^n and Z^n x| C2, with subgroups and left cosets.

A semidirect carrier carries a ``mask`` recording which coordinates the
sign negates; ``ZN_SEMIDIRECT_C2(n)`` negates all of them.  Partial masks
only arise from products such as ``Z^a x (Z^b x| C2)``.

A subgroup is stored as a translation lattice ``L`` in HNF plus, optionally,
a reflection offset ``r``: the subgroup is ``{(l,+1)} u {(r+l,-1)}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Iterator, Optional, Sequence, Union

from . import lattice as lat
from .errors import InfiniteIndex, MixedCarriers, NotASubgroup

Vector = lat.Vector


@dataclass(frozen=True)
class GroupCarrier:
    n: int
    mask: Optional[tuple[bool, ...]] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("carrier dimension must be positive")
        if self.mask is not None:
            if len(self.mask) != self.n:
                raise ValueError("mask length must equal n")
            if not any(self.mask):
                raise ValueError("a semidirect carrier must negate some coordinate")

    @classmethod
    def ZN(cls, n: int) -> "GroupCarrier":
        return cls(n)

    @classmethod
    def ZN_SEMIDIRECT_C2(cls, n: int) -> "GroupCarrier":
        return cls(n, (True,) * n)

    @property
    def is_semidirect(self) -> bool:
        return self.mask is not None

    @property
    def kind(self) -> str:
        return "ZN_SEMIDIRECT_C2" if self.mask is not None else "ZN"

    @property
    def is_abelian(self) -> bool:
        return self.mask is None

    def act(self, sign: int, v: Sequence[int]) -> Vector:
        if sign == 1 or self.mask is None:
            return tuple(v)
        return tuple(-x if m else x for x, m in zip(v, self.mask))

    def act_lattice(self, sign: int, basis: lat.Basis) -> lat.Basis:
        if sign == 1 or self.mask is None:
            return basis
        return lat.hnf([self.act(-1, row) for row in basis], self.n)

    def element(self, translation: Sequence[int], sign: int = 1) -> "GroupElement":
        return GroupElement(self, tuple(int(x) for x in translation), sign)

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.n, 1)

    def key(self):
        return (self.n, self.mask is not None, self.mask or ())

    def __str__(self):
        if self.mask is None:
            return f"Z^{self.n}"
        if all(self.mask):
            return f"Dinf^{self.n}"
        return "Z^%d x| C2[%s]" % (self.n, "".join("1" if m else "0" for m in self.mask))


@dataclass(frozen=True)
class GroupElement:
    carrier: GroupCarrier
    translation: Vector
    sign: int = 1

    def __post_init__(self):
        if len(self.translation) != self.carrier.n:
            raise ValueError("translation length must equal carrier dimension")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.sign == -1 and not self.carrier.is_semidirect:
            raise ValueError("Z^n elements have sign +1")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.carrier != self.carrier:
            raise MixedCarriers(f"{self.carrier} vs {other.carrier}")
        w = self.carrier.act(self.sign, other.translation)
        return GroupElement(self.carrier, lat.add(self.translation, w), self.sign * other.sign)

    def inverse(self) -> "GroupElement":
        v = self.carrier.act(self.sign, self.translation)
        return GroupElement(self.carrier, tuple(-x for x in v), self.sign)

    def __pow__(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = self.carrier.identity
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @property
    def is_identity(self) -> bool:
        return self.sign == 1 and not any(self.translation)

    def key(self):
        return (max(map(abs, self.translation), default=0), self.translation, -self.sign)

    def __str__(self):
        body = ",".join(map(str, self.translation))
        if self.carrier.is_semidirect:
            return f"({body};{'+' if self.sign == 1 else '-'})"
        return f"({body})"


class _Inv:
    def __repr__(self):
        return "INV"


INV = _Inv()


def eval_term(word: Sequence[Union[GroupElement, _Inv]], carrier: Optional[GroupCarrier] = None) -> GroupElement:
    """Multiply out a word; ``INV`` inverts the element that follows it."""
    result = None
    invert = False
    for item in word:
        if item is INV:
            invert = not invert
            continue
        g = item.inverse() if invert else item
        invert = False
        result = g if result is None else result * g
    if result is None:
        if carrier is None:
            raise ValueError("empty word needs an explicit carrier")
        return carrier.identity
    return result


def _check_same(*carriers: GroupCarrier):
    first = carriers[0]
    for c in carriers[1:]:
        if c != first:
            raise MixedCarriers(f"{first} vs {c}")


@dataclass(frozen=True)
class Subgroup:
    carrier: GroupCarrier
    basis: lat.Basis
    reflection: Optional[Vector] = None

    # construction -----------------------------------------------------

    @classmethod
    def make(cls, carrier: GroupCarrier, rows: Sequence[Sequence[int]] = (),
             reflection: Optional[Sequence[int]] = None) -> "Subgroup":
        basis = lat.hnf(rows, carrier.n)
        if reflection is None:
            return cls(carrier, basis, None)
        if not carrier.is_semidirect:
            raise NotASubgroup("reflections need a semidirect carrier")
        r = tuple(int(x) for x in reflection)
        if not lat.is_sublattice(carrier.act_lattice(-1, basis), basis):
            raise NotASubgroup("lattice is not invariant under the reflection")
        if not lat.contains(basis, lat.add(r, carrier.act(-1, r))):
            raise NotASubgroup("square of the reflection element leaves the lattice")
        return cls(carrier, basis, lat.reduce(r, basis))

    @classmethod
    def generated(cls, carrier: GroupCarrier, elements: Sequence[GroupElement]) -> "Subgroup":
        _check_same(carrier, *(g.carrier for g in elements))
        rows = [g.translation for g in elements if g.sign == 1]
        refl = [g.translation for g in elements if g.sign == -1]
        if not refl:
            return cls.make(carrier, rows)
        r1 = refl[0]
        rows += [lat.sub(r, r1) for r in refl[1:]]
        rows.append(lat.add(r1, carrier.act(-1, r1)))
        rows += [carrier.act(-1, row) for row in rows]
        return cls.make(carrier, rows, r1)

    @classmethod
    def full(cls, carrier: GroupCarrier) -> "Subgroup":
        eye = [[int(i == j) for j in range(carrier.n)] for i in range(carrier.n)]
        return cls.make(carrier, eye, (0,) * carrier.n if carrier.is_semidirect else None)

    @classmethod
    def trivial(cls, carrier: GroupCarrier) -> "Subgroup":
        return cls(carrier, (), None)

    # queries ----------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def has_reflection(self) -> bool:
        return self.reflection is not None

    def generators(self) -> list[GroupElement]:
        gens = [self.carrier.element(row) for row in self.basis]
        if self.reflection is not None:
            gens.append(self.carrier.element(self.reflection, -1))
        return gens

    def contains(self, g: GroupElement) -> bool:
        _check_same(self.carrier, g.carrier)
        if g.sign == 1:
            return lat.contains(self.basis, g.translation)
        if self.reflection is None:
            return False
        return lat.contains(self.basis, lat.sub(g.translation, self.reflection))

    __contains__ = contains

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        _check_same(self.carrier, other.carrier)
        return all(other.contains(g) for g in self.generators())

    def intersect(self, other: "Subgroup") -> "Subgroup":
        _check_same(self.carrier, other.carrier)
        n = self.carrier.n
        if self.reflection is None or other.reflection is None:
            return Subgroup(self.carrier, lat.intersect(self.basis, other.basis, n), None)
        hit = lat.affine_intersection(self.reflection, self.basis, other.reflection, other.basis, n)
        if hit is None:
            return Subgroup(self.carrier, lat.intersect(self.basis, other.basis, n), None)
        point, L = hit
        return Subgroup(self.carrier, L, lat.reduce(point, L))

    def conjugate(self, s: GroupElement) -> "Subgroup":
        """``s H s^-1``."""
        _check_same(self.carrier, s.carrier)
        if self.carrier.is_abelian:
            return self
        sinv = s.inverse()
        return Subgroup.generated(self.carrier, [s * g * sinv for g in self.generators()])

    def index_of(self, sub: "Subgroup") -> Optional[int]:
        """``[self : sub]``; None when infinite.  Raises if ``sub`` is not contained."""
        if not sub.is_subgroup_of(self):
            raise NotASubgroup("not a subgroup of the ambient subgroup")
        m = lat.index(self.basis, sub.basis)
        if m is None:
            return None
        if self.reflection is not None and sub.reflection is None:
            m *= 2
        return m

    def transversal(self, sub: "Subgroup") -> list[GroupElement]:
        """Representatives of the left ``sub``-cosets inside ``self``."""
        if self.index_of(sub) is None:
            raise InfiniteIndex("transversal of an infinite-index subgroup")
        n = self.carrier.n
        trans = [self.carrier.element(v) for v in lat.transversal(self.basis, sub.basis, n)]
        if self.reflection is not None and sub.reflection is None:
            rho = self.carrier.element(self.reflection, -1)
            trans = trans + [rho * t for t in trans]
        return trans

    def elements(self) -> Iterator[GroupElement]:
        """All elements ordered by (max-norm of lattice coordinates, lex, sign)."""
        k = self.rank
        C = self.carrier
        shells = range(1) if k == 0 else count()
        for radius in shells:
            for c in lat.shell_points(radius, k):
                v = lat.combine(c, self.basis, C.n)
                yield C.element(v)
                if self.reflection is not None:
                    yield C.element(lat.add(self.reflection, v), -1)

    def key(self):
        return (self.carrier.key(), len(self.basis), self.basis,
                self.reflection is not None, self.reflection or ())

    def __str__(self):
        rows = ",".join("[" + ",".join(map(str, r)) + "]" for r in self.basis)
        s = f"span[{rows}]"
        if self.reflection is not None:
            s += " refl (" + ",".join(map(str, self.reflection)) + ")"
        return s


def subgroup_membership(g: GroupElement, H: Subgroup) -> bool:
    return H.contains(g)


def subgroup_intersect(H: Subgroup, K: Subgroup) -> Subgroup:
    return H.intersect(K)


def subgroup_index(H: Subgroup, K: Subgroup) -> Optional[int]:
    return H.index_of(K)


def conjugate_subgroup(s: GroupElement, H: Subgroup) -> Subgroup:
    return H.conjugate(s)


def coset_transversal(H: Subgroup, K: Subgroup) -> list[GroupElement]:
    return H.transversal(K)


@dataclass(frozen=True)
class Coset:
    """Left coset ``rep * subgroup`` with a canonical representative."""
    subgroup: Subgroup
    rep: GroupElement

    @classmethod
    def make(cls, subgroup: Subgroup, rep: GroupElement) -> "Coset":
        _check_same(subgroup.carrier, rep.carrier)
        C = subgroup.carrier
        v, sign = rep.translation, rep.sign
        if sign == -1 and subgroup.reflection is not None:
            v = lat.add(v, C.act(-1, subgroup.reflection))
            sign = 1
        L = C.act_lattice(sign, subgroup.basis)
        return cls(subgroup, C.element(lat.reduce(v, L), sign))

    @classmethod
    def of(cls, subgroup: Subgroup) -> "Coset":
        return cls(subgroup, subgroup.carrier.identity)

    @property
    def carrier(self) -> GroupCarrier:
        return self.subgroup.carrier

    def contains(self, g: GroupElement) -> bool:
        return self.subgroup.contains(self.rep.inverse() * g)

    __contains__ = contains

    def parts(self) -> list[tuple[int, Vector, lat.Basis]]:
        """Translation sets of the coset, split by sign: ``(sign, offset, lattice)``."""
        C = self.carrier
        v, e = self.rep.translation, self.rep.sign
        L = C.act_lattice(e, self.subgroup.basis)
        out = [(e, v, L)]
        if self.subgroup.reflection is not None:
            out.append((-e, lat.add(v, C.act(e, self.subgroup.reflection)), L))
        return out

    def intersect(self, other: "Coset") -> Optional["Coset"]:
        _check_same(self.carrier, other.carrier)
        C = self.carrier
        for s1, o1, L1 in self.parts():
            for s2, o2, L2 in other.parts():
                if s1 != s2:
                    continue
                hit = lat.affine_intersection(o1, L1, o2, L2, C.n)
                if hit is not None:
                    x = C.element(hit[0], s1)
                    return Coset.make(self.subgroup.intersect(other.subgroup), x)
        return None

    def left_translate(self, s: GroupElement) -> "Coset":
        return Coset.make(self.subgroup, s * self.rep)

    def right_translate(self, t: GroupElement) -> "Coset":
        # (gH)t = (gt)(t^-1 H t)
        return Coset.make(self.subgroup.conjugate(t.inverse()), self.rep * t)

    def is_subset_of(self, other: "Coset") -> bool:
        return self.subgroup.is_subgroup_of(other.subgroup) and other.contains(self.rep)

    def elements(self) -> Iterator[GroupElement]:
        for h in self.subgroup.elements():
            yield self.rep * h

    def key(self):
        return (self.subgroup.key(), self.rep.key())

    def __str__(self):
        return f"{self.rep}{self.subgroup}"


def coset_canonical(C: Coset) -> Coset:
    return Coset.make(C.subgroup, C.rep)


def enumerate_ball(carrier: GroupCarrier, radius: int) -> list[GroupElement]:
    out = []
    for v in lat.ball_points(radius, carrier.n):
        out.append(carrier.element(v))
        if carrier.is_semidirect:
            out.append(carrier.element(v, -1))
    return out


def iter_carrier(carrier: GroupCarrier) -> Iterator[GroupElement]:
    """Unbounded version of ``enumerate_ball``, same order."""
    for k in count():
        for v in lat.shell_points(k, carrier.n):
            yield carrier.element(v)
            if carrier.is_semidirect:
                yield carrier.element(v, -1)
