"""Affine and piecewise-affine maps between carriers, and their graphs.

An affine piece on a coset ``s0 K`` is ``s0 k -> g0 hom(k)`` for a
homomorphism ``hom: K -> G``.  Its graph is the coset
``(s0, g0) {(k, hom(k))}`` of the product carrier, and a coset of the product
is such a graph exactly when its subgroup meets ``{e} x G`` trivially.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import lattice as lat
from .errors import MixedCarriers, NotAGraph
from .group import Coset, GroupCarrier, GroupElement, Subgroup
from .setalg import (Atom, Diff, Empty, OmegaPiece, SetExpr, Union, carrier_of, is_empty,
                     to_omega_normal_form)

UNDEFINED = None


# --------------------------------------------------------------------------
# product carriers


@dataclass(frozen=True)
class Product:
    source: GroupCarrier
    target: GroupCarrier

    def __post_init__(self):
        if self.source.is_semidirect and self.target.is_semidirect:
            raise ValueError("products of two semidirect carriers are not supported")

    @property
    def carrier(self) -> GroupCarrier:
        a, b = self.source, self.target
        if not a.is_semidirect and not b.is_semidirect:
            return GroupCarrier.ZN(a.n + b.n)
        ma = a.mask or (False,) * a.n
        mb = b.mask or (False,) * b.n
        return GroupCarrier(a.n + b.n, ma + mb)

    def pair(self, h: GroupElement, g: GroupElement) -> GroupElement:
        if h.carrier != self.source or g.carrier != self.target:
            raise MixedCarriers("pair components have the wrong carriers")
        return self.carrier.element(h.translation + g.translation, h.sign * g.sign)

    def split(self, x: GroupElement) -> tuple[GroupElement, GroupElement]:
        if x.carrier != self.carrier:
            raise MixedCarriers(f"{x.carrier} vs {self.carrier}")
        a = self.source.n
        hs = x.sign if self.source.is_semidirect else 1
        gs = x.sign if self.target.is_semidirect else 1
        return self.source.element(x.translation[:a], hs), self.target.element(x.translation[a:], gs)


def product_carrier(source: GroupCarrier, target: GroupCarrier) -> GroupCarrier:
    return Product(source, target).carrier


# --------------------------------------------------------------------------
# affine pieces


@dataclass(frozen=True)
class AffinePiece:
    """``s0 k -> g0 hom(k)`` on ``domain``; ``images`` are the values of ``hom``
    on ``domain.subgroup.generators()`` (basis rows, then the reflection)."""
    domain: Coset
    s0: GroupElement
    g0: GroupElement
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        K = self.domain.subgroup
        if len(self.images) != len(K.generators()):
            raise ValueError("one image per domain generator is required")
        if not self.domain.contains(self.s0):
            raise ValueError("base point must lie in the domain")

    @property
    def source(self) -> GroupCarrier:
        return self.domain.carrier

    @property
    def target(self) -> GroupCarrier:
        return self.g0.carrier

    @property
    def matrix(self) -> list[list[int]]:
        """Translation parts of the lattice-generator images, one row per generator."""
        return [list(g.translation) for g in self.images[: self.domain.subgroup.rank]]

    def hom(self, k: GroupElement) -> GroupElement:
        K = self.domain.subgroup
        out = self.target.identity
        v = k.translation
        if k.sign == -1:
            if K.reflection is None:
                raise ValueError("element is not in the domain subgroup")
            v = lat.sub(v, K.reflection)
        coeffs = lat.coordinates(v, K.basis)
        if coeffs is None:
            raise ValueError("element is not in the domain subgroup")
        for c, img in zip(coeffs, self.images):
            if c:
                out = out * img ** c
        if k.sign == -1:
            out = out * self.images[-1]
        return out

    def __call__(self, h: GroupElement) -> GroupElement:
        return self.g0 * self.hom(self.s0.inverse() * h)

    def relations_hold(self) -> bool:
        K = self.domain.subgroup
        S = self.source
        lat_imgs = self.images[: K.rank]
        for a in lat_imgs:
            for b in lat_imgs:
                if a * b != b * a:
                    return False
        if K.reflection is None:
            return True
        rho = self.images[-1]
        r = K.reflection
        if rho * rho != self.hom(S.element(lat.add(r, S.act(-1, r)))):
            return False
        for row, img in zip(K.basis, lat_imgs):
            if rho * img * rho.inverse() != self.hom(S.element(S.act(-1, row))):
                return False
        return True

    def graph_subgroup(self, S: Optional[Subgroup] = None) -> Subgroup:
        K = self.domain.subgroup
        S = K if S is None else S
        P = Product(self.source, self.target)
        return Subgroup.generated(P.carrier, [P.pair(k, self.hom(k)) for k in S.generators()])

    def graph_coset(self, sub: Optional[Coset] = None) -> Coset:
        """Graph of the map restricted to a subcoset of the domain."""
        sub = self.domain if sub is None else sub
        if not sub.is_subset_of(self.domain):
            raise ValueError("not a subcoset of the domain")
        P = Product(self.source, self.target)
        return Coset.make(self.graph_subgroup(sub.subgroup), P.pair(sub.rep, self(sub.rep)))


def affine_piece(domain: Coset, value_at_rep: GroupElement, images: Sequence[GroupElement]) -> AffinePiece:
    return AffinePiece(domain, domain.rep, value_at_rep, tuple(images))


def affine_from_matrix(domain: Coset, s0: GroupElement, g0: GroupElement, rows: Sequence[Sequence[int]],
                       target: GroupCarrier) -> AffinePiece:
    """Lattice-only domain with translation images given as rows."""
    if domain.subgroup.reflection is not None:
        raise ValueError("matrix form needs a domain without reflections")
    return AffinePiece(domain, s0, g0, tuple(target.element(r) for r in rows))


# --------------------------------------------------------------------------
# piecewise maps


@dataclass(frozen=True)
class PiecewiseAffineMap:
    pieces: tuple  # of (OmegaPiece, AffinePiece)
    source: GroupCarrier
    target: GroupCarrier

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(tuple(p) for p in self.pieces))
        for P, f in self.pieces:
            if P.E0.carrier != self.source or f.target != self.target:
                raise MixedCarriers("piece carriers do not match the map")
            if not P.E0.is_subset_of(f.domain):
                raise ValueError("piece set is not inside the affine domain")
        for i in range(len(self.pieces)):
            for j in range(i + 1, len(self.pieces)):
                a, b = self.pieces[i][0].to_expr(), self.pieces[j][0].to_expr()
                if not is_empty(a & b):
                    raise ValueError("piece sets overlap")

    def domain_expr(self) -> SetExpr:
        if not self.pieces:
            return Empty(self.source)
        items = tuple(P.to_expr() for P, _ in self.pieces)
        return items[0] if len(items) == 1 else Union(items)


def eval_pw_affine(m: PiecewiseAffineMap, h: GroupElement):
    for P, f in m.pieces:
        if P.contains(h):
            return f(h)
    return UNDEFINED


def graph_of(m: PiecewiseAffineMap) -> SetExpr:
    P = Product(m.source, m.target)
    items = []
    for piece, f in m.pieces:
        head = Atom(f.graph_coset(piece.E0))
        if piece.removals:
            rem = tuple(Atom(f.graph_coset(r)) for r in piece.removals)
            items.append(Diff(head, rem[0] if len(rem) == 1 else Union(rem)))
        else:
            items.append(head)
    if not items:
        return Empty(P.carrier)
    return items[0] if len(items) == 1 else Union(tuple(items))


def _project_subgroup(Lam: Subgroup, P: Product) -> Subgroup:
    return Subgroup.generated(P.source, [P.split(g)[0] for g in Lam.generators()])


def _lift(Lam: Subgroup, P: Product, k: GroupElement) -> Optional[GroupElement]:
    """The unique element of ``Lam`` over ``k``, if any."""
    a = P.source.n
    C = P.carrier
    rows = list(Lam.basis)
    heads = [row[:a] for row in rows]
    options = []
    if P.source.is_semidirect:
        options.append((k.sign, None if k.sign == 1 else Lam.reflection))
    else:
        options.append((1, None))
        if Lam.reflection is not None:
            options.append((-1, Lam.reflection))
    for sign, off in options:
        if sign == -1 and off is None:
            continue
        target = k.translation if off is None else lat.sub(k.translation, off[:a])
        x = lat.solve(target, heads, a)
        if x is None:
            continue
        v = lat.combine(x, tuple(rows), C.n)
        if off is not None:
            v = lat.add(v, off)
        return C.element(v, sign)
    return None


def graph_condition(Lam: Subgroup, P: Product) -> bool:
    a = P.source.n
    if any(p >= a for p in lat.pivots(Lam.basis)):
        return False
    if Lam.reflection is not None and not P.source.is_semidirect:
        # a sign change with trivial source part would be vertical
        if lat.solve(tuple(-x for x in Lam.reflection[:a]), [row[:a] for row in Lam.basis], a) is not None:
            return False
    return True


def affine_from_graph_coset(F: Coset, source: GroupCarrier, target: GroupCarrier) -> AffinePiece:
    P = Product(source, target)
    if F.carrier != P.carrier:
        raise MixedCarriers(f"{F.carrier} vs {P.carrier}")
    Lam = F.subgroup
    if not graph_condition(Lam, P):
        raise NotAGraph(f"{F} contains a vertical direction")
    K = _project_subgroup(Lam, P)
    s0, g0 = P.split(F.rep)
    images = []
    for k in K.generators():
        lam = _lift(Lam, P, k)
        if lam is None:
            raise AssertionError("projection generator has no lift")
        images.append(P.split(lam)[1])
    return AffinePiece(Coset.make(K, s0), s0, g0, tuple(images))


def _project_coset(R: Coset, P: Product) -> Coset:
    return Coset.make(_project_subgroup(R.subgroup, P), P.split(R.rep)[0])


def pw_affine_from_graph(graph: SetExpr, source: GroupCarrier, target: GroupCarrier,
                         certify: bool = False) -> PiecewiseAffineMap:
    """Recover a piecewise-affine map from its graph.

    With ``certify`` the graph is also decomposed and the certificate checked.
    """
    P = Product(source, target)
    c = carrier_of(graph)
    if c is not None and c != P.carrier:
        raise MixedCarriers(f"{c} vs {P.carrier}")
    if certify and not is_empty(graph):
        from .decompose import check_certificate, decompose
        res = check_certificate(decompose(graph))
        if not res:
            raise AssertionError(f"graph certificate rejected: {res.reason}")
    nf = to_omega_normal_form(graph)
    pieces = []
    for p in nf.pieces:
        f = affine_from_graph_coset(p.E0, source, target)
        dom = OmegaPiece(f.domain, tuple(_project_coset(r, P) for r in p.removals))
        pieces.append((dom, f))
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            if not is_empty(pieces[i][0].to_expr() & pieces[j][0].to_expr()):
                raise NotAGraph("two graph pieces lie over the same source points")
    return PiecewiseAffineMap(tuple(pieces), source, target)
