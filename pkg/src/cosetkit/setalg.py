"""Boolean set expressions over cosets and their exact normal forms.

Two normal forms are produced.  ``to_relring_normal_form`` returns disjoint
terms ``E0 minus (E1 u ... u Ek)`` with arbitrary subcosets ``Ei`` of ``E0``.
``to_omega_normal_form`` additionally refines the generating family so
that every removal has infinite index in its ``E0``; such a piece is never
empty, which is what makes ``is_empty`` and ``sets_equal`` decidable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .errors import EmptySet, MixedCarriers, UnboundSymbol
from .group import Coset, GroupCarrier, GroupElement, Subgroup


# --------------------------------------------------------------------------
# AST


class SetExpr:
    __slots__ = ()

    def __or__(self, other):
        return Union((self, other))

    def __and__(self, other):
        return Intersect((self, other))

    def __sub__(self, other):
        return Diff(self, other)

    def __rmul__(self, g):
        # g * expr -> left translate
        return LTranslate(g, self)

    def __mul__(self, g):
        return RTranslate(self, g)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Atom(SetExpr):
    coset: Coset


@dataclass(frozen=True)
class Empty(SetExpr):
    carrier: GroupCarrier


@dataclass(frozen=True)
class Full(SetExpr):
    carrier: GroupCarrier


@dataclass(frozen=True)
class Union(SetExpr):
    items: tuple

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class Intersect(SetExpr):
    items: tuple

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class Diff(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class LTranslate(SetExpr):
    g: GroupElement
    expr: SetExpr


@dataclass(frozen=True)
class RTranslate(SetExpr):
    expr: SetExpr
    g: GroupElement


@dataclass(frozen=True)
class Symbol(SetExpr):
    name: str


def to_text(expr: SetExpr) -> str:
    """Compact infix form; translates are written ``g + E`` and ``E + g``."""
    e = expr
    if isinstance(e, Atom):
        return str(e.coset)
    if isinstance(e, Empty):
        return "empty"
    if isinstance(e, Full):
        return "full"
    if isinstance(e, Symbol):
        return e.name
    if isinstance(e, (Union, Intersect)):
        op = " | " if isinstance(e, Union) else " & "
        return "(" + op.join(to_text(x) for x in e.items) + ")"
    if isinstance(e, Diff):
        return f"({to_text(e.left)} \\ {to_text(e.right)})"
    if isinstance(e, LTranslate):
        return f"{e.g} + {to_text(e.expr)}"
    if isinstance(e, RTranslate):
        return f"{to_text(e.expr)} + {e.g}"
    return repr(e)


def atom(subgroup_or_coset, rep: Optional[GroupElement] = None) -> Atom:
    if isinstance(subgroup_or_coset, Coset):
        return Atom(subgroup_or_coset)
    H = subgroup_or_coset
    return Atom(Coset.make(H, rep if rep is not None else H.carrier.identity))


def carrier_of(expr: SetExpr, bindings: Optional[Mapping[str, SetExpr]] = None) -> Optional[GroupCarrier]:
    stack = [expr]
    while stack:
        e = stack.pop()
        if isinstance(e, Atom):
            return e.coset.carrier
        if isinstance(e, (Empty, Full)):
            return e.carrier
        if isinstance(e, (LTranslate, RTranslate)):
            return e.g.carrier
        if isinstance(e, (Union, Intersect)):
            stack.extend(e.items)
        elif isinstance(e, Diff):
            stack.extend((e.left, e.right))
        elif isinstance(e, Symbol) and bindings and e.name in bindings:
            stack.append(bindings[e.name])
    return None


def substitute(expr: SetExpr, bindings: Mapping[str, SetExpr]) -> SetExpr:
    """Replace symbols by expressions (shared, not copied)."""
    memo: dict[int, SetExpr] = {}

    def go(e):
        k = id(e)
        if k in memo:
            return memo[k]
        if isinstance(e, Symbol):
            out = bindings.get(e.name, e)
        elif isinstance(e, Union):
            out = Union(tuple(go(x) for x in e.items))
        elif isinstance(e, Intersect):
            out = Intersect(tuple(go(x) for x in e.items))
        elif isinstance(e, Diff):
            out = Diff(go(e.left), go(e.right))
        elif isinstance(e, LTranslate):
            out = LTranslate(e.g, go(e.expr))
        elif isinstance(e, RTranslate):
            out = RTranslate(go(e.expr), e.g)
        else:
            out = e
        memo[k] = out
        return out

    return go(expr)


def symbols(expr: SetExpr) -> set[str]:
    out, stack, seen = set(), [expr], set()
    while stack:
        e = stack.pop()
        if id(e) in seen:
            continue
        seen.add(id(e))
        if isinstance(e, Symbol):
            out.add(e.name)
        elif isinstance(e, (Union, Intersect)):
            stack.extend(e.items)
        elif isinstance(e, Diff):
            stack.extend((e.left, e.right))
        elif isinstance(e, (LTranslate, RTranslate)):
            stack.append(e.expr)
    return out


# --------------------------------------------------------------------------
# pointwise semantics


def eval_membership(expr: SetExpr, g: GroupElement,
                    bindings: Optional[Mapping[str, SetExpr]] = None) -> bool:
    if isinstance(expr, Atom):
        return expr.coset.contains(g)
    if isinstance(expr, Empty):
        return False
    if isinstance(expr, Full):
        if expr.carrier != g.carrier:
            raise MixedCarriers(f"{expr.carrier} vs {g.carrier}")
        return True
    if isinstance(expr, Union):
        return any(eval_membership(e, g, bindings) for e in expr.items)
    if isinstance(expr, Intersect):
        return all(eval_membership(e, g, bindings) for e in expr.items)
    if isinstance(expr, Diff):
        return eval_membership(expr.left, g, bindings) and not eval_membership(expr.right, g, bindings)
    if isinstance(expr, LTranslate):
        return eval_membership(expr.expr, expr.g.inverse() * g, bindings)
    if isinstance(expr, RTranslate):
        return eval_membership(expr.expr, g * expr.g.inverse(), bindings)
    if isinstance(expr, Symbol):
        if not bindings or expr.name not in bindings:
            raise UnboundSymbol(expr.name)
        return eval_membership(bindings[expr.name], g, bindings)
    raise TypeError(f"not a set expression: {expr!r}")


# --------------------------------------------------------------------------
# relative-ring terms


@dataclass(frozen=True)
class Term:
    """``positive`` minus the union of ``removals``; removals are subcosets."""
    positive: Coset
    removals: tuple = ()


def make_term(positive: Coset, negatives: Sequence[Coset]) -> Optional[Term]:
    removals = []
    for c in negatives:
        x = positive.intersect(c)
        if x is None:
            continue
        if x == positive:
            return None
        if x not in removals:
            removals.append(x)
    return Term(positive, tuple(removals))


def _translate_terms(terms, f):
    out = []
    for t in terms:
        out.append(Term(f(t.positive), tuple(f(r) for r in t.removals)))
    return out


def _intersect_terms(P, Q):
    out = []
    for p in P:
        for q in Q:
            c = p.positive.intersect(q.positive)
            if c is None:
                continue
            t = make_term(c, p.removals + q.removals)
            if t is not None:
                out.append(t)
    return out


def _term_minus(p: Term, q: Term) -> list[Term]:
    # p \ (F \ U S_k) = (p \ F) u (p n F n S_1) u (p n F n S_2 \ S_1) u ...
    common = p.positive.intersect(q.positive)
    if common is None:
        return [p]
    out = []
    t = make_term(p.positive, p.removals + (q.positive,))
    if t is not None:
        out.append(t)
    for k, s in enumerate(q.removals):
        c = common.intersect(s)
        if c is None:
            continue
        t = make_term(c, p.removals + q.removals[:k])
        if t is not None:
            out.append(t)
    return out


def _diff_terms(P, Q):
    cur = list(P)
    for q in Q:
        nxt = []
        for p in cur:
            nxt.extend(_term_minus(p, q))
        cur = nxt
        if not cur:
            break
    return cur


def _union_terms(P, Q):
    return list(P) + _diff_terms(Q, P)


def _terms(expr: SetExpr, bindings, memo) -> list[Term]:
    k = id(expr)
    if k in memo:
        return memo[k][1]
    if isinstance(expr, Atom):
        out = [Term(expr.coset)]
    elif isinstance(expr, Empty):
        out = []
    elif isinstance(expr, Full):
        out = [Term(Coset.of(Subgroup.full(expr.carrier)))]
    elif isinstance(expr, Union):
        out = []
        for e in expr.items:
            out = _union_terms(out, _terms(e, bindings, memo))
    elif isinstance(expr, Intersect):
        if not expr.items:
            raise ValueError("empty intersection has no ambient set")
        out = _terms(expr.items[0], bindings, memo)
        for e in expr.items[1:]:
            if not out:
                break
            out = _intersect_terms(out, _terms(e, bindings, memo))
    elif isinstance(expr, Diff):
        out = _terms(expr.left, bindings, memo)
        if out:
            out = _diff_terms(out, _terms(expr.right, bindings, memo))
    elif isinstance(expr, LTranslate):
        s = expr.g
        out = _translate_terms(_terms(expr.expr, bindings, memo), lambda c: c.left_translate(s))
    elif isinstance(expr, RTranslate):
        t = expr.g
        out = _translate_terms(_terms(expr.expr, bindings, memo), lambda c: c.right_translate(t))
    elif isinstance(expr, Symbol):
        if not bindings or expr.name not in bindings:
            raise UnboundSymbol(expr.name)
        out = _terms(bindings[expr.name], bindings, memo)
    else:
        raise TypeError(f"not a set expression: {expr!r}")
    memo[k] = (expr, out)
    return out


def relring_terms(expr: SetExpr, bindings=None) -> list[Term]:
    return _terms(expr, bindings, {})


def to_relring_normal_form(expr: SetExpr, bindings=None) -> list[tuple[list[Coset], list[Coset]]]:
    """Disjoint ``(positives, negatives)`` terms whose union is ``expr``."""
    return [([t.positive], list(t.removals)) for t in relring_terms(expr, bindings)]


# --------------------------------------------------------------------------
# family refinement


def _skey(H: Subgroup):
    return H.key()


def close_under_intersection(family: Sequence[Subgroup]) -> list[Subgroup]:
    fam = sorted(set(family), key=_skey)
    seen = set(fam)
    frontier = list(fam)
    while frontier:
        new = []
        for a in frontier:
            for b in list(seen):
                c = a.intersect(b)
                if c not in seen:
                    seen.add(c)
                    new.append(c)
        frontier = new
    return sorted(seen, key=_skey)


def _refine_map(family: Sequence[Subgroup]) -> dict[Subgroup, Subgroup]:
    fam = sorted(set(family), key=_skey)
    rep = {H: H for H in fam}
    changed = True
    while changed:
        changed = False
        for X in fam:
            for Y in fam:
                cur, other = rep[X], rep[Y]
                meet = cur.intersect(other)
                if meet == cur:
                    continue
                m = cur.index_of(meet)
                if m is not None:
                    rep[X] = meet
                    changed = True
    return rep


def refine_family(family: Sequence[Subgroup]):
    """Replace subgroups by finite-index subgroups until pairwise indices are 1 or infinite.

    Returns ``(refined, coverings)`` where ``coverings[H]`` lists the cosets of
    refined subgroups whose union is ``H``.
    """
    rep = _refine_map(family)
    refined = sorted(set(rep.values()), key=_skey)
    coverings = {H: [Coset.make(rep[H], t) for t in H.transversal(rep[H])] for H in rep}
    return refined, coverings


def has_refined_property(family: Sequence[Subgroup]) -> bool:
    for a in family:
        for b in family:
            m = a.index_of(a.intersect(b))
            if m is not None and m != 1:
                return False
    return True


# --------------------------------------------------------------------------
# omega normal form


@dataclass(frozen=True)
class OmegaPiece:
    E0: Coset
    removals: tuple = ()

    def contains(self, g: GroupElement) -> bool:
        return self.E0.contains(g) and not any(r.contains(g) for r in self.removals)

    def to_expr(self) -> SetExpr:
        if not self.removals:
            return Atom(self.E0)
        return Diff(Atom(self.E0), Union(tuple(Atom(r) for r in self.removals)))


@dataclass(frozen=True)
class OmegaNormalForm:
    pieces: tuple
    family: tuple
    carrier: Optional[GroupCarrier] = field(default=None, compare=False)

    def contains(self, g: GroupElement) -> bool:
        return any(p.contains(g) for p in self.pieces)

    def to_expr(self) -> SetExpr:
        if not self.pieces:
            if self.carrier is None:
                raise ValueError("empty normal form without a carrier")
            return Empty(self.carrier)
        if len(self.pieces) == 1:
            return self.pieces[0].to_expr()
        return Union(tuple(p.to_expr() for p in self.pieces))

    @property
    def is_empty(self) -> bool:
        return not self.pieces


def to_omega_normal_form(expr: SetExpr, bindings=None, extra_subgroups: Sequence[Subgroup] = ()) -> OmegaNormalForm:
    """Disjoint pieces ``E0 minus removals`` with every removal of infinite index.

    ``extra_subgroups`` are added to the generating family before closure.
    """
    terms = relring_terms(expr, bindings)
    carrier = carrier_of(expr, bindings)
    used = list(extra_subgroups)
    for t in terms:
        used.append(t.positive.subgroup)
        used.extend(r.subgroup for r in t.removals)
    if not used:
        return OmegaNormalForm((), (), carrier)
    closed = close_under_intersection(used)
    rep = _refine_map(closed)
    family = tuple(sorted(set(rep.values()), key=_skey))

    pieces = []
    for t in terms:
        S0 = t.positive.subgroup
        K = rep[S0]
        for tr in S0.transversal(K):
            P = Coset.make(K, t.positive.rep * tr)
            removals = []
            gone = False
            for R in t.removals:
                inter = R.intersect(P)
                if inter is None:
                    continue
                M = inter.subgroup
                Kp = rep.get(M)
                if Kp is None:
                    Kp = _refine_map(closed + [M])[M]
                if Kp == K:
                    gone = True
                    break
                for tr2 in M.transversal(Kp):
                    c = Coset.make(Kp, inter.rep * tr2)
                    if c not in removals:
                        removals.append(c)
            if not gone:
                pieces.append(OmegaPiece(P, tuple(removals)))
    return OmegaNormalForm(tuple(pieces), family, carrier)


# --------------------------------------------------------------------------
# decisions


def is_empty(expr: SetExpr, bindings=None) -> bool:
    if not relring_terms(expr, bindings):
        return True
    return to_omega_normal_form(expr, bindings).is_empty


def sets_equal(a: SetExpr, b: SetExpr, bindings=None) -> bool:
    ca, cb = carrier_of(a, bindings), carrier_of(b, bindings)
    if ca is not None and cb is not None and ca != cb:
        raise MixedCarriers(f"{ca} vs {cb}")
    return is_empty(Diff(a, b), bindings) and is_empty(Diff(b, a), bindings)


def affine_hull(expr: SetExpr, bindings=None) -> Coset:
    """Smallest coset containing the set."""
    nf = to_omega_normal_form(expr, bindings)
    if nf.is_empty:
        raise EmptySet("the affine hull of the empty set is undefined")
    p = nf.pieces[0].E0.rep
    pinv = p.inverse()
    gens = []
    for piece in nf.pieces:
        gens.append(pinv * piece.E0.rep)
        gens.extend(piece.E0.subgroup.generators())
    return Coset.make(Subgroup.generated(p.carrier, gens), p)


def push_translations(expr: SetExpr) -> SetExpr:
    """Equivalent expression with every translate resolved onto the atoms."""

    def go(e, left, right):
        # denotes left * e * right
        if isinstance(e, Atom):
            c = e.coset
            if left is not None:
                c = c.left_translate(left)
            if right is not None:
                c = c.right_translate(right)
            return Atom(c)
        if isinstance(e, Full):
            return e
        if isinstance(e, Empty):
            return e
        if isinstance(e, Union):
            return Union(tuple(go(x, left, right) for x in e.items))
        if isinstance(e, Intersect):
            return Intersect(tuple(go(x, left, right) for x in e.items))
        if isinstance(e, Diff):
            return Diff(go(e.left, left, right), go(e.right, left, right))
        if isinstance(e, LTranslate):
            return go(e.expr, e.g if left is None else left * e.g, right)
        if isinstance(e, RTranslate):
            return go(e.expr, left, e.g if right is None else e.g * right)
        if isinstance(e, Symbol):
            if left is None and right is None:
                return e
            inner = e if left is None else LTranslate(left, e)
            return inner if right is None else RTranslate(inner, right)
        raise TypeError(f"not a set expression: {e!r}")

    return go(expr, None, None)


def right_translate(expr: SetExpr, t: GroupElement) -> SetExpr:
    c = carrier_of(expr)
    if c is not None and c != t.carrier:
        raise MixedCarriers(f"{c} vs {t.carrier}")
    return push_translations(RTranslate(expr, t))


def left_translate(expr: SetExpr, s: GroupElement) -> SetExpr:
    return push_translations(LTranslate(s, expr))


def simplify(expr: SetExpr) -> SetExpr:
    """Drop identity translates, merge nested translates, unwrap singleton unions and intersections."""
    memo: dict[int, SetExpr] = {}

    def go(e):
        k = id(e)
        if k in memo:
            return memo[k]
        if isinstance(e, (Union, Intersect)):
            items = tuple(go(x) for x in e.items)
            out = items[0] if len(items) == 1 else type(e)(items)
        elif isinstance(e, Diff):
            out = Diff(go(e.left), go(e.right))
        elif isinstance(e, LTranslate):
            inner = go(e.expr)
            g = e.g
            if isinstance(inner, LTranslate):
                g, inner = g * inner.g, inner.expr
            if isinstance(inner, Atom):
                out = Atom(inner.coset.left_translate(g))
            else:
                out = inner if g.is_identity else LTranslate(g, inner)
        elif isinstance(e, RTranslate):
            inner = go(e.expr)
            g = e.g
            if isinstance(inner, RTranslate):
                g, inner = inner.g * g, inner.expr
            if isinstance(inner, Atom):
                out = Atom(inner.coset.right_translate(g))
            else:
                out = inner if g.is_identity else RTranslate(inner, g)
        else:
            out = e
        memo[k] = out
        return out

    return go(expr)
