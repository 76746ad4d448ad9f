"""Recover subgroups from a set using only two-sided translates of the set.

Given a set ``Y`` built from cosets, ``decompose`` produces subgroups
``H_1 .. H_n`` and, for each, an expression in translates of ``Y`` that
evaluates to exactly ``H_i``, together with an expression for ``Y`` in
cosets of the ``H_i``.  ``check_certificate`` re-verifies all of it with the
exact decision procedure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import lattice as lat
from .covering import CosetList, piece_witness, separate_left, separate_right
from .errors import (EmptyInput, MixedCarriers, NotASubgroup, NotTopLevel,
                     SubgroupNotInFamily)
from .group import Coset, GroupElement, Subgroup
from .setalg import (Atom, Diff, Empty, Full, Intersect, LTranslate, OmegaNormalForm,
                     OmegaPiece, RTranslate, SetExpr, Symbol, Union, carrier_of, is_empty,
                     push_translations, sets_equal, simplify, substitute,
                     to_omega_normal_form)

Y = Symbol("Y")


# --------------------------------------------------------------------------
# containment DAG


@dataclass
class ContainmentDag:
    nodes: list
    edges: list = field(default_factory=list)

    @classmethod
    def build(cls, subgroups: Sequence[Subgroup]) -> "ContainmentDag":
        nodes = sorted(set(subgroups), key=lambda H: H.key())
        k = len(nodes)
        below = [[i != j and nodes[j].is_subgroup_of(nodes[i]) for j in range(k)] for i in range(k)]
        edges = []
        for i in range(k):
            for j in range(k):
                if not below[i][j]:
                    continue
                if any(below[i][m] and below[m][j] for m in range(k)):
                    continue
                edges.append((i, j))
        return cls(nodes, edges)

    def top_level(self) -> list[Subgroup]:
        targets = {j for _, j in self.edges}
        return [H for i, H in enumerate(self.nodes) if i not in targets]

    def is_top_level(self, H: Subgroup) -> bool:
        return H in self.top_level()

    def depth(self) -> int:
        # longest path, nodes are processed from the top (supersets first)
        order = sorted(range(len(self.nodes)), key=lambda i: -self.nodes[i].rank)
        longest = {i: 0 for i in order}
        for i in order:
            for a, b in self.edges:
                if a == i:
                    longest[b] = max(longest[b], longest[i] + 1)
        return max(longest.values(), default=0)

    def descendants(self, H: Subgroup) -> list[Subgroup]:
        i = self.nodes.index(H)
        seen, stack = set(), [i]
        while stack:
            a = stack.pop()
            for x, y in self.edges:
                if x == a and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return [self.nodes[j] for j in sorted(seen)]


def used_subgroups(nf: OmegaNormalForm) -> list[Subgroup]:
    out = []
    for p in nf.pieces:
        for c in (p.E0,) + p.removals:
            if c.subgroup not in out:
                out.append(c.subgroup)
    return sorted(out, key=lambda H: H.key())


# --------------------------------------------------------------------------
# big cosets and the minimal subgroup


def big_cosets(nf: OmegaNormalForm, H: Subgroup) -> list[Coset]:
    """Cosets of ``H`` that cannot be covered by cosets of the other subgroups: the piece heads."""
    if H not in nf.family:
        raise SubgroupNotInFamily(str(H))
    out = []
    for p in nf.pieces:
        if p.E0.subgroup == H and p.E0 not in out:
            out.append(p.E0)
    return out


def _coset_set(H1: Subgroup, q: GroupElement, C: Sequence[Coset]) -> frozenset:
    return frozenset(Coset.make(H1, q * c.rep) for c in C)


@dataclass(frozen=True)
class MinimalSubgroup:
    subgroup: Subgroup
    witness: SetExpr
    positives: tuple
    negatives: tuple


def _union_expr(cosets: Sequence[Coset]) -> SetExpr:
    atoms = tuple(Atom(c) for c in cosets)
    return atoms[0] if len(atoms) == 1 else Union(atoms)


def _combine(positives, negatives, base: SetExpr) -> SetExpr:
    pos = tuple(LTranslate(q, base) for q in positives)
    expr = pos[0] if len(pos) == 1 else Intersect(pos)
    if negatives:
        neg = tuple(LTranslate(q, base) for q in negatives)
        expr = Diff(expr, neg[0] if len(neg) == 1 else Union(neg))
    return simplify(expr)


def minimal_subgroup_full(C: Sequence[Coset]) -> MinimalSubgroup:
    if not C:
        raise EmptyInput("no cosets given")
    H1 = C[0].subgroup
    if any(c.subgroup != H1 for c in C):
        raise ValueError("all cosets must belong to one subgroup")
    carrier = H1.carrier
    C = list(dict.fromkeys(C))
    Cexpr = _union_expr(C)
    s1inv = C[0].rep.inverse()
    # s1^-1 C is a union of cosets y_i H1 containing the identity; H collects the
    # y_i that stabilise C on the right
    ys = [s1inv * c.rep for c in C]
    inside, outside = [], []
    for y in ys:
        if sets_equal(RTranslate(Cexpr, y), Cexpr):
            inside.append(y)
        else:
            outside.append(y)
    H = Subgroup.generated(carrier, H1.generators() + inside)
    positives, negatives = [s1inv], []
    for y in outside:
        # any q separating e from y: q^-1 lies in exactly one of C, C y^-1
        sym = Union((Diff(Cexpr, RTranslate(Cexpr, y.inverse())),
                     Diff(RTranslate(Cexpr, y.inverse()), Cexpr)))
        nf = to_omega_normal_form(sym)
        p = piece_witness(nf.pieces[0])
        q = p.inverse()
        target = positives if any(c.contains(p) for c in C) else negatives
        if q not in target:
            target.append(q)
    # verify on coset sets
    got = frozenset.intersection(*(_coset_set(H1, q, C) for q in positives))
    for q in negatives:
        got = got - _coset_set(H1, q, C)
    want = frozenset(Coset.make(H1, t) for t in H.transversal(H1))
    if got != want:
        raise AssertionError("minimal subgroup witness does not reproduce the subgroup")
    return MinimalSubgroup(H, _combine(positives, negatives, Y), tuple(positives), tuple(negatives))


def minimal_subgroup(C: Sequence[Coset]) -> tuple[Subgroup, SetExpr]:
    """Smallest subgroup among finite unions of ``H1``-cosets generated by translates of ``C``."""
    m = minimal_subgroup_full(C)
    return m.subgroup, m.witness


def boolean_atoms(C: Sequence[Coset], translates: Sequence[GroupElement]) -> list[frozenset]:
    """Atoms of the boolean algebra generated by ``qC`` over ``translates``, as sets of cosets."""
    H1 = C[0].subgroup
    sets = [_coset_set(H1, q, C) for q in translates]
    universe = frozenset().union(*sets)
    groups: dict[tuple, set] = {}
    for x in sorted(universe, key=lambda c: c.key()):
        sig = tuple(x in s for s in sets)
        groups.setdefault(sig, set()).add(x)
    return [frozenset(v) for v in groups.values()]


def candidate_translates(C: Sequence[Coset], radius: int = 1) -> list[GroupElement]:
    """``s_k h s_i^-1`` for reps of ``C`` and small ``h`` in ``H1``."""
    H1 = C[0].subgroup
    hs = []
    for h in H1.elements():
        if max(map(abs, lat.coordinates(h.translation, H1.basis) or (0,)), default=0) > radius and len(hs) > 0:
            break
        hs.append(h)
    out = []
    for a in C:
        for b in C:
            for h in hs:
                q = a.rep * h * b.rep.inverse()
                if q not in out:
                    out.append(q)
    return out


def exhaustive_minimality_check(C: Sequence[Coset], H: Subgroup, extra: Sequence[GroupElement] = ()) -> bool:
    """No atom over the finite candidate set has fewer ``H1``-cosets than ``[H:H1]``."""
    H1 = C[0].subgroup
    n = H.index_of(H1)
    qs = list(candidate_translates(C)) + [q for q in extra]
    return all(len(a) >= n for a in boolean_atoms(C, qs))


# --------------------------------------------------------------------------
# promotion of a top-level subgroup


@dataclass(frozen=True)
class Promotion:
    base: Subgroup
    subgroup: Subgroup
    witness: SetExpr
    rewritten: OmegaNormalForm

    @property
    def index(self) -> int:
        return self.subgroup.index_of(self.base)


def _cover_cosets(expr: SetExpr) -> list[Coset]:
    nf = to_omega_normal_form(expr)
    out = []
    for p in nf.pieces:
        if p.E0 not in out:
            out.append(p.E0)
    return out


def promote(nf: OmegaNormalForm, H1: Subgroup) -> Promotion:
    used = used_subgroups(nf)
    if H1 not in used or not ContainmentDag.build(used).is_top_level(H1):
        raise NotTopLevel(str(H1))
    big = big_cosets(nf, H1)
    if not big:
        raise NotTopLevel(f"{H1} heads no piece")
    Z = nf.to_expr()
    H, wA = minimal_subgroup(big)
    A0 = substitute(wA, {"Y": Z})
    Hatom = Atom(Coset.of(H))

    residual = _cover_cosets(Diff(Hatom, A0))
    ts = separate_left(CosetList(tuple(residual), H)) if residual else [H.carrier.identity]
    parts = tuple(LTranslate(t, wA) for t in ts)
    B0w = simplify(parts[0] if len(parts) == 1 else Union(parts))
    B0 = substitute(B0w, {"Y": Z})

    outside = _cover_cosets(Diff(B0, Hatom))
    ts2 = separate_right(CosetList(tuple(outside), H)) if outside else [H.carrier.identity]
    parts = tuple(RTranslate(B0w, t) for t in ts2)
    W = simplify(parts[0] if len(parts) == 1 else Intersect(parts))

    # pieces headed by H1-cosets merge into pieces headed by H-cosets
    merged: dict[Coset, list] = {}
    pieces = []
    for p in nf.pieces:
        if p.E0.subgroup == H1:
            key = Coset.make(H, p.E0.rep)
            if key not in merged:
                merged[key] = []
                pieces.append(key)
            for r in p.removals:
                if r not in merged[key]:
                    merged[key].append(r)
        else:
            pieces.append(p)
    new_pieces = tuple(OmegaPiece(x, tuple(merged[x])) if isinstance(x, Coset) else x for x in pieces)
    family = tuple(sorted({H if K == H1 else K for K in nf.family}, key=lambda K: K.key()))
    return Promotion(H1, H, W, OmegaNormalForm(new_pieces, family, nf.carrier))


def promote_top_level(nf: OmegaNormalForm, H1: Subgroup):
    p = promote(nf, H1)
    return p.subgroup, p.witness, p.rewritten


# --------------------------------------------------------------------------
# the recursion


@dataclass
class DecompositionCertificate:
    input: SetExpr
    subgroups: list
    witnesses: list
    reconstruction: SetExpr
    promotions: list = field(default_factory=list)
    engine_version: str = ""


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _max_rank(nf: OmegaNormalForm) -> int:
    return max((p.E0.subgroup.rank for p in nf.pieces), default=-1)


class _Builder:
    def __init__(self, carrier):
        self.carrier = carrier
        self.subgroups: list[Subgroup] = []
        self.witnesses: list[SetExpr] = []
        self.promotions: list[int] = []

    def record(self, H, W, index):
        if H not in self.subgroups:
            self.subgroups.append(H)
            self.witnesses.append(W)
            self.promotions.append(index)

    def run(self, Zc: SetExpr, Zw: SetExpr, bound: Optional[int] = None) -> SetExpr:
        nf = to_omega_normal_form(Zc)
        if nf.is_empty:
            return Empty(self.carrier)
        rank = _max_rank(nf)
        if bound is not None and rank >= bound:
            raise RuntimeError("decomposition failed to decrease the head rank")
        Zc = nf.to_expr()
        tops = ContainmentDag.build(used_subgroups(nf)).top_level()
        covers, cover_ws, parts = [], [], []
        residues = []
        for H1 in tops:
            pr = promote(nf, H1)
            H = pr.subgroup
            W = simplify(substitute(pr.witness, {"Y": Zw}))
            self.record(H, W, pr.index)
            hcos = list(dict.fromkeys(Coset.make(H, c.rep) for c in big_cosets(nf, H1)))
            Ac = _union_expr(hcos)
            Aw = _union_of(tuple(simplify(LTranslate(c.rep, W)) for c in hcos))
            covers.append(Ac)
            cover_ws.append(Aw)
            residues.append((Ac, Aw))
        for Ac, Aw in residues:
            sub = self.run(Diff(Ac, Zc), Diff(Aw, Zw), rank)
            parts.append(Ac if isinstance(sub, Empty) else Diff(Ac, sub))
        rest = self.run(Diff(Zc, _union_of(tuple(covers))), Diff(Zw, _union_of(tuple(cover_ws))), rank)
        if not isinstance(rest, Empty):
            parts.insert(0, rest)
        return _union_of(tuple(parts))


def _union_of(items: tuple) -> SetExpr:
    return items[0] if len(items) == 1 else Union(items)


def decompose(Yexpr: SetExpr) -> DecompositionCertificate:
    from . import ENGINE_VERSION

    carrier = carrier_of(Yexpr)
    if carrier is None or is_empty(Yexpr):
        raise EmptyInput("cannot decompose the empty set")
    b = _Builder(carrier)
    recon = b.run(Yexpr, Y)
    return DecompositionCertificate(Yexpr, b.subgroups, b.witnesses, recon, b.promotions, ENGINE_VERSION)


# --------------------------------------------------------------------------
# checking


def witness_syntax_ok(expr: SetExpr) -> bool:
    """Only ``Y``, its translates and boolean operations may occur."""
    stack, seen = [expr], set()
    while stack:
        e = stack.pop()
        if id(e) in seen:
            continue
        seen.add(id(e))
        if isinstance(e, Symbol):
            if e.name != "Y":
                return False
        elif isinstance(e, Empty):
            continue
        elif isinstance(e, (Union, Intersect)):
            if not e.items:
                return False
            stack.extend(e.items)
        elif isinstance(e, Diff):
            stack.extend((e.left, e.right))
        elif isinstance(e, (LTranslate, RTranslate)):
            stack.append(e.expr)
        else:
            return False
    return True


def _subgroup_axioms(H: Subgroup) -> Optional[str]:
    try:
        again = Subgroup.make(H.carrier, H.basis, H.reflection)
    except NotASubgroup as exc:
        return str(exc)
    if again != H:
        return "subgroup representation is not canonical"
    return None


def _atom_subgroups(expr: SetExpr):
    stack, seen = [push_translations(expr)], set()
    while stack:
        e = stack.pop()
        if id(e) in seen:
            continue
        seen.add(id(e))
        if isinstance(e, Atom):
            yield e.coset.subgroup
        elif isinstance(e, Full):
            yield Subgroup.full(e.carrier)
        elif isinstance(e, Symbol):
            yield None
        elif isinstance(e, (Union, Intersect)):
            stack.extend(e.items)
        elif isinstance(e, Diff):
            stack.extend((e.left, e.right))


def check_certificate(cert: DecompositionCertificate) -> CheckResult:
    try:
        if len(cert.subgroups) != len(cert.witnesses):
            return CheckResult(False, "subgroup and witness counts differ")
        bind = {"Y": cert.input}
        for i, (H, W) in enumerate(zip(cert.subgroups, cert.witnesses)):
            bad = _subgroup_axioms(H)
            if bad:
                return CheckResult(False, f"subgroup {i}: {bad}")
            if not witness_syntax_ok(W):
                return CheckResult(False, f"witness {i} uses more than translates of Y")
            if not sets_equal(substitute(W, bind), Atom(Coset.of(H))):
                return CheckResult(False, f"witness {i} does not evaluate to subgroup {i}")
        if not sets_equal(cert.reconstruction, cert.input):
            return CheckResult(False, "reconstruction differs from the input")
        for K in _atom_subgroups(cert.reconstruction):
            if K is None:
                return CheckResult(False, "reconstruction contains a free symbol")
            if K not in cert.subgroups:
                return CheckResult(False, f"reconstruction uses foreign subgroup {K}")
    except (MixedCarriers, NotASubgroup, ValueError) as exc:
        return CheckResult(False, f"malformed certificate: {exc}")
    return CheckResult(True, "ok")


def to_left_only(expr: SetExpr) -> SetExpr:
    """Rewrite right translates as left ones; only valid on abelian carriers."""
    memo: dict[int, SetExpr] = {}

    def go(e):
        k = id(e)
        if k in memo:
            return memo[k]
        if isinstance(e, RTranslate):
            if not e.g.carrier.is_abelian and not e.g.is_identity:
                raise ValueError("right translate on a non-abelian carrier")
            out = LTranslate(e.g, go(e.expr))
        elif isinstance(e, LTranslate):
            out = LTranslate(e.g, go(e.expr))
        elif isinstance(e, (Union, Intersect)):
            out = type(e)(tuple(go(x) for x in e.items))
        elif isinstance(e, Diff):
            out = Diff(go(e.left), go(e.right))
        else:
            out = e
        memo[k] = out
        return out

    return simplify(go(expr))
