"""Brute-force ground truth on bounded windows.

Nothing here touches the normal-form machinery: expressions are evaluated
node by node, group products are recomputed from scratch, and lattice
membership is decided by rational elimination.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional

from .errors import MixedCarriers, UnboundSymbol
from .group import GroupCarrier, GroupElement, enumerate_ball
from .setalg import (Atom, Diff, Empty, Full, Intersect, LTranslate, RTranslate, SetExpr,
                     Symbol, Union, carrier_of)


@dataclass(frozen=True)
class Window:
    carrier: GroupCarrier
    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")

    def points(self) -> list[GroupElement]:
        return enumerate_ball(self.carrier, self.radius)


@lru_cache(maxsize=None)
def _in_lattice(rows: tuple, v: tuple) -> bool:
    """Is ``v`` an integer combination of the (independent) ``rows``?"""
    n = len(v)
    if not rows:
        return not any(v)
    k = len(rows)
    # columns are the basis vectors, solve M c = v
    M = [[Fraction(rows[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    piv_cols, r = [], 0
    for c in range(k):
        p = next((i for i in range(r, n) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(M[i][k] != 0 for i in range(r, n)):
        return False
    return all(M[i][k].denominator == 1 for i in range(r))


def _act(mask, sign, v):
    if sign == 1 or mask is None:
        return v
    return tuple(-x if m else x for x, m in zip(v, mask))


def _mul(mask, a, b):
    return (tuple(x + y for x, y in zip(a[0], _act(mask, a[1], b[0]))), a[1] * b[1])


def _inv(mask, a):
    return (tuple(-x for x in _act(mask, a[1], a[0])), a[1])


def _raw(g: GroupElement):
    return (tuple(g.translation), g.sign)


def _member(expr: SetExpr, x, mask, bindings) -> bool:
    if isinstance(expr, Atom):
        c = expr.coset
        y = _mul(mask, _inv(mask, _raw(c.rep)), x)
        H = c.subgroup
        if y[1] == 1:
            return _in_lattice(H.basis, y[0])
        if H.reflection is None:
            return False
        return _in_lattice(H.basis, tuple(a - b for a, b in zip(y[0], H.reflection)))
    if isinstance(expr, Empty):
        return False
    if isinstance(expr, Full):
        return True
    if isinstance(expr, Union):
        return any(_member(e, x, mask, bindings) for e in expr.items)
    if isinstance(expr, Intersect):
        return all(_member(e, x, mask, bindings) for e in expr.items)
    if isinstance(expr, Diff):
        return _member(expr.left, x, mask, bindings) and not _member(expr.right, x, mask, bindings)
    if isinstance(expr, LTranslate):
        return _member(expr.expr, _mul(mask, _inv(mask, _raw(expr.g)), x), mask, bindings)
    if isinstance(expr, RTranslate):
        return _member(expr.expr, _mul(mask, x, _inv(mask, _raw(expr.g))), mask, bindings)
    if isinstance(expr, Symbol):
        if not bindings or expr.name not in bindings:
            raise UnboundSymbol(expr.name)
        return _member(bindings[expr.name], x, mask, bindings)
    raise TypeError(f"not a set expression: {expr!r}")


def oracle_member(expr: SetExpr, g: GroupElement, bindings: Optional[Mapping[str, SetExpr]] = None) -> bool:
    return _member(expr, _raw(g), g.carrier.mask, bindings)


def window_set(expr: SetExpr, w: Window, bindings=None) -> list[GroupElement]:
    """Window points in the set, in enumeration order."""
    return [g for g in w.points() if oracle_member(expr, g, bindings)]


def compare_on_window(a: SetExpr, b: SetExpr, w: Window, *, all_points: bool = False,
                      bindings: Optional[Mapping[str, SetExpr]] = None):
    """First point of the window where ``a`` and ``b`` disagree, or None.

    With ``all_points`` the full (possibly empty) list of disagreements is returned.
    """
    for e in (a, b):
        c = carrier_of(e, bindings)
        if c is not None and c != w.carrier:
            raise MixedCarriers(f"{c} vs {w.carrier}")
    bad = []
    for g in w.points():
        if oracle_member(a, g, bindings) != oracle_member(b, g, bindings):
            if not all_points:
                return g
            bad.append(g)
    return bad if all_points else None
