"""Seeded random objects for property tests and experiment scripts."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .group import Coset, GroupCarrier, GroupElement, Subgroup
from .setalg import Atom, Diff, Full, Intersect, LTranslate, RTranslate, SetExpr, Union


@dataclass
class ExprConfig:
    max_depth: int = 4
    max_atoms: int = 5
    max_subgroups: int = 5
    rep_radius: int = 3
    entry_radius: int = 2
    allow_translates: bool = True
    allow_full: bool = True


def random_element(rng: random.Random, carrier: GroupCarrier, radius: int) -> GroupElement:
    v = [rng.randint(-radius, radius) for _ in range(carrier.n)]
    sign = rng.choice((1, -1)) if carrier.is_semidirect else 1
    return carrier.element(v, sign)


def random_subgroup(rng: random.Random, carrier: GroupCarrier, radius: int = 2) -> Subgroup:
    n = carrier.n
    k = rng.randint(0, n)
    rows = [[rng.randint(-radius, radius) for _ in range(n)] for _ in range(k)]
    if carrier.is_semidirect and rng.random() < 0.5:
        r = [rng.randint(-radius, radius) for _ in range(n)]
        return Subgroup.generated(carrier, [carrier.element(x) for x in rows] + [carrier.element(r, -1)])
    return Subgroup.generated(carrier, [carrier.element(x) for x in rows])


def random_coset(rng: random.Random, carrier: GroupCarrier, subgroups, radius: int) -> Coset:
    return Coset.make(rng.choice(subgroups), random_element(rng, carrier, radius))


def random_expr(rng: random.Random, carrier: GroupCarrier, cfg: Optional[ExprConfig] = None) -> SetExpr:
    cfg = cfg or ExprConfig()
    subs = [random_subgroup(rng, carrier, cfg.entry_radius) for _ in range(rng.randint(1, cfg.max_subgroups))]
    atoms = [random_coset(rng, carrier, subs, cfg.rep_radius) for _ in range(rng.randint(1, cfg.max_atoms))]

    def go(depth):
        if depth == 0 or rng.random() < 0.3:
            if cfg.allow_full and rng.random() < 0.08:
                return Full(carrier)
            return Atom(rng.choice(atoms))
        op = rng.choice(("union", "inter", "diff", "diff", "ltr", "rtr") if cfg.allow_translates
                        else ("union", "inter", "diff"))
        if op == "union":
            return Union(tuple(go(depth - 1) for _ in range(rng.randint(2, 3))))
        if op == "inter":
            return Intersect(tuple(go(depth - 1) for _ in range(2)))
        if op == "diff":
            return Diff(go(depth - 1), go(depth - 1))
        g = random_element(rng, carrier, cfg.rep_radius)
        if op == "ltr":
            return LTranslate(g, go(depth - 1))
        return RTranslate(go(depth - 1), g)

    return go(cfg.max_depth)


def _random_images(rng: random.Random, K: Subgroup, target: GroupCarrier, entry: int) -> list[GroupElement]:
    """Generator images that respect the relations of ``K``."""
    gens = K.generators()
    e = target.identity
    if K.reflection is not None and not target.is_semidirect:
        # an abelian target kills the reflection and every row it negates
        return [e for _ in gens]
    if K.reflection is not None:
        return [e for _ in gens[:-1]] + [random_element(rng, target, entry) * target.element((0,) * target.n, -1)]
    if target.is_semidirect and rng.random() < 0.4:
        rho = target.element([rng.randint(-entry, entry) for _ in range(target.n)], -1)
        return [rho if rng.random() < 0.5 else e for _ in gens]
    return [target.element([rng.randint(-entry, entry) for _ in range(target.n)]) for _ in gens]


def random_pw_map(rng: random.Random, source: GroupCarrier, target: GroupCarrier, max_pieces: int = 3,
                  entry: int = 3, cfg: Optional[ExprConfig] = None):
    """A piecewise-affine map on the pieces of a random set's normal form."""
    from .pwaffine import AffinePiece, PiecewiseAffineMap
    from .setalg import to_omega_normal_form

    cfg = cfg or ExprConfig(max_depth=2, max_atoms=3, max_subgroups=3, allow_translates=False)
    while True:
        pieces = to_omega_normal_form(random_expr(rng, source, cfg)).pieces
        if pieces:
            break
    out = []
    for P in pieces[:max_pieces]:
        imgs = _random_images(rng, P.E0.subgroup, target, entry)
        f = AffinePiece(P.E0, P.E0.rep, random_element(rng, target, entry), tuple(imgs))
        if not f.relations_hold():
            raise AssertionError("generated images violate the domain relations")
        out.append((P, f))
    return PiecewiseAffineMap(tuple(out), source, target)


def random_coset_list(rng: random.Random, ambient: Subgroup, max_cosets: int = 4, radius: int = 2):
    """Cosets whose subgroups meet ``ambient`` in infinite index."""
    from .covering import CosetList

    carrier = ambient.carrier
    want = rng.randint(1, max_cosets)
    out = []
    while len(out) < want:
        S = random_subgroup(rng, carrier, radius)
        if ambient.index_of(ambient.intersect(S)) is not None:
            continue
        out.append(Coset.make(S, random_element(rng, carrier, radius + 1)))
    return CosetList.of(out, ambient)
