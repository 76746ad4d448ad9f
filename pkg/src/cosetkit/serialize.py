"""Canonical JSON for every engine object.

Integers are written as decimal strings, keys are sorted and the layout is
fixed, so ``dumps(loads(s)) == s`` for anything this module produced.
"""
from __future__ import annotations

import json
from typing import Any

from .decompose import DecompositionCertificate
from .group import Coset, GroupCarrier, GroupElement, Subgroup
from .pwaffine import AffinePiece, PiecewiseAffineMap
from .setalg import (Atom, Diff, Empty, Full, Intersect, LTranslate, OmegaNormalForm,
                     OmegaPiece, RTranslate, SetExpr, Symbol, Union, carrier_of)


def _ints(v):
    return [str(int(x)) for x in v]


def _unints(v):
    return tuple(int(x) for x in v)


def carrier_to_json(c: GroupCarrier) -> dict:
    d = {"kind": c.kind, "n": str(c.n)}
    if c.mask is not None:
        d["mask"] = "".join("1" if m else "0" for m in c.mask)
    return d


def carrier_from_json(d: dict) -> GroupCarrier:
    n = int(d["n"])
    if d["kind"] == "ZN":
        return GroupCarrier.ZN(n)
    if d["kind"] != "ZN_SEMIDIRECT_C2":
        raise ValueError(f"unknown carrier kind {d['kind']!r}")
    mask = d.get("mask")
    return GroupCarrier(n, tuple(ch == "1" for ch in mask) if mask else (True,) * n)


def element_to_json(g: GroupElement) -> dict:
    return {"sign": str(g.sign), "translation": _ints(g.translation)}


def element_from_json(d: dict, c: GroupCarrier) -> GroupElement:
    return c.element(_unints(d["translation"]), int(d["sign"]))


def subgroup_to_json(H: Subgroup) -> dict:
    return {"basis": [_ints(r) for r in H.basis],
            "reflection": None if H.reflection is None else _ints(H.reflection)}


def subgroup_from_json(d: dict, c: GroupCarrier, raw: bool = False) -> Subgroup:
    """``raw`` keeps the stored representation as is, so a checker can judge it."""
    refl = d.get("reflection")
    basis = tuple(_unints(r) for r in d["basis"])
    refl = None if refl is None else _unints(refl)
    if raw:
        return Subgroup(c, basis, refl)
    return Subgroup.make(c, basis, refl)


def coset_to_json(C: Coset) -> dict:
    return {"rep": element_to_json(C.rep), "subgroup": subgroup_to_json(C.subgroup)}


def coset_from_json(d: dict, c: GroupCarrier) -> Coset:
    return Coset.make(subgroup_from_json(d["subgroup"], c), element_from_json(d["rep"], c))


def tree_to_json(e: SetExpr) -> Any:
    if isinstance(e, Atom):
        return {"node": "ATOM", "coset": coset_to_json(e.coset)}
    if isinstance(e, Empty):
        return {"node": "EMPTY"}
    if isinstance(e, Full):
        return {"node": "FULL"}
    if isinstance(e, Union):
        return {"node": "UNION", "items": [tree_to_json(x) for x in e.items]}
    if isinstance(e, Intersect):
        return {"node": "INTERSECT", "items": [tree_to_json(x) for x in e.items]}
    if isinstance(e, Diff):
        return {"node": "DIFF", "left": tree_to_json(e.left), "right": tree_to_json(e.right)}
    if isinstance(e, LTranslate):
        return {"node": "LTRANSLATE", "g": element_to_json(e.g), "expr": tree_to_json(e.expr)}
    if isinstance(e, RTranslate):
        return {"node": "RTRANSLATE", "g": element_to_json(e.g), "expr": tree_to_json(e.expr)}
    if isinstance(e, Symbol):
        return {"node": "SYMBOL", "name": e.name}
    raise TypeError(f"not a set expression: {e!r}")


def tree_from_json(d: Any, c: GroupCarrier) -> SetExpr:
    k = d["node"]
    if k == "ATOM":
        return Atom(coset_from_json(d["coset"], c))
    if k == "EMPTY":
        return Empty(c)
    if k == "FULL":
        return Full(c)
    if k == "UNION":
        return Union(tuple(tree_from_json(x, c) for x in d["items"]))
    if k == "INTERSECT":
        return Intersect(tuple(tree_from_json(x, c) for x in d["items"]))
    if k == "DIFF":
        return Diff(tree_from_json(d["left"], c), tree_from_json(d["right"], c))
    if k == "LTRANSLATE":
        return LTranslate(element_from_json(d["g"], c), tree_from_json(d["expr"], c))
    if k == "RTRANSLATE":
        return RTranslate(tree_from_json(d["expr"], c), element_from_json(d["g"], c))
    if k == "SYMBOL":
        return Symbol(d["name"])
    raise ValueError(f"unknown node {k!r}")


def expr_to_json(e: SetExpr, carrier: GroupCarrier | None = None) -> dict:
    c = carrier or carrier_of(e)
    if c is None:
        raise ValueError("cannot determine the carrier of a bare symbol expression")
    return {"carrier": carrier_to_json(c), "tree": tree_to_json(e)}


def expr_from_json(d: dict) -> SetExpr:
    return tree_from_json(d["tree"], carrier_from_json(d["carrier"]))


def piece_to_json(p: OmegaPiece) -> dict:
    return {"E0": coset_to_json(p.E0), "removals": [coset_to_json(r) for r in p.removals]}


def piece_from_json(d: dict, c: GroupCarrier) -> OmegaPiece:
    return OmegaPiece(coset_from_json(d["E0"], c), tuple(coset_from_json(r, c) for r in d["removals"]))


def normal_form_to_json(nf: OmegaNormalForm) -> dict:
    if nf.carrier is None:
        raise ValueError("normal form without a carrier")
    return {"carrier": carrier_to_json(nf.carrier),
            "family": [subgroup_to_json(H) for H in nf.family],
            "pieces": [piece_to_json(p) for p in nf.pieces]}


def normal_form_from_json(d: dict) -> OmegaNormalForm:
    c = carrier_from_json(d["carrier"])
    return OmegaNormalForm(tuple(piece_from_json(p, c) for p in d["pieces"]),
                           tuple(subgroup_from_json(H, c) for H in d["family"]), c)


def certificate_to_json(cert: DecompositionCertificate) -> dict:
    c = carrier_of(cert.input)
    return {
        "carrier": carrier_to_json(c),
        "engine_version": cert.engine_version,
        "input": expr_to_json(cert.input, c),
        "promotions": [str(k) for k in cert.promotions],
        "reconstruction": expr_to_json(cert.reconstruction, c),
        "subgroups": [subgroup_to_json(H) for H in cert.subgroups],
        "witnesses": [expr_to_json(w, c) for w in cert.witnesses],
    }


def certificate_from_json(d: dict) -> DecompositionCertificate:
    c = carrier_from_json(d["carrier"])
    return DecompositionCertificate(
        input=expr_from_json(d["input"]),
        subgroups=[subgroup_from_json(H, c, raw=True) for H in d["subgroups"]],
        witnesses=[expr_from_json(w) for w in d["witnesses"]],
        reconstruction=expr_from_json(d["reconstruction"]),
        promotions=[int(k) for k in d.get("promotions", [])],
        engine_version=d.get("engine_version", ""),
    )


def affine_to_json(f: AffinePiece) -> dict:
    return {"domain": coset_to_json(f.domain), "g0": element_to_json(f.g0),
            "images": [element_to_json(g) for g in f.images], "s0": element_to_json(f.s0)}


def affine_from_json(d: dict, source: GroupCarrier, target: GroupCarrier) -> AffinePiece:
    return AffinePiece(coset_from_json(d["domain"], source), element_from_json(d["s0"], source),
                       element_from_json(d["g0"], target),
                       tuple(element_from_json(g, target) for g in d["images"]))


def pw_map_to_json(m: PiecewiseAffineMap) -> dict:
    return {"pieces": [{"map": affine_to_json(f), "set": piece_to_json(P)} for P, f in m.pieces],
            "source": carrier_to_json(m.source), "target": carrier_to_json(m.target)}


def pw_map_from_json(d: dict) -> PiecewiseAffineMap:
    s, t = carrier_from_json(d["source"]), carrier_from_json(d["target"])
    return PiecewiseAffineMap(tuple((piece_from_json(p["set"], s), affine_from_json(p["map"], s, t))
                                    for p in d["pieces"]), s, t)


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def loads(s: str) -> dict:
    return json.loads(s)
