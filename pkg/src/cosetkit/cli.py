"""Command-line runner for cosetkit scripts."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, TextIO

from . import dsl
from . import serialize as ser
from .decompose import check_certificate, decompose
from .errors import CosetkitError
from .group import Coset, GroupCarrier, Subgroup
from .oracle import Window, compare_on_window
from .pwaffine import AffinePiece, PiecewiseAffineMap, Product, graph_of, pw_affine_from_graph
from .setalg import (Atom, Diff, Empty, Full, Intersect, LTranslate, RTranslate,
                     SetExpr, Union, eval_membership, is_empty, sets_equal, to_omega_normal_form)

DEFAULT_RADIUS = 20
ENV_RADIUS = "COSETKIT_WINDOW_RADIUS"


@dataclass
class Options:
    format: str = "text"
    window_radius: int = DEFAULT_RADIUS
    out_dir: Path = field(default_factory=lambda: Path("."))


class VerificationFailure(Exception):
    pass


@dataclass
class _Env:
    groups: dict = field(default_factory=dict)     # name -> GroupCarrier
    products: dict = field(default_factory=dict)   # name -> (source name, target name)
    subgroups: dict = field(default_factory=dict)  # name -> (group name, Subgroup)
    cosets: dict = field(default_factory=dict)     # name -> (group name, Coset)
    sets: dict = field(default_factory=dict)       # name -> (group name, SetExpr)
    maps: dict = field(default_factory=dict)       # name -> PiecewiseAffineMap


class Runner:
    def __init__(self, opts: Options, out: TextIO):
        self.opts = opts
        self.out = out
        self.env = _Env()

    # helpers ------------------------------------------------------------

    def emit(self, command: str, text: str, data: dict):
        if self.opts.format == "json":
            payload = dict(data)
            payload["command"] = command
            self.out.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
        else:
            self.out.write(text + "\n")

    def group(self, name, node) -> GroupCarrier:
        if name not in self.env.groups:
            raise dsl.SemanticError(f"unknown group {name!r}", node.line, node.col)
        return self.env.groups[name]

    def element(self, carrier: GroupCarrier, v: dsl.Vec, node):
        if len(v.values) != carrier.n:
            raise dsl.SemanticError(f"vector {dsl.fmt_vec(v)} needs {carrier.n} entries", node.line, node.col)
        sign = v.sign or 1
        if sign == -1 and not carrier.is_semidirect:
            raise dsl.SemanticError("sign -1 needs a semidirect group", node.line, node.col)
        return carrier.element(v.values, sign)

    def lookup_set(self, name, node):
        """Sets, cosets and subgroups may all be named by commands."""
        if name in self.env.sets:
            return self.env.sets[name]
        if name in self.env.cosets or name in self.env.subgroups:
            return self.expr(dsl.Name(name), node)
        raise dsl.SemanticError(f"unknown set {name!r}", node.line, node.col)

    def expr(self, e, node) -> tuple[Optional[str], SetExpr]:
        """Resolve a syntactic expression; returns (group name, expression)."""
        if isinstance(e, dsl.Name):
            for table in (self.env.sets, self.env.cosets, self.env.subgroups):
                if e.name in table:
                    g, obj = table[e.name]
                    if isinstance(obj, Subgroup):
                        return g, Atom(Coset.of(obj))
                    if isinstance(obj, Coset):
                        return g, Atom(obj)
                    return g, obj
            raise dsl.SemanticError(f"unknown name {e.name!r}", e.line or node.line, e.col or node.col)
        if isinstance(e, dsl.Const):
            if e.group is not None:
                self.group(e.group, node)
            return e.group, e
        if isinstance(e, dsl.BinOp):
            gl, a = self.expr(e.left, node)
            gr, b = self.expr(e.right, node)
            g = self._same(gl, gr, node)
            return g, (a, b, e.op)
        if isinstance(e, dsl.Translate):
            g, inner = self.expr(e.expr, node)
            return g, (e.side, e.vec, inner)
        raise TypeError(e)

    def _same(self, a, b, node):
        if a is not None and b is not None and a != b:
            raise dsl.SemanticError(f"expression mixes groups {a!r} and {b!r}", node.line, node.col)
        return a if a is not None else b

    def build(self, e, node, carrier_hint: Optional[str] = None) -> tuple[str, SetExpr]:
        g, raw = self.expr(e, node)
        g = g or carrier_hint
        if g is None:
            raise dsl.SemanticError("cannot tell which group the expression lives in", node.line, node.col)
        C = self.env.groups[g]

        def go(x):
            if isinstance(x, SetExpr):
                return x
            if isinstance(x, dsl.Const):
                return Empty(C) if x.which == "empty" else Full(C)
            if len(x) == 3 and isinstance(x[2], str) and x[2] in ("|", "&", "\\"):
                a, b = go(x[0]), go(x[1])
                if x[2] == "|":
                    return Union((a, b))
                if x[2] == "&":
                    return Intersect((a, b))
                return Diff(a, b)
            side, vec, inner = x
            el = self.element(C, vec, node)
            return LTranslate(el, go(inner)) if side == "left" else RTranslate(go(inner), el)

        return g, go(raw)

    # statements ---------------------------------------------------------

    def run(self, stmts) -> int:
        status = 0
        for s in stmts:
            try:
                self.execute(s)
            except VerificationFailure as exc:
                self.emit("error", f"{s.line}:{s.col}: verification failed: {exc}",
                          {"error": str(exc), "line": s.line, "col": s.col, "status": 1})
                status = 1
            except CosetkitError as exc:
                raise dsl.SemanticError(f"{type(exc).__name__}: {exc}", s.line, s.col) from exc
            except ValueError as exc:
                raise dsl.SemanticError(str(exc), s.line, s.col) from exc
        return status

    def _declare(self, name, s):
        for table in (self.env.groups, self.env.subgroups, self.env.cosets, self.env.sets, self.env.maps):
            if name in table:
                raise dsl.SemanticError(f"{name!r} is already declared", s.line, s.col)

    def execute(self, s):
        if isinstance(s, dsl.GroupDecl):
            self._declare(s.name, s)
            self.env.groups[s.name] = GroupCarrier.ZN(s.n) if s.kind == "Z" else GroupCarrier.ZN_SEMIDIRECT_C2(s.n)
        elif isinstance(s, dsl.ProductDecl):
            self._declare(s.name, s)
            P = Product(self.group(s.left, s), self.group(s.right, s))
            self.env.groups[s.name] = P.carrier
            self.env.products[s.name] = (s.left, s.right)
        elif isinstance(s, dsl.SubgroupDecl):
            self._declare(s.name, s)
            C = self.group(s.group, s)
            for r in s.rows:
                if len(r) != C.n:
                    raise dsl.SemanticError(f"row {list(r)} needs {C.n} entries", s.line, s.col)
            if s.refl is not None and len(s.refl) != C.n:
                raise dsl.SemanticError(f"reflection needs {C.n} entries", s.line, s.col)
            self.env.subgroups[s.name] = (s.group, Subgroup.make(C, s.rows, s.refl))
        elif isinstance(s, dsl.CosetDecl):
            self._declare(s.name, s)
            if s.subgroup not in self.env.subgroups:
                raise dsl.SemanticError(f"unknown subgroup {s.subgroup!r}", s.line, s.col)
            g, H = self.env.subgroups[s.subgroup]
            self.env.cosets[s.name] = (g, Coset.make(H, self.element(H.carrier, s.rep, s)))
        elif isinstance(s, dsl.SetDecl):
            self._declare(s.name, s)
            self.env.sets[s.name] = self.build(s.expr, s)
        elif isinstance(s, dsl.MapDecl):
            self._declare(s.name, s)
            self.env.maps[s.name] = self.make_map(s)
        elif isinstance(s, dsl.Command):
            getattr(self, "cmd_" + s.name)(s, *s.args)
        else:
            raise TypeError(s)

    def make_map(self, s: dsl.MapDecl) -> PiecewiseAffineMap:
        H, G = self.group(s.source, s), self.group(s.target, s)
        Kfull = Subgroup.full(H)
        pieces = []
        for p in s.pieces:
            _, dom = self.build(p.domain, s, s.source)
            if len(p.rows) != G.n or any(len(r) != H.n for r in p.rows):
                raise dsl.SemanticError(f"matrix must be {G.n} x {H.n}", s.line, s.col)
            images = [G.element(tuple(p.rows[i][j] for i in range(G.n))) for j in range(H.n)]
            if H.is_semidirect:
                if p.refl is None:
                    raise dsl.SemanticError("a semidirect source needs a 'refl' image", s.line, s.col)
                images.append(self.element(G, p.refl, s))
            elif p.refl is not None:
                raise dsl.SemanticError("'refl' only applies to semidirect sources", s.line, s.col)
            f = AffinePiece(Coset.of(Kfull), H.identity, self.element(G, p.offset, s), tuple(images))
            if not f.relations_hold():
                raise dsl.SemanticError("piece rule is not a homomorphism plus offset", s.line, s.col)
            for op in to_omega_normal_form(dom).pieces:
                pieces.append((op, f))
        return PiecewiseAffineMap(tuple(pieces), H, G)

    # commands -----------------------------------------------------------

    def cmd_normalize(self, s, name):
        g, e = self.lookup_set(name, s)
        nf = to_omega_normal_form(e)
        lines = [f"{name}: {len(nf.pieces)} piece(s)"]
        for p in nf.pieces:
            rem = ", ".join(str(r) for r in p.removals)
            lines.append(f"  {p.E0}" + (f" minus {{{rem}}}" if rem else ""))
        self.emit("normalize", "\n".join(lines), {"set": name, "normal_form": ser.normal_form_to_json(nf)})

    def cmd_decompose(self, s, name):
        g, e = self.lookup_set(name, s)
        cert = decompose(e)
        res = check_certificate(cert)
        text = ser.dumps(ser.certificate_to_json(cert))
        self.opts.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.opts.out_dir / f"{name}.cert.json"
        path.write_text(text)
        subs = ", ".join(f"{H} [index {k} over base]" for H, k in zip(cert.subgroups, cert.promotions))
        self.emit("decompose", f"{name}: {len(cert.subgroups)} subgroup(s): {subs}; check {'ok' if res else 'FAILED'}"
                  f"; wrote {path.name}",
                  {"set": name, "file": path.name, "subgroups": [ser.subgroup_to_json(H) for H in cert.subgroups],
                   "check": bool(res)})
        if not res:
            raise VerificationFailure(res.reason)

    def cmd_check(self, s, name):
        g, e = self.lookup_set(name, s)
        path = self.opts.out_dir / f"{name}.cert.json"
        if not path.exists():
            raise dsl.SemanticError(f"no certificate file {path.name}", s.line, s.col)
        cert = ser.certificate_from_json(ser.loads(path.read_text()))
        res = check_certificate(cert)
        if res and not sets_equal(cert.input, e):
            res = type(res)(False, "certificate is for a different set")
        self.emit("check", f"{name}: {'ok' if res else 'FAILED: ' + res.reason}",
                  {"set": name, "ok": bool(res), "reason": res.reason})
        if not res:
            raise VerificationFailure(res.reason)

    def cmd_member(self, s, name, vec):
        g, e = self.lookup_set(name, s)
        el = self.element(self.env.groups[g], vec, s)
        r = eval_membership(e, el)
        self.emit("member", f"{dsl.fmt_vec(vec)} in {name}: {str(r).lower()}",
                  {"set": name, "element": ser.element_to_json(el), "member": r})

    def cmd_equal(self, s, a, b):
        ga, ea = self.lookup_set(a, s)
        gb, eb = self.lookup_set(b, s)
        self._same(ga, gb, s)
        r = sets_equal(ea, eb)
        self.emit("equal", f"{a} == {b}: {str(r).lower()}", {"left": a, "right": b, "equal": r})

    def cmd_empty(self, s, name):
        g, e = self.lookup_set(name, s)
        r = is_empty(e)
        self.emit("empty", f"{name} empty: {str(r).lower()}", {"set": name, "empty": r})

    def cmd_graph(self, s, name):
        if name not in self.env.maps:
            raise dsl.SemanticError(f"unknown map {name!r}", s.line, s.col)
        m = self.env.maps[name]
        gname = f"{name}_graph"
        self._declare(gname, s)
        prod = None
        for pname, pair in self.env.products.items():
            if self.env.groups[pair[0]] == m.source and self.env.groups[pair[1]] == m.target:
                prod = pname
                break
        if prod is None:
            prod = f"{name}_product"
            self._declare(prod, s)
            self.env.groups[prod] = Product(m.source, m.target).carrier
            src = next(k for k, v in self.env.groups.items() if v == m.source)
            dst = next(k for k, v in self.env.groups.items() if v == m.target)
            self.env.products[prod] = (src, dst)
        G = graph_of(m)
        self.env.sets[gname] = (prod, G)
        nf = to_omega_normal_form(G)
        self.emit("graph", f"{gname} in {prod}: {len(nf.pieces)} piece(s)",
                  {"map": name, "set": gname, "graph": ser.expr_to_json(G, self.env.groups[prod])})

    def cmd_ungraph(self, s, name):
        g, e = self.lookup_set(name, s)
        if g not in self.env.products:
            raise dsl.SemanticError(f"set {name!r} does not live in a product group", s.line, s.col)
        src, dst = self.env.products[g]
        m = pw_affine_from_graph(e, self.env.groups[src], self.env.groups[dst])
        lines = [f"{name}: {len(m.pieces)} affine piece(s)"]
        for P, f in m.pieces:
            imgs = ", ".join(str(x) for x in f.images)
            lines.append(f"  on {P.E0}: {f.s0} -> {f.g0}, generators -> [{imgs}]")
        self.emit("ungraph", "\n".join(lines), {"set": name, "map": ser.pw_map_to_json(m)})

    def cmd_compare(self, s, a, b, radius):
        ga, ea = self.lookup_set(a, s)
        gb, eb = self.lookup_set(b, s)
        g = self._same(ga, gb, s)
        r = self.opts.window_radius if radius is None else radius
        w = Window(self.env.groups[g], r)
        bad = compare_on_window(ea, eb, w)
        text = f"{a} vs {b} on radius {r}: " + ("agree" if bad is None else f"differ at {bad}")
        self.emit("compare", text, {"left": a, "right": b, "radius": str(r),
                                    "counterexample": None if bad is None else ser.element_to_json(bad)})


def run_script(source: str, options: Optional[Options] = None, out: Optional[TextIO] = None,
               err: Optional[TextIO] = None) -> int:
    opts = options or Options()
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        stmts = dsl.parse(source)
        return Runner(opts, out).run(stmts)
    except dsl.ScriptError as exc:
        err.write(f"error: {exc}\n")
        return 2


def _radius_default() -> int:
    v = os.environ.get(ENV_RADIUS)
    if v is None:
        return DEFAULT_RADIUS
    try:
        return int(v)
    except ValueError:
        return DEFAULT_RADIUS


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="cosetkit", description="Exact computation with coset expressions.")
    ap.add_argument("script", nargs="?", help="script file, '-' for stdin")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--window-radius", type=int, default=None)
    ap.add_argument("--out-dir", default=".")
    ap.add_argument("--check", metavar="FILE", help="verify a certificate file and exit")
    args = ap.parse_args(argv)
    radius = args.window_radius if args.window_radius is not None else _radius_default()
    opts = Options(args.format, radius, Path(args.out_dir))

    if args.check:
        try:
            cert = ser.certificate_from_json(ser.loads(Path(args.check).read_text()))
        except (OSError, ValueError, KeyError, TypeError, CosetkitError) as exc:
            sys.stderr.write(f"error: cannot load {args.check}: {exc}\n")
            return 2
        res = check_certificate(cert)
        if args.format == "json":
            print(json.dumps({"file": args.check, "ok": bool(res), "reason": res.reason}, sort_keys=True))
        else:
            print(f"{args.check}: {'ok' if res else 'FAILED: ' + res.reason}")
        return 0 if res else 1
    if args.script is None:
        ap.error("a script file or --check FILE is required")
    if args.script == "-":
        source = sys.stdin.read()
    else:
        try:
            source = Path(args.script).read_text(encoding="utf-8")
        except OSError as exc:
            sys.stderr.write(f"error: {exc}\n")
            return 2
    return run_script(source, opts)


if __name__ == "__main__":
    sys.exit(main())
