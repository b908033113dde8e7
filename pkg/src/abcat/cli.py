"""Command-line entry point: ``abcat SPEC [global flags] <subcommand> [options]``.

Exit codes: 0 pass, 1 fail, 2 input or usage error, 3 inconclusive (cutoff reached).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import ab, singeq
from .ab import SubcatSpec, subcat
from .arquiver import ar_quiver, category_quiver
from .dot import emit_dot
from .io import make_report, parse_spec, render_text, write_report
from .linalg import InputError
from .lincat import (full_subcategory, functor_module, homological_report, make_category, minimal_resolution,
                     quotient_by, witness_of)
from .modules import ext_dim, hom_space
from .nakayama import enumerate_indecomposables

EXIT = {"pass": 0, "info": 0, "fail": 1, "inconclusive": 3}


def _labels(text: Optional[str]) -> list:
    if not text:
        return []
    return [s.strip() for s in text.split(",") if s.strip()]


class Session:
    def __init__(self, args):
        self.args = args
        self.spec = parse_spec(args.spec)
        self.alg = self.spec.build(args.field)
        explicit = self.spec.universe(self.alg)
        self.complete = explicit is None
        self.mods = explicit if explicit is not None else enumerate_indecomposables(self.alg)
        self.by = {M.label: M for M in self.mods}

    def module(self, label: str):
        if label not in self.by:
            raise InputError(f"unknown module label {label!r}; known: {', '.join(self.by)}")
        return self.by[label]

    def sub(self, labels: Sequence[str], name: str) -> SubcatSpec:
        return subcat(self.mods, labels, name)

    @property
    def universe(self):
        return None if self.complete else self.mods


def cmd_indec(s: Session, a):
    rows = [{"label": M.label, "dims": list(M.dims), "dim": M.dim} for M in s.mods]
    return "info", {"algebra": repr(s.alg), "count": len(rows), "modules": rows}


def cmd_hom(s: Session, a):
    M, N = s.module(a.source), s.module(a.target)
    return "info", {"source": M.label, "target": N.label, "dim": hom_space(M, N).dim}


def cmd_ext(s: Session, a):
    M, N = s.module(a.source), s.module(a.target)
    return "info", {"source": M.label, "target": N.label,
                    "ext": {str(i): ext_dim(i, M, N) for i in range(1, a.degree + 1)}}


def _category(s: Session, objects: list, by: list, name: str):
    A = make_category(s.alg, s.mods, name="mod")
    C = full_subcategory(A, objects, name=name) if objects else A
    return quotient_by(C, by, name=name) if by else C


def cmd_ar_quiver(s: Session, a):
    if a.by or a.objects:
        cat = _category(s, _labels(a.objects), _labels(a.by), a.name or "quotient")
        q = category_quiver(cat, a.name or "quotient")
    else:
        q = ar_quiver(s.alg, None if s.complete else s.mods, a.name or "mod")
    if a.dot:
        text = emit_dot(q)
        if a.dot == "-":
            sys.stdout.write(text)
        else:
            with open(a.dot, "w", encoding="utf-8") as fh:
                fh.write(text)
    return "info", q.to_json()


def cmd_cotilting(s: Session, a):
    T = s.sub(_labels(a.T), "T")
    rep = ab.cotilting_check(s.alg, T, s.mods, a.cutoff)
    return ("pass" if rep.ok else "fail"), rep.to_json()


def cmd_perp(s: Session, a):
    T = s.sub(_labels(a.T), "T")
    X = ab.perp(s.alg, T, s.mods, a.bound, a.cutoff)
    return "info", {"T": T.labels, "perp": X.labels}


def cmd_quotient(s: Session, a):
    cat = _category(s, _labels(a.objects), _labels(a.by), "quotient")
    labs = cat.labels
    rep = homological_report(cat, a.cutoff)
    out = {"objects": labs, "hom_dims": [[cat.hom_dim(x, y) for y in labs] for x in labs],
           "gamma_dim": cat.category_algebra().dim, "gd": rep["gd"], "ig": rep["ig"],
           "id_projectives": rep["id_projectives"], "pd_injectives": rep["pd_injectives"]}
    w = witness_of(rep)
    if w is not None:
        out["witness"] = {"kind": w[0], "object": w[1], "period": list(w[2].period)}
    verdict = "inconclusive" if "unknown" in (rep["gd"], rep["id_projectives"], rep["pd_injectives"]) else "info"
    return verdict, out


def cmd_resolve(s: Session, a):
    if ":" not in a.functor:
        raise InputError("--functor expects KIND:LABEL, e.g. injective:[1]_3")
    kind, lab = a.functor.split(":", 1)
    cat = _category(s, _labels(a.objects), _labels(a.modulo), "category")
    F = functor_module(cat, kind, lab)
    tr = minimal_resolution(F, a.cutoff, a.min_terms)
    out = tr.to_json()
    out.update({"functor": a.functor, "objects": cat.labels, "pd": tr.pd})
    return ("inconclusive" if tr.status == "truncated" else "info"), out


def cmd_check_ab(s: Session, a):
    A = s.sub(_labels(a.A), "A") if a.A else SubcatSpec(list(s.mods), "mod", complete=s.complete)
    X, w = s.sub(_labels(a.X), "X"), s.sub(_labels(a.omega), "omega")
    rep = ab.check_conditions(A, X, w, a.ext_bound, cutoff=a.cutoff)
    return ("pass" if rep.ok else "fail"), rep.to_json()


def cmd_singeq(s: Session, a):
    c = singeq.singular_equivalence_certificate(s.alg, _labels(a.T), s.universe, a.cutoff)
    return c.verdict, c.to_json()


def cmd_bounds(s: Session, a):
    c = singeq.dimension_bounds_check(s.alg, _labels(a.T), s.universe, a.cutoff)
    return c.verdict, c.to_json()


def cmd_ar_duality(s: Session, a):
    c = singeq.ar_duality_check(s.alg, s.universe, a.jobs)
    return c.verdict, c.to_json()


def _family_n(spec) -> Optional[int]:
    if spec.kind != "nakayama" or spec.shape != "cyclic" or len(spec.kupisch) != 2:
        return None
    p, q = spec.kupisch
    if p % 2 == 1 and q == p + 1 and p >= 3:
        return (p - 1) // 2
    return None


def cmd_family(s: Session, a):
    derived = _family_n(s.spec)
    n = a.n if a.n is not None else derived
    if n is None:
        raise InputError("the input is not a cyclic Nakayama algebra with kupisch [2n+1, 2n+2]; pass --n")
    if derived is not None and a.n is not None and derived != a.n:
        raise InputError(f"the input describes n = {derived} but --n {a.n} was given")
    c = singeq.family_report(n, a.cutoff)
    return c.verdict, c.to_json()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", default=argparse.SUPPRESS,
                        help="write the structured report here ('-' for stdout)")
    common.add_argument("--cutoff", type=int, default=argparse.SUPPRESS, help="resolution length cutoff")
    common.add_argument("--field", default=argparse.SUPPRESS, help="override the field: Q or Fp:<p>")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes")

    p = argparse.ArgumentParser(prog="abcat", parents=[common],
                                description="Exact approximation theory and functor-category computations.")
    p.add_argument("spec", help="algebra spec file (TOML)")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_, aliases=()):
        sp = sub.add_parser(name, parents=[common], help=help_, aliases=list(aliases))
        sp.set_defaults(fn=fn, canonical=name)
        return sp

    add("indec", cmd_indec, "list indecomposable modules")
    sp = add("hom", cmd_hom, "dimension of Hom(M, N)")
    sp.add_argument("source")
    sp.add_argument("target")
    sp = add("ext", cmd_ext, "dimensions of Ext^i(M, N)")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--degree", type=int, default=1)
    sp = add("ar-quiver", cmd_ar_quiver, "Auslander-Reiten quiver (or quiver of a quotient category)")
    sp.add_argument("--dot", metavar="PATH")
    sp.add_argument("--by", help="quotient by these objects")
    sp.add_argument("--objects", help="restrict to these objects")
    sp.add_argument("--name", default="")
    sp = add("cotilting", cmd_cotilting, "check that add T is cotilting")
    sp.add_argument("--T", required=True)
    sp = add("perp", cmd_perp, "left Ext-perpendicular category of T")
    sp.add_argument("--T", required=True)
    sp.add_argument("--bound", type=int)
    sp = add("quotient", cmd_quotient, "quotient category and its homological data")
    sp.add_argument("--by", required=True)
    sp.add_argument("--objects")
    sp = add("resolve", cmd_resolve, "minimal projective resolution of a functor")
    sp.add_argument("--functor", required=True, help="KIND:LABEL (representable, simple, injective, hom, ext)")
    sp.add_argument("--objects")
    sp.add_argument("--modulo")
    sp.add_argument("--min-terms", type=int, default=0)
    sp = add("check-ab", cmd_check_ab, "approximation conditions on A ⊇ X ⊇ omega")
    sp.add_argument("--X", required=True)
    sp.add_argument("--omega", required=True)
    sp.add_argument("--A")
    sp.add_argument("--ext-bound", type=int)
    sp = add("singeq", cmd_singeq, "cotilting pipeline certificate")
    sp.add_argument("--T", required=True)
    sp = add("thm41", cmd_bounds, "dimension bounds for the quotient of perp T", aliases=["dim-bounds"])
    sp.add_argument("--T", required=True)
    add("ar-duality", cmd_ar_duality, "Ext / stable Hom dimension identities")
    sp = add("paper-example", cmd_family, "the two-vertex Nakayama family", aliases=["family"])
    sp.add_argument("--n", type=int)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, default in (("json", None), ("cutoff", 200), ("field", None), ("jobs", 1)):
        if not hasattr(args, key):
            setattr(args, key, default)
    if args.cutoff < 1 or args.jobs < 1:
        print("abcat: --cutoff and --jobs must be positive", file=sys.stderr)
        return 2
    try:
        s = Session(args)
        verdict, result = args.fn(s, args)
    except InputError as exc:
        print(f"abcat: error: {exc}", file=sys.stderr)
        return 2
    params = {"spec": s.spec.kind, "field": s.alg.field.name, "cutoff": args.cutoff}
    report = make_report(args.canonical, verdict, result, params)
    if args.json:
        write_report(args.json, report)
    if args.json != "-":
        print(f"{args.canonical}: {verdict}")
        print(render_text(report["result"]))
    return EXIT[verdict]


if __name__ == "__main__":
    sys.exit(main())
