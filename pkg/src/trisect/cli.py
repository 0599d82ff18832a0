"""Command-line interface: validate, catalog, eval, moves, axioms, selftest.

Exit codes: 0 success, 1 domain error, 2 usage error.  ``--json`` output is
deterministic (no timings, sorted keys) so identical invocations produce
byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import acceptance, bracket, diagram, hopf, labelcount, moves
from .errors import TrisectError
from .groups import coset_gset, gset_from_json, parse_group, point_gset, regular_gset
from .scalars import Cyc, render, to_complex


def _load_diagram(arg: str, embedded: bool = False):
    """Resolve a catalog name or file path; prefer embedding data when asked."""
    if embedded and arg in diagram.CATALOG_EMBEDDED:
        return diagram.CATALOG_EMBEDDED[arg]()
    if arg in diagram.CATALOG:
        return diagram.CATALOG[arg]()
    if arg in diagram.CATALOG_EMBEDDED:
        return diagram.CATALOG_EMBEDDED[arg]()
    path = Path(arg)
    if not path.exists():
        raise TrisectError(f"no catalog entry or file named {arg!r}")
    return diagram.parse(path.read_text())


def _base(d):
    return d.base if isinstance(d, diagram.EmbeddedDiagram) else d


def parse_triplet(spec: str, backend: str = "exact") -> hopf.HopfTriplet:
    if spec.startswith("kashaev:"):
        params = dict(p.split("=", 1) for p in spec[len("kashaev:"):].split(","))
        t = hopf.kashaev_triplet(int(params["n"]))
    elif spec.startswith("group:"):
        params = dict(p.split("=", 1) for p in spec[len("group:"):].split(","))
        t = hopf.group_triplet(parse_group(params["C"]), parse_group(params["B"]))
    elif spec.startswith("weak:"):
        params = dict(p.split("=", 1) for p in spec[len("weak:"):].split(";"))
        c = parse_group(params["C"])
        b = parse_group(params["B"])
        cfg = labelcount.WeakConfig(c, b, _parse_gset(params.get("M", "point"), c, b))
        t = hopf.weak_triplet(c, b, cfg.mset)
    elif spec.startswith("file:"):
        data = json.loads(Path(spec[len("file:"):]).read_text())
        t = _triplet_from_json(data)
    else:
        raise TrisectError(f"unknown triplet spec {spec!r}; use kashaev:n=3, group:C=Z/2,B=Z/3, or file:PATH")
    if backend == "float":
        t = _float_triplet(t)
    return t


def _triplet_from_json(data: dict) -> hopf.HopfTriplet:
    algebras = {k: hopf.algebra_from_json(data[k], name=k) for k in ("A", "B", "C")}

    def mat(key, rows_alg, cols_alg):
        out = {}
        for i, row in enumerate(data[key]):
            for j, v in enumerate(row):
                s = hopf._parse_scalar(v)
                if not hopf.is_zero(s):
                    out[(i, j)] = s
        return out

    return hopf.HopfTriplet(
        data.get("name", "file"),
        algebras["A"],
        algebras["B"],
        algebras["C"],
        mat("tau_AB", "A", "B"),
        mat("tau_BC", "B", "C"),
        mat("tau_CA", "C", "A"),
        allow_weak=any(a.weak for a in algebras.values()),
    )


def _float_vec(v):
    return {k: to_complex(x) for k, x in v.items()}


def _float_algebra(h: hopf.HopfAlgebra) -> hopf.HopfAlgebra:
    return hopf.HopfAlgebra(
        h.name,
        h.basis,
        {k: _float_vec(v) for k, v in h.mult.items()},
        _float_vec(h.unit),
        {i: {jk: to_complex(c) for jk, c in row.items()} for i, row in h.comult.items()},
        _float_vec(h.counit),
        {i: _float_vec(v) for i, v in h.antipode.items()},
        h.weak,
        h.dual_irreps,
    )


def _float_triplet(t: hopf.HopfTriplet) -> hopf.HopfTriplet:
    return hopf.HopfTriplet(
        t.name + " (float)",
        _float_algebra(t.A),
        _float_algebra(t.B),
        _float_algebra(t.C),
        {k: to_complex(v) for k, v in t.tau_AB.items()},
        {k: to_complex(v) for k, v in t.tau_BC.items()},
        {k: to_complex(v) for k, v in t.tau_CA.items()},
        t.allow_weak,
        None if t.default_integrals is None else {s: _float_vec(v) for s, v in t.default_integrals.items()},
    )


def _parse_gset(spec: str, c_group, b_group):
    from .groups import opposite, product

    k = product(c_group, opposite(b_group), name=f"{c_group.name}x{b_group.name}^op")
    if spec == "point":
        return point_gset(k)
    if spec == "regular":
        return regular_gset(k)
    if spec.startswith("cosets:"):
        names = [s.strip() for s in spec[len("cosets:"):].split("|")]
        idx = {lab: i for i, lab in enumerate(k.labels)}
        try:
            gens = [idx[n] for n in names]
        except KeyError as exc:
            raise TrisectError(f"unknown element {exc.args[0]!r} of {k.name}; labels are {list(k.labels)}")
        return coset_gset(k, gens)
    path = Path(spec)
    if path.exists():
        return gset_from_json(k, json.loads(path.read_text()))
    raise TrisectError(f"unknown G-set spec {spec!r}; use point, regular, cosets:(c,b)|..., or a file path")


def _scalar_json(x):
    z = to_complex(x)
    out = {"approx": [z.real, z.imag]}
    if isinstance(x, Cyc):
        out["level"] = x.level
        out["coords"] = [str(c) for c in x.coords]
    return out


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="trisect", description="trisection diagram invariants")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="check diagram invariants")
    p.add_argument("diagram")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("catalog", help="list or emit built-in diagrams")
    p.add_argument("name", nargs="?")

    p = sub.add_parser("eval", help="evaluate an invariant")
    ev = p.add_subparsers(dest="what", required=True)
    for what in ("bracket", "invariant"):
        q = ev.add_parser(what)
        q.add_argument("diagram")
        q.add_argument("--triplet", required=True)
        q.add_argument("--backend", choices=("exact", "float"), default="exact")
        q.add_argument("--evaluator", choices=("element", "rep"), default="element")
        q.add_argument("--cap", type=int, default=10_000_000)
        q.add_argument("--tol", type=float, default=1e-9)
        if what == "invariant":
            q.add_argument("--all-roots", action="store_true")
    q = ev.add_parser("count")
    q.add_argument("diagram")
    q.add_argument("--C", required=True)
    q.add_argument("--B", required=True)
    q.add_argument("--M", default="point")
    q.add_argument("--boundary", type=int, default=None)

    p = sub.add_parser("moves", help="apply a list of moves")
    mv = p.add_subparsers(dest="what", required=True)
    q = mv.add_parser("apply")
    q.add_argument("diagram")
    q.add_argument("--moves", required=True, help="JSON file with a list of move specs")
    q.add_argument("--out", default=None)

    p = sub.add_parser("axioms", help="check Hopf axioms of an algebra")
    p.add_argument("--algebra", required=True,
                   help="group:G, fun:G, double:kashaev:n=N, weak:C=G;B=G[;M=SPEC], or file:PATH")

    p = sub.add_parser("crosscheck", help="element vs representation backend")
    p.add_argument("diagram")
    p.add_argument("--triplet", required=True)
    p.add_argument("--backend", choices=("exact", "float"), default="exact")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--cap", type=int, default=10_000_000)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")

    args = ap.parse_args(argv)
    try:
        return _dispatch(args)
    except TrisectError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.cmd == "validate":
        d = _load_diagram(args.diagram)
        if isinstance(d, diagram.EmbeddedDiagram):
            rep = diagram.validate_embedded(d, strict=args.strict)
        else:
            rep = diagram.validate(d, strict=args.strict)
        payload = {
            "ok": rep.ok,
            "violations": [{"code": v.code, "message": v.message, "where": v.where} for v in rep.violations],
        }
        _emit(args, payload, str(rep))
        return 0 if rep.ok else 1

    if args.cmd == "catalog":
        if args.name is None:
            names = sorted(set(diagram.CATALOG) | set(diagram.CATALOG_EMBEDDED))
            _emit(args, {"catalog": names}, "\n".join(names))
            return 0
        d = _load_diagram(args.name, embedded=args.name in diagram.CATALOG_EMBEDDED)
        text = diagram.serialize(d)
        if args.json:
            print(json.dumps(json.loads(text), sort_keys=True))
        else:
            print(text, end="")
        return 0

    if args.cmd == "eval":
        return _dispatch_eval(args)

    if args.cmd == "moves":
        d = _load_diagram(args.diagram)
        specs = json.loads(Path(args.moves).read_text())
        if not isinstance(specs, list):
            raise TrisectError("the moves file must contain a JSON list")
        base = _base(d)
        for entry in specs:
            base = moves.apply_move(base, moves.MoveSpec.from_json(entry))
        out = diagram.serialize(base)
        if args.out:
            Path(args.out).write_text(out)
            _emit(args, {"written": args.out, "genus": base.genus}, f"wrote {args.out} (genus {base.genus})")
        elif args.json:
            print(json.dumps(json.loads(out), sort_keys=True))
        else:
            print(out, end="")
        return 0

    if args.cmd == "axioms":
        return _dispatch_axioms(args)

    if args.cmd == "crosscheck":
        t = parse_triplet(args.triplet, args.backend)
        d = _base(_load_diagram(args.diagram))
        rep = bracket.cross_check(d, bracket.BracketConfig(t, contraction_cap=args.cap), tol=args.tol)
        _emit(args, {"ok": rep.ok, "details": rep.details}, str(rep))
        return 0 if rep.ok else 1

    if args.cmd == "selftest":
        only = None if args.only is None else {int(x) for x in args.only.split(",")}
        results = acceptance.run_all(only)
        ok = all(r.ok for r in results)
        if args.json:
            payload = [
                {"criterion": r.number, "name": r.name, "ok": r.ok, "detail": r.detail}
                for r in results
            ]
            print(json.dumps(payload, sort_keys=True))
        else:
            for r in results:
                print(r.line())
            print("selftest:", "PASS" if ok else "FAIL")
        return 0 if ok else 1

    raise TrisectError(f"unhandled command {args.cmd!r}")


def _dispatch_eval(args) -> int:
    if args.what == "count":
        e = _load_diagram(args.diagram, embedded=True)
        c_group, b_group = parse_group(args.C), parse_group(args.B)
        cfg = labelcount.WeakConfig(c_group, b_group, _parse_gset(args.M, c_group, b_group))
        if isinstance(e, diagram.EmbeddedDiagram):
            if e.base.kind == "disc":
                count = labelcount.count_admissible(e, cfg, boundary_label=args.boundary or 0)
            else:
                count = labelcount.count_admissible(e, cfg)
            genus = e.base.genus
        else:
            count = cfg.msize * labelcount.count_curve_labellings(e, cfg)
            genus = e.genus
        inv = labelcount.group_count_invariant(_base(e), cfg)
        payload = {
            "count": count,
            "invariant": _scalar_json(inv.approx()),
            "genus": genus,
        }
        _emit(args, payload, f"l={count}, invariant={inv.approx():.10g}")
        return 0

    t = parse_triplet(args.triplet, args.backend)
    d = _base(_load_diagram(args.diagram))
    cfg = bracket.BracketConfig(t, evaluator=args.evaluator, contraction_cap=args.cap)
    if args.what == "bracket":
        val = bracket.trisection_bracket(d, cfg)
        _emit(args, {"bracket": _scalar_json(val)}, f"bracket = {render(val)}")
        return 0
    inv = bracket.invariant(d, cfg)
    payload = {
        "coeff": _scalar_json(inv.coeff),
        "stab_bracket": _scalar_json(inv.base),
        "genus": inv.genus,
        "value": _scalar_json(inv.approx()),
    }
    text = f"invariant = {inv.approx():.12g} (= {render(inv.coeff)} x <S4>^(-g/3), g={inv.genus})"
    if getattr(args, "all_roots", False):
        payload["all_roots"] = [[z.real, z.imag] for z in inv.all_roots()]
        text += "\n  roots: " + ", ".join(f"{z:.10g}" for z in inv.all_roots())
    _emit(args, payload, text)
    return 0


def _dispatch_axioms(args) -> int:
    spec = args.algebra
    if spec.startswith("group:"):
        h = hopf.group_algebra(parse_group(spec[len("group:"):]))
    elif spec.startswith("fun:"):
        h = hopf.function_algebra(parse_group(spec[len("fun:"):]))
    elif spec.startswith("double:kashaev:"):
        params = dict(p.split("=", 1) for p in spec[len("double:kashaev:"):].split(","))
        t = hopf.kashaev_triplet(int(params["n"]))
        h = hopf.generalized_double(t.C, t.A, t.tau_CA)
    elif spec.startswith("weak:"):
        params = dict(p.split("=", 1) for p in spec[len("weak:"):].split(";"))
        c, b = parse_group(params["C"]), parse_group(params["B"])
        cfg = labelcount.WeakConfig(c, b, _parse_gset(params.get("M", "point"), c, b))
        h, _ = hopf.weak_hopf_from_action(cfg.mset)
    elif spec.startswith("file:"):
        h = hopf.algebra_from_json(json.loads(Path(spec[len("file:"):]).read_text()))
    else:
        raise TrisectError(f"unknown algebra spec {spec!r}")
    rep = hopf.check_hopf_axioms(h)
    worst = max(rep.values())
    payload = {"algebra": h.name, "dim": h.dim, "weak": h.weak, "residuals": rep, "ok": worst == 0.0}
    text = f"{h}\n" + "\n".join(f"  {k}: {v}" for k, v in rep.items())
    _emit(args, payload, text)
    return 0 if worst == 0.0 else 1


if __name__ == "__main__":
    sys.exit(main())
