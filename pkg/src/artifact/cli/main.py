"""Command-line front end."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from ..errors import ArtifactError, KnotSyntaxError, SemanticError, UnknownTarget

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc


def _pq(text: str) -> tuple[int, int]:
    if text.strip() in ("1/0", "inf"):
        return 1, 0
    f = _fraction(text)
    return f.numerator, f.denominator


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="artifact", description="Involutive knot Floer calculator")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--out", metavar="FILE", help="also write the JSON result to FILE")
    sub = ap.add_subparsers(dest="group", required=True)

    kn = sub.add_parser("knot", help="invariants of a knot expression")
    kn.add_argument("expr")
    kn.add_argument("--s", type=int, nargs="*", default=None, help="values of s for V_s")

    tg = sub.add_parser("tangle", help="rational tangle arithmetic")
    tg.add_argument("action", choices=["expand", "proper", "word"])
    tg.add_argument("pq", type=_pq)

    pt = sub.add_parser("pattern", help="pattern records")
    pt_sub = pt.add_subparsers(dest="action", required=True)
    wh = pt_sub.add_parser("whitehead")
    wh.add_argument("--clasp", type=int, default=1, choices=[-1, 1])
    wh.add_argument("--twists", type=int, default=0)
    wh.add_argument("--mirror", action="store_true")
    dc = pt_sub.add_parser("declare")
    dc.add_argument("--pq", type=_fraction, required=True)
    dc.add_argument("--ell", type=int, required=True)
    dc.add_argument("--label", default="")
    rt = pt_sub.add_parser("rational")
    rt.add_argument("--pq", type=_pq, required=True)

    sg = sub.add_parser("surgery", help="surgery classes and d-invariants")
    sg_sub = sg.add_subparsers(dest="action", required=True)
    for name in ("class", "witness"):
        s = sg_sub.add_parser(name)
        s.add_argument("--knot", required=True)
        s.add_argument("--pq", type=_pq, required=True)
    sd = sg_sub.add_parser("d")
    sd.add_argument("--M", type=int, required=True)
    sd.add_argument("--knot", required=True)

    cb = sub.add_parser("cobordism", help="intersection forms")
    cb_sub = cb.add_subparsers(dest="action", required=True)
    cc = cb_sub.add_parser("check")
    for flag in ("--M", "--N1", "--N2", "--ell"):
        cc.add_argument(flag, type=int, required=True)
    cf = cb_sub.add_parser("find")
    cf.add_argument("--M", type=int, required=True)
    cf.add_argument("--ell", type=int, required=True)
    cbd = cb_sub.add_parser("bound")
    cbd.add_argument("--knot", required=True)
    cbd.add_argument("--ell", type=int, required=True)
    cbd.add_argument("--M", type=int, default=1)

    rp = sub.add_parser("reproduce", help="run a named fixture set")
    rp.add_argument("target", nargs="?", default="all")
    rp.add_argument("--limit", type=int, default=None, help="range bound for the rank certificate")
    return ap


def _knot(args_expr: str):
    from ..knots import parse_knot

    return parse_knot(args_expr)


def cmd_knot(args) -> tuple[dict, bool]:
    from ..knots import alexander, tau, v0, v0_lower_bound
    from ..knots.invariants import lattice_model
    from ..errors import UnsupportedLeaf, SearchTooLarge

    k = _knot(args.expr)
    out: dict = {"expr": str(k)}
    try:
        out["alexander"] = alexander(k).to_json()
    except UnsupportedLeaf:
        out["alexander"] = None
    out["tau"] = tau(k)
    V: dict = {}
    try:
        V["0"] = v0(k).value
    except UnsupportedLeaf:
        V["0"] = None
        try:
            out["V0_lower_bound"] = v0_lower_bound(k)[0]
        except UnsupportedLeaf:
            pass
    if args.s:
        try:
            model = lattice_model(k)
            for s in args.s:
                V[str(s)] = model.Vs(s)
        except (UnsupportedLeaf, SearchTooLarge, ArtifactError):
            pass
    out["V"] = V
    return out, True


def cmd_tangle(args) -> tuple[dict, bool]:
    from ..tangles import cf_expand, format_pairing, is_proper, pairing_of, tangle_word

    p, q = args.pq
    out = {"pq": f"{p}/{q}"}
    if args.action == "expand":
        out["continued_fraction"] = cf_expand(p, q)
    elif args.action == "proper":
        out["proper"] = is_proper(p, q)
        out["pairing"] = format_pairing(pairing_of(p, q))
    else:
        word, base = tangle_word(p, q)
        out["word"] = [f"{letter}^{x}" for letter, x in word]
        out["base"] = base
    return out, True


def cmd_pattern(args) -> tuple[dict, bool]:
    from ..tangles import declare_pattern, mirror, rational_tangle_pattern, whitehead_pattern

    if args.action == "whitehead":
        rec = whitehead_pattern(args.clasp, args.twists)
        if args.mirror:
            rec = mirror(rec)
    elif args.action == "declare":
        rec = declare_pattern(args.pq, args.ell, args.label)
    else:
        rec = rational_tangle_pattern(*args.pq)
    return rec.to_json(), True


def cmd_surgery(args) -> tuple[dict, bool]:
    from ..knots.invariants import lattice_model
    from ..surgery import comparison_witness, d_surgery, even_surgery_class, odd_surgery_class

    k = _knot(args.knot)
    if args.action == "d":
        return {"knot": str(k), "M": args.M, "d": str(d_surgery(args.M, k))}, True
    p, q = args.pq
    model = lattice_model(k)
    build = even_surgery_class if q % 2 == 0 else odd_surgery_class
    sc = build(model, p, q, str(k))
    if args.action == "class":
        return sc.to_json(), True
    V, w = comparison_witness(sc)
    return {"knot": str(k), "pq": f"{p}/{q}", "index": V, "d": str(sc.d), "witness": w.to_json()}, w.verify()


def cmd_cobordism(args) -> tuple[dict, bool]:
    from ..cobordism import CobordismParams, char_poly, find_params, form, is_negative_definite, v0_bound_report
    from ..tangles import declare_pattern

    if args.action == "check":
        prm = CobordismParams(args.M, args.N1, args.N2, args.ell)
        tr, de = char_poly(prm)
        return {"form": form(prm).tolist(), "trace_term": tr, "det_term": de,
                "negative_definite": is_negative_definite(prm)}, True
    if args.action == "find":
        n1, n2 = find_params(args.M, args.ell)
        return {"M": args.M, "ell": args.ell, "N1": n1, "N2": n2}, True
    pat = declare_pattern(Fraction(1, 2), args.ell, "declared")
    return v0_bound_report(_knot(args.knot), pat, args.M), True


def cmd_reproduce(args) -> tuple[dict, bool, str]:
    from .repro import TARGETS, run

    names = list(TARGETS) if args.target == "all" else [args.target]
    params = {"limit": args.limit} if args.limit is not None else {}
    reports = [run(n, **(params if n == "whitehead-rank" else {})) for n in names]
    text = "\n".join(r.text() for r in reports)
    data = {"reports": [r.to_json() for r in reports], "passed": all(r.passed for r in reports)}
    return data, data["passed"], text


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.group == "reproduce":
            data, ok, text = cmd_reproduce(args)
        else:
            handler = {"knot": cmd_knot, "tangle": cmd_tangle, "pattern": cmd_pattern,
                       "surgery": cmd_surgery, "cobordism": cmd_cobordism}[args.group]
            data, ok = handler(args)
            text = json.dumps(data, indent=2, sort_keys=True)
    except (KnotSyntaxError, SemanticError, UnknownTarget) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArtifactError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    blob = json.dumps(data, indent=2, sort_keys=True)
    print(blob if args.json else text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(blob + "\n")
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
