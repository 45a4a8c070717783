"""Command line entry point ``concord``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import __version__
from .delta import (
    ROUTES,
    IndependenceCertificate,
    TableMismatch,
    Unsupported,
    delta_pn,
    independence_certificate,
    make_table,
    verify_certificate,
)
from .dinvariant import DEFAULT_MAX_STATES, DInvariantError, StateBudgetExceeded, d_plumbing
from .knotpoly import TorusKnot, alexander_torus, torsion_t0
from .numtheory import PrimePower
from .plumbing import PlumbingError, build_brieskorn_plumbing, read_plb, write_plb
from .signatures import EigenvalueNearZero, cover_signature, signature
from .topology import BrieskornTriple

EXIT_OK = 0
EXIT_UNSUPPORTED = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4


def _ints(text: str, count: int, what: str) -> List[int]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must be {count} comma-separated integers, got {text!r}") from None
    if len(vals) != count:
        raise argparse.ArgumentTypeError(f"{what} must be {count} comma-separated integers, got {text!r}")
    return vals


def _knot(text: str) -> TorusKnot:
    kind, _, rest = text.partition(":")
    if kind != "torus" or not rest:
        raise argparse.ArgumentTypeError(f"knot must look like torus:A,B, got {text!r}")
    try:
        return TorusKnot(*_ints(rest, 2, "torus parameters"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _torus(text: str) -> TorusKnot:
    try:
        return TorusKnot(*_ints(text, 2, "torus parameters"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _cover(text: str) -> PrimePower:
    p, sep, n = text.partition("^")
    try:
        return PrimePower(int(p), int(n) if sep else 1)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cover must look like P^N with P prime: {exc}") from None


def _triple(text: str) -> BrieskornTriple:
    try:
        return BrieskornTriple(*_ints(text, 3, "Brieskorn triple"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fmt_frac(f) -> str:
    return f"{f.numerator}/{f.denominator}"


def cmd_delta(args) -> int:
    res = delta_pn(args.knot, args.cover, route=args.route, max_states=args.max_states)
    if args.json:
        out = {
            "knot": {"a": args.knot.a, "b": args.knot.b},
            "cover": {"p": args.cover.p, "n": args.cover.n},
            "manifold": str(res.manifold),
            "route": res.route,
            "d": _fmt_frac(res.d_value),
            "delta": res.value,
        }
        print(json.dumps(out))
    else:
        print(f"delta_{args.cover.value}({args.knot}) = {res.value}  [route {res.route}, {res.manifold}, d = {_fmt_frac(res.d_value)}]")
    return EXIT_OK


def cmd_table(args) -> int:
    try:
        table = make_table(args.example, strict=True)
        status = EXIT_OK
    except TableMismatch as exc:
        table = exc.table
        status = EXIT_MISMATCH
    render = {"md": table.to_markdown, "csv": table.to_csv, "json": table.to_json}[args.format]
    sys.stdout.write(render() if args.format != "json" else render() + "\n")
    for c in table.mismatches:
        print(f"mismatch: {c.label} expected {c.expected}, got {c.value}", file=sys.stderr)
    return status


def cmd_dinv(args) -> int:
    if args.plb:
        g = read_plb(args.plb)
        name = args.plb
    else:
        g = build_brieskorn_plumbing(args.brieskorn)
        name = str(args.brieskorn)
    res = d_plumbing(g, max_states=args.max_states)
    print(f"{name}: {len(res)} spin^c structure(s)")
    for lab, d in sorted(res.per_class.items()):
        print(f"  {' '.join(map(str, lab)) or '-'}: {_fmt_frac(d)}")
    return EXIT_OK


def cmd_plumbing(args) -> int:
    g = build_brieskorn_plumbing(args.brieskorn)
    if args.emit:
        write_plb(g, args.emit)
        print(f"wrote {len(g)}-vertex plumbing for {args.brieskorn} to {args.emit}")
    else:
        from .plumbing import emit_plb

        sys.stdout.write(emit_plb(g))
    return EXIT_OK


def cmd_alexander(args) -> int:
    poly = alexander_torus(args.torus)
    print(f"Delta_{args.torus}(t) = {poly!r}")
    if args.t0:
        print(f"t0 = {torsion_t0(poly)}")
    return EXIT_OK


def cmd_signature(args) -> int:
    if args.cover:
        print(f"sigma(X_{args.cover}) for {args.torus} = {cover_signature(args.torus, args.cover)}")
    else:
        print(f"sigma({args.torus}) = {signature(args.torus)}")
    return EXIT_OK


def cmd_cert(args) -> int:
    if args.verify:
        with open(args.verify, encoding="utf-8") as fh:
            cert = IndependenceCertificate.from_json(fh.read())
        report = verify_certificate(cert)
        print(f"{'valid' if report else 'INVALID'} ({report.checks} checks)")
        for f in report.failures:
            print(f"  {f}")
        return EXIT_OK if report else 1
    cert = independence_certificate(args.prime, args.count)
    print(cert.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="concord", description="Correction-term concordance invariants of torus knots.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta", help="delta_{p^n} of a torus knot")
    p.add_argument("--knot", type=_knot, required=True, help="torus:A,B")
    p.add_argument("--cover", type=_cover, required=True, help="P^N")
    p.add_argument("--route", choices=("auto",) + ROUTES, default="auto")
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("table", help="recompute an example table")
    p.add_argument("--example", type=int, choices=range(1, 9), required=True)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("dinv", help="correction terms of a plumbed manifold")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--brieskorn", type=_triple)
    src.add_argument("--plb")
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p.set_defaults(func=cmd_dinv)

    p = sub.add_parser("plumbing", help="build the plumbing of a Brieskorn sphere")
    p.add_argument("--brieskorn", type=_triple, required=True)
    p.add_argument("--emit", metavar="FILE.plb")
    p.set_defaults(func=cmd_plumbing)

    p = sub.add_parser("alexander", help="Alexander polynomial of a torus knot")
    p.add_argument("--torus", type=_torus, required=True)
    p.add_argument("--t0", action="store_true")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("signature", help="signature of a torus knot or its branched cover")
    p.add_argument("--torus", type=_torus, required=True)
    p.add_argument("--cover", type=int)
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("cert", help="linear independence certificates")
    p.add_argument("--prime", type=int)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--verify", metavar="FILE.json")
    p.set_defaults(func=cmd_cert)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "cert" and not args.verify and args.prime is None:
        ap.error("cert needs --prime or --verify")
    try:
        return args.func(args)
    except StateBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (Unsupported, PlumbingError, DInvariantError, EigenvalueNearZero, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
