"""Command line interface: ``lpm info|count|ehrhart|verify``.

Exit codes: 0 success, 2 usage or parse error, 3 verification mismatch.
With ``--json`` a single JSON document goes to stdout and any human-readable
text to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ehrhart import closed_form_ab, ehrhart_polynomial, hstar, is_unimodal, snake_count
from .errors import InterpolationMismatch, LpmError, MethodInapplicable, ParseError, TooLarge
from .lpm import (
    Lpm,
    Snake,
    connected_components,
    count_bases,
    direct_sum,
    dual,
    is_snake,
    parse_steps,
)
from .polytope import brute_force_count, count_lattice_points
from .verify import SUITES, Settings, run_suite

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 2, 3


def parse_matroid_spec(text):
    """Parse ``S(a1,...)``, ``U=<bits>,L=<bits>`` or a ``+``-separated sum of them."""
    parts = []
    offset = 0
    for chunk in text.split("+"):
        parts.append(_parse_term(chunk, offset))
        offset += len(chunk) + 1
    return direct_sum(*parts)


def _parse_term(chunk, offset):
    term = chunk.strip()
    lead = offset + len(chunk) - len(chunk.lstrip())
    if not term:
        raise ParseError("empty term", lead)
    if term.startswith("S"):
        try:
            return Snake.parse(term).to_lpm()
        except ParseError as exc:
            raise ParseError(str(exc).split(" (at")[0], lead + (exc.position or 0)) from exc
    if term.startswith("U="):
        fields = dict()
        pos = lead
        for piece in term.split(","):
            key, sep, val = piece.partition("=")
            key = key.strip()
            if not sep or key not in ("U", "L"):
                raise ParseError(f"expected U=<bits> or L=<bits>, got {piece.strip()!r}", pos)
            try:
                fields[key] = parse_steps(val)
            except ParseError as exc:
                raise ParseError(str(exc).split(" (at")[0], pos + len(key) + 1 + (exc.position or 0)) from exc
            pos += len(piece) + 1
        if set(fields) != {"U", "L"}:
            raise ParseError("both U and L are required", lead)
        try:
            return Lpm(fields["U"], fields["L"])
        except LpmError as exc:
            raise ParseError(f"invalid LPM: {exc}", lead) from exc
    raise ParseError(f"cannot parse matroid term {term!r}", lead)


def _describe(M):
    snake = is_snake(M)
    comps = connected_components(M)
    D = dual(M)
    dsnake = is_snake(D)
    return {
        "spec": str(M),
        "n": M.n,
        "r": M.rank,
        "m": M.width,
        "bases": str(count_bases(M)),
        "components": len(comps),
        "component_specs": [str(is_snake(C) or C) for C in comps],
        "connected": M.is_connected,
        "snake": str(snake) if snake else None,
        "dual": str(D),
        "dual_snake": str(dsnake) if dsnake else None,
    }


def cmd_info(args):
    M = parse_matroid_spec(args.spec)
    info = _describe(M)
    lines = [
        f"{info['spec']}",
        f"n={info['n']} r={info['r']} m={info['m']}",
        f"bases={info['bases']}",
        f"components={info['components']} ({'connected' if info['connected'] else 'disconnected'})",
        f"snake={info['snake'] or 'no'}",
        f"dual={info['dual']}" + (f" = {info['dual_snake']}" if info["dual_snake"] else ""),
    ]
    return EXIT_OK, info, lines


def _method_value(M, k, method):
    if method == "dp":
        return count_lattice_points(M, k)
    if method == "matrix":
        s = is_snake(M)
        if s is None:
            raise MethodInapplicable("the matrix method needs a snake")
        return snake_count(s, k)
    if method == "brute":
        return brute_force_count(M, k)
    raise MethodInapplicable(f"unknown method {method!r}")


def cmd_count(args):
    M = parse_matroid_spec(args.spec)
    if args.k < 0:
        raise ParseError("--k must be nonnegative")
    if not args.all_methods:
        value = _method_value(M, args.k, args.method)
        doc = {"spec": str(M), "k": args.k, "method": args.method, "count": str(value)}
        return EXIT_OK, doc, [str(value)]
    results = {}
    for method in ("dp", "matrix", "brute"):
        try:
            results[method] = _method_value(M, args.k, method)
        except (MethodInapplicable, TooLarge):
            continue
    agree = len(set(results.values())) == 1
    doc = {
        "spec": str(M),
        "k": args.k,
        "counts": {m: str(v) for m, v in results.items()},
        "agree": agree,
    }
    line = " ".join(f"{m}={v}" for m, v in results.items())
    if not agree:
        line += "  MISMATCH"
    return (EXIT_OK if agree else EXIT_MISMATCH), doc, [line]


def cmd_ehrhart(args):
    M = parse_matroid_spec(args.spec)
    L = ehrhart_polynomial(M)
    d = M.dimension
    doc = {"spec": str(M), "degree": d, "coefficients": L.to_json()}
    lines = [f"L(t) = {L}", "coefficients: [" + ", ".join(str(c) for c in L.coeffs) + "]"]
    code = EXIT_OK
    if args.hstar:
        h = hstar(L, d)
        uni = is_unimodal(h)
        doc["hstar"] = [str(x) for x in h]
        doc["unimodal"] = uni
        lines.append("h* = (" + ", ".join(map(str, h)) + ")")
        lines.append("unimodal" if uni else "NOT unimodal")
    if args.closed_form:
        s = is_snake(M)
        if s is None or len(s.runs) != 2 or min(s.runs) < 2:
            raise MethodInapplicable("the closed form applies to snakes S(a,b) with a, b >= 2")
        C = closed_form_ab(*s.runs)
        same = C == L
        doc["closed_form"] = C.to_json()
        doc["closed_form_equal"] = same
        lines.append(f"closed form: {C}")
        lines.append("closed form equals interpolation: " + ("OK" if same else "MISMATCH"))
        if not same:
            code = EXIT_MISMATCH
    return code, doc, lines


def cmd_verify(args):
    cfg = Settings(
        max_cells=args.max_cells,
        max_k=args.max_k,
        max_n=args.max_n,
        seed=args.seed,
        samples=args.samples,
    )
    outcomes, failure = run_suite(args.suite, cfg, jobs=args.jobs)
    doc = {
        "suite": args.suite,
        "settings": vars(cfg),
        "checked": len(outcomes),
        "passed": failure is None,
    }
    if failure is None:
        lines = [f"{args.suite}: pass ({len(outcomes)} instances)"]
        return EXIT_OK, doc, lines
    doc["failure"] = {"instance": failure.instance, "detail": failure.detail}
    lines = [f"{args.suite}: FAIL at {failure.instance}: {failure.detail}"]
    return EXIT_MISMATCH, doc, lines


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    parser = _Parser(prog="lpm", description="Lattice path matroid polytopes")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("info", help="basic data of a matroid")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("count", help="integer points of kP_M")
    p.add_argument("spec")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("dp", "matrix", "brute"), default="dp")
    p.add_argument("--all-methods", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("ehrhart", help="Ehrhart polynomial and h*-vector")
    p.add_argument("spec")
    p.add_argument("--hstar", action="store_true")
    p.add_argument("--closed-form", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("verify", help="run a cross-check suite")
    p.add_argument("--suite", required=True, help="one of: " + ", ".join(SUITES))
    p.add_argument("--max-cells", type=int, default=6)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)
    human = sys.stderr if as_json else sys.stdout
    try:
        code, doc, lines = args.func(args)
    except LpmError as exc:
        kind = type(exc).__name__
        code = EXIT_MISMATCH if isinstance(exc, InterpolationMismatch) else EXIT_USAGE
        if as_json:
            doc = {"error": kind, "message": str(exc)}
            if isinstance(exc, ParseError) and exc.position is not None:
                doc["position"] = exc.position
            print(json.dumps(doc, sort_keys=True))
        print(f"lpm: {kind}: {exc}", file=sys.stderr)
        return code
    if as_json:
        print(json.dumps(doc, sort_keys=True))
    for line in lines:
        print(line, file=human)
    return code


if __name__ == "__main__":
    sys.exit(main())
