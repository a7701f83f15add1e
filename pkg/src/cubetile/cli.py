"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 semantic refutation (an
overlapping packing, a failed precondition such as an uncovered point or a
violated hypothesis), 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

from . import chessboard, generators, packing, rigidity, svg, theorems
from .errors import CubeTileError, Inconsistent, UsageError
from .geometry import Box, format_point, parse_rational

EXIT_OK, EXIT_USAGE, EXIT_REFUTED, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_point(text: str) -> tuple:
    return tuple(parse_rational(part) for part in text.split(","))


def parse_window(text: str) -> Box:
    """``"a,b;c,d"``: lower corner, then upper corner."""
    try:
        lower, upper = text.split(";")
    except ValueError:
        raise UsageError(f"window must look like 'lower;upper', got {text!r}") from None
    return Box(parse_point(lower), parse_point(upper))


def parse_signs(text: str) -> tuple:
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    try:
        return tuple(table[tok.strip()] for tok in text.split(","))
    except KeyError as exc:
        raise UsageError(f"bad sign {exc.args[0]!r}; use '+' or '-'") from None


def parse_ints(text: str) -> tuple:
    if not text.strip():
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _check_dim(point, sys, flag):
    if len(point) != sys.dim:
        raise UsageError(f"{flag} needs {sys.dim} coordinates")


def _emit(args, payload, text: str):
    if args.format == "json":
        body = json.dumps(payload, indent=2) + "\n"
    else:
        body = text.rstrip("\n") + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        _sys.stdout.write(body)


def _pair_json(pair):
    return {
        "t": format_point(pair.t),
        "t_prime": format_point(pair.t_prime),
        "flipped": sorted(pair.flipped),
    }


def cmd_verify(args) -> int:
    sys = packing.load_instance(args.input)
    check = packing.validate_packing(sys)
    payload = {"packing": "valid" if check.valid else "violation"}
    if not check.valid:
        v = check.violation
        payload["violation"] = [format_point(v.t), format_point(v.t_prime)]
        text = f"packing: violation {','.join(payload['violation'][0])} / {','.join(payload['violation'][1])}"
        _emit(args, payload, text)
        return EXIT_REFUTED
    if sys.periods is None:
        payload["tiling"] = "n/a"
        tiling_text = "n/a"
    else:
        tiling = packing.validate_torus_tiling(sys)
        payload["tiling"] = "yes" if tiling.is_tiling else "no"
        payload["deficit"] = tiling.deficit
        tiling_text = "yes" if tiling.is_tiling else f"no (deficit {tiling.deficit})"
    cert = rigidity.parity_certificate(sys)
    payload["parity"] = cert.status
    if cert.counterexample is not None:
        payload["counterexample"] = _pair_json(cert.counterexample)
    _emit(args, payload, f"packing: valid, tiling: {tiling_text}, parity: {cert.status}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    sys = packing.load_instance(args.input)
    if args.double_periods and sys.periods is not None and any(p % 2 for p in sys.periods):
        sys = sys.doubled_periods()
    dec = chessboard.chessboard_decompose(sys)
    if args.svg:
        window = parse_window(args.window) if args.window else None
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg.render_decomposition(sys, dec, window, args.scale))
    text = "S0: " + " ".join(",".join(format_point(p)) for p in dec.S0)
    text += "\nS1: " + " ".join(",".join(format_point(p)) for p in dec.S1)
    _emit(args, dec.to_json(), text)
    return EXIT_OK


def cmd_witness(args) -> int:
    sys = packing.load_instance(args.input)
    packing.require_packing(sys)
    if args.kind == "twin":
        if not args.u:
            raise UsageError("witness twin needs --u")
        u = parse_point(args.u)
        _check_dim(u, sys, "--u")
        pair = rigidity.twin_witness(sys, u)
        payload = {"u": format_point(u), **_pair_json(pair)}
        text = (
            f"t = {','.join(payload['t'])}  t' = {','.join(payload['t_prime'])}"
            f"  flipped = {payload['flipped']}"
        )
    else:
        if not args.base or not args.sign:
            raise UsageError("witness orthant needs --base and --sign")
        base = parse_point(args.base)
        _check_dim(base, sys, "--base")
        w = theorems.orthant_witness(sys, base, parse_signs(args.sign))
        payload = w.to_json()
        text = f"J = {list(w.J)}  target = {','.join(payload['target'])}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_erode(args) -> int:
    sys = packing.load_instance(args.input)
    packing.require_packing(sys)
    window = parse_window(args.window) if args.window else svg.default_window(sys)
    faces = rigidity.find_covered_outsiders(sys, window)
    payload = {
        "window": {"lower": format_point(window.lower), "upper": format_point(window.upper)},
        "rough": not faces,
        **faces.to_json(),
    }
    lines = [f"covered outsiders: {len(faces)} face(s)"] + [str(f) for f in faces]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_census(args) -> int:
    sys = packing.load_instance(args.input)
    packing.require_packing(sys)
    base = parse_point(args.base) if args.base else sys.origins[0]
    _check_dim(base, sys, "--base")
    rows = []
    for window in theorems.nested_windows(sys, args.steps):
        rows.append((window, theorems.coset_census(sys, base, window)))
    counts = [c for _, c in rows]
    payload = {
        "base": format_point(base),
        "windows": [{"upper": format_point(w.upper), "count": c} for w, c in rows],
        "monotone": all(a <= b for a, b in zip(counts, counts[1:])),
    }
    text = "\n".join(f"[0,{','.join(format_point(w.upper))}): {c}" for w, c in rows)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_certify(args) -> int:
    sys = packing.load_instance(args.input)
    k = parse_ints(args.k)
    L = parse_ints(args.L)
    check = theorems.subgroup_check(sys, k, L)
    if not check.valid:
        payload = {"valid": False, "condition": check.condition, "detail": check.detail}
        _emit(args, payload, f"hypothesis {check.condition} violated: {check.detail}")
        return EXIT_REFUTED
    cert = theorems.basis_vector_certificate(sys, k, L)
    payload = {"valid": True, "modulo_periods": True, **cert.to_json()}
    text = f"e_{cert.m} in G: {cert.x}*{cert.n} + {cert.y}*{cert.k[cert.m]} = 1 (J = {list(cert.J)})"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.kind == "lattice":
        sys = generators.lattice_tiling(args.dim)
    elif args.kind == "columns":
        sys = generators.shifted_column_tiling(args.dim, parse_rational(args.shift))
    else:
        periods = parse_ints(args.periods) if args.periods else (2,) * args.dim
        sys = generators.random_torus_tiling(args.dim, periods, args.grid, args.seed)
    text = packing.dumps_instance(sys)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        _sys.stdout.write(text)
    return EXIT_OK


def cmd_render(args) -> int:
    sys = packing.load_instance(args.input)
    window = parse_window(args.window) if args.window else None
    body = svg.render_svg(sys, window, args.scale)
    target = args.svg or args.out
    if target:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        _sys.stdout.write(body)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cubetile", description="Exact analysis of unit-cube packings.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, out=True):
        p.add_argument("--in", dest="input", required=True, metavar="FILE")
        if out:
            p.add_argument("--out", metavar="FILE")
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("verify", help="packing, tiling and parity status")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="chessboard decomposition")
    common(p)
    p.add_argument("--svg", metavar="FILE")
    p.add_argument("--window")
    p.add_argument("--scale", type=int, default=64)
    p.add_argument("--double-periods", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("witness", help="twin pair or orthant witness")
    p.add_argument("kind", choices=("twin", "orthant"))
    common(p)
    p.add_argument("--u")
    p.add_argument("--base")
    p.add_argument("--sign")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("erode", help="covered outsiders within a window")
    common(p)
    p.add_argument("--window")
    p.set_defaults(func=cmd_erode)

    p = sub.add_parser("census", help="coset counts over nested windows")
    common(p)
    p.add_argument("--base")
    p.add_argument("--steps", type=int, default=3)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("certify", help="basis-vector certificate")
    p.add_argument("kind", choices=("subgroup",))
    common(p)
    p.add_argument("--k", required=True)
    p.add_argument("--L", required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("generate", help="write an instance file")
    p.add_argument("kind", choices=("lattice", "columns", "random"))
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--shift", default="1/2")
    p.add_argument("--periods")
    p.add_argument("--grid", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("render", help="SVG of a planar instance")
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.add_argument("--svg", metavar="FILE")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--window")
    p.add_argument("--scale", type=int, default=64)
    p.set_defaults(func=cmd_render)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USAGE
    except Inconsistent as exc:
        print(f"internal error: {exc}", file=_sys.stderr)
        return EXIT_INTERNAL
    except CubeTileError as exc:
        print(f"{type(exc).__name__}: {exc}", file=_sys.stderr)
        return EXIT_REFUTED
    except OSError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USAGE


def main():
    raise SystemExit(run())
