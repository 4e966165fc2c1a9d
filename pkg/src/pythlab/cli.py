"""Command-line front end.

Exit status: 0 for a definite result, 2 for Unknown or Inconclusive, 1 for errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .admissibility import UNKNOWN as ADM_UNKNOWN, find_witness, is_strictly_admissible
from .classify import (UNKNOWN, ClassifyOptions, DuValSpec, classify_surface, describe, du_val,
                       surface_to_f)
from .polycore import (LinMap, Poly, PolyParseError, compose_linear, format_poly, parse_poly)
from .ringext import (RingRepresentation, ReductionError, reduce_representation,
                      representation_from_decomposition, rotate_representation,
                      search_representation, verify_representation)
from .sosengine import SearchOptions, SosCertificate, decompose_sos, min_length
from .witness import build_family, constructive_decomposition

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class CliError(Exception):
    pass


def _limit_threads() -> None:
    raw = os.environ.get("PYTHLAB_THREADS")
    if not raw:
        return
    try:
        n = max(1, int(raw))
    except ValueError:
        raise CliError(f"PYTHLAB_THREADS must be an integer, got {raw!r}")
    from threadpoolctl import threadpool_limits

    threadpool_limits(n)


def read_poly(text: str, vars=("x", "y")) -> Poly:
    """Expression text, or ``@path`` to a JSON polynomial."""
    if text.startswith("@"):
        data = json.loads(Path(text[1:]).read_text())
        return Poly.from_json(data, len(vars))
    return parse_poly(text, vars)


def _read_json(text: str) -> dict:
    if not text.startswith("@"):
        raise CliError("expected @path to a JSON file")
    return json.loads(Path(text[1:]).read_text())


def _search_options(args) -> SearchOptions:
    return SearchOptions(tolerance=args.tolerance, iters=args.iters,
                         denominator_bound=args.denominator_bound)


def _classify_options(args) -> ClassifyOptions:
    return ClassifyOptions(height=args.budget_height, sos=_search_options(args), seed=args.seed)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _squares_text(cert: SosCertificate) -> str:
    lines = []
    for w, p in cert.squares:
        pre = "" if w == 1 else f"{w} * "
        lines.append(f"  {pre}({format_poly(p)})^2")
    return "\n".join(lines)


# ---- verbs -----------------------------------------------------------------

def cmd_admissible(args) -> int:
    f = read_poly(args.poly)
    v = find_witness(f, args.budget_height, args.directions, _search_options(args))
    text = v.kind
    if v.witness is not None:
        text += f" {v.witness}\n  f o M = {format_poly(compose_linear(f, v.witness))}"
    if v.certificate is not None:
        text += "\n  -f as a sum of squares:\n" + _squares_text(v.certificate)
    if v.budget:
        text += f"\n  budget: {v.budget}"
    _emit(args, v.to_json(), text)
    return EXIT_UNKNOWN if v.kind == ADM_UNKNOWN else EXIT_OK


def cmd_family(args) -> int:
    f = read_poly(args.poly)
    seq = build_family(f, args.m)
    bad = seq.check()
    if bad:
        raise CliError("; ".join(bad))
    lines = [f"r = {list(seq.exps)}"]
    for n in range(1, len(seq) + 1):
        parts = constructive_decomposition(seq, n)
        lines.append(f"F_{n} = {format_poly(seq.poly(n))}")
        lines.append("  = " + " + ".join(f"({format_poly(p)})^2" for p in parts))
    _emit(args, seq.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_length(args) -> int:
    f = read_poly(args.poly)
    res = min_length(f, args.max_squares, _search_options(args))
    if res.length is None:
        text = f"Inconclusive (lower bound {res.lower_bound}, upper bound {res.upper_bound})"
    elif res.lower_bound_inconclusive:
        text = (f"length <= {res.upper_bound}, certified lower bound {res.lower_bound} "
                "(lower bound inconclusive)")
    else:
        text = f"length = {res.length}"
    if res.decomposition is not None:
        text += "\n" + _squares_text(res.decomposition)
    _emit(args, res.to_json(), text)
    return EXIT_OK if res.certified else EXIT_UNKNOWN


def cmd_decompose(args) -> int:
    f = read_poly(args.poly)
    cert = decompose_sos(f, _search_options(args))
    if cert.is_decomposition:
        text = f"Decomposition ({cert.count} squares, {cert.method})\n" + _squares_text(cert)
    elif cert.is_not_sos:
        text = (f"NotSos ({cert.method}): dual functional on {len(cert.dual)} monomials, "
                f"exactly verified: {cert.verify()}")
    else:
        text = f"Inconclusive ({cert.method})"
    _emit(args, cert.to_json(), text)
    return EXIT_UNKNOWN if cert.kind == "Inconclusive" else EXIT_OK


def cmd_classify(args) -> int:
    if (args.f is None) == (args.surface is None):
        raise CliError("give exactly one of --f or --surface")
    f = read_poly(args.f) if args.f is not None else surface_to_f(args.surface)
    v = classify_surface(f, _classify_options(args))
    _emit(args, v.to_json(), describe(v))
    return EXIT_UNKNOWN if v.kind == UNKNOWN else EXIT_OK


def cmd_duval(args) -> int:
    spec = DuValSpec.parse(args.family, args.n)
    f, v = du_val(spec, _classify_options(args))
    payload = v.to_json()
    payload["singularity"] = spec.name
    payload["equation"] = spec.equation()
    _emit(args, payload, f"{spec.name}: {spec.equation()} = 0\n{describe(v)}")
    return EXIT_UNKNOWN if v.kind == UNKNOWN else EXIT_OK


_ROTATION = [[Fraction(3, 5), Fraction(-4, 5)], [Fraction(4, 5), Fraction(3, 5)]]


def cmd_reduce(args) -> int:
    f = read_poly(args.poly)
    seq = build_family(f, max(args.n, 2))
    if args.rep is not None:
        rep = RingRepresentation.from_json(_read_json(args.rep))
    else:
        rep = representation_from_decomposition(seq.poly(args.n), f,
                                                constructive_decomposition(seq, args.n))
        if args.rotate and len(rep.pairs) >= 2:
            k = len(rep.pairs)
            Q = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
            for i in range(2):
                for j in range(2):
                    Q[i][j] = _ROTATION[i][j]
            rep = rotate_representation(rep, Q)
    steps = []
    while rep.target != 1 and len(rep.pairs) > 0:
        try:
            rep = reduce_representation(rep, seq)
        except ReductionError as exc:
            _emit(args, {"steps": steps, "error": str(exc), "step": exc.step},
                  "\n".join(s["text"] for s in steps) + f"\nreduction failed at {exc}")
            return EXIT_ERROR
        steps.append({"pairs": len(rep.pairs), "target": rep.target.to_json(),
                      "verified": bool(verify_representation(rep)),
                      "text": f"-> F with {len(rep.pairs)} pair(s): {format_poly(rep.target)}"})
    last = search_representation(Poly.const(1), f, max(1, args.max_squares), args.deg_bound,
                                 radical_only=True, opts=_search_options(args))
    closing = ("1 = f * sum g_i^2 has no solution with deg g_i <= "
               f"{args.deg_bound}" if last is None else "unexpected: 1 = f * sum g_i^2 found")
    payload = {"steps": steps, "terminal_search_found": last is not None,
               "deg_bound": args.deg_bound}
    _emit(args, payload, "\n".join(s["text"] for s in steps + [{"text": closing}]))
    return EXIT_OK if last is None else EXIT_ERROR


def cmd_verify(args) -> int:
    data = _read_json(args.file)
    if "pairs" in data:
        res = verify_representation(RingRepresentation.from_json(data))
        ok, what = res.ok, "representation"
    elif "kind" in data:
        ok, what = SosCertificate.from_json(data).verify(), "certificate"
    elif "verdict" in data and data.get("witness"):
        f = read_poly(args.poly) if args.poly else None
        if f is None:
            raise CliError("verifying a witness needs --poly")
        ok = is_strictly_admissible(compose_linear(f, LinMap.from_json(data["witness"])))
        what = "admissibility witness"
    else:
        raise CliError("unrecognised JSON document")
    _emit(args, {"object": what, "valid": ok}, f"{what}: {'valid' if ok else 'INVALID'}")
    return EXIT_OK if ok else EXIT_ERROR


def cmd_corpus(args) -> int:
    from .corpus import run_corpus

    results = run_corpus(_classify_options(args))
    failed = [r for r in results if not r.ok]
    lines = [f"{'ok  ' if r.ok else 'FAIL'} {r.name}: expected {r.expected}, got {r.got}"
             + (f" [{r.note}]" if r.note else "") for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} examples match")
    payload = {"results": [r.to_json() for r in results], "all_match": not failed}
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if not failed else EXIT_ERROR


# ---- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget-height", type=int, default=8,
                        help="entry height bound for witness matrices (default 8)")
    common.add_argument("--directions", type=int, default=10_000,
                        help="directions scanned for a positive top-form value (default 10000)")
    common.add_argument("--max-squares", type=int, default=8, help="largest k tried (default 8)")
    common.add_argument("--deg-bound", type=int, default=4,
                        help="degree bound for ring representation searches (default 4)")
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--denominator-bound", type=int, default=2**32)
    common.add_argument("--iters", type=int, default=100_000)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="pythlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"pythlab {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("admissible", parents=[common], help="strict admissibility and witnesses")
    s.add_argument("poly")
    s.set_defaults(func=cmd_admissible)

    s = sub.add_parser("family", parents=[common], help="associated sequence F_1..F_m")
    s.add_argument("poly")
    s.add_argument("-m", type=int, default=3)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("length", parents=[common], help="minimal number of squares")
    s.add_argument("poly")
    s.set_defaults(func=cmd_length)

    s = sub.add_parser("decompose", parents=[common], help="SOS decomposition or refutation")
    s.add_argument("poly")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("classify", parents=[common], help="Pythagoras-number verdict")
    s.add_argument("--f", help="f(x, y) in z^2 = f")
    s.add_argument("--surface", help="surface equation in x, y, z, e.g. 'z^2 - y'")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("duval", parents=[common], help="du Val table entry")
    s.add_argument("family", help="A, D, E6, E7, E8 (or A3 style)")
    s.add_argument("n", type=int, nargs="?")
    s.set_defaults(func=cmd_duval)

    s = sub.add_parser("reduce", parents=[common], help="run the reduction down to F_1")
    s.add_argument("poly", help="strictly admissible base polynomial f")
    s.add_argument("--n", type=int, default=3, help="start from F_n (default 3)")
    s.add_argument("--rotate", action="store_true", help="rotate the first two pairs by (3/5, 4/5)")
    s.add_argument("--rep", help="@path to a representation JSON instead of the constructed one")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("verify", parents=[common], help="check a JSON certificate exactly")
    s.add_argument("file", help="@path")
    s.add_argument("--poly", help="polynomial, for admissibility witnesses")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("corpus", parents=[common], help="run the bundled example corpus")
    s.set_defaults(func=cmd_corpus)
    return p


def _shield_negatives(argv: list[str]) -> list[str]:
    """Keep argparse from reading polynomials such as "-x^2" as flags."""
    out = []
    for tok in argv:
        if tok.startswith("-") and not tok.startswith("--") and tok not in ("-h", "-m") \
                and not tok.startswith("-m"):
            tok = " " + tok
        out.append(tok)
    return out


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_shield_negatives(argv))
    except SystemExit as exc:  # usage errors exit 1, keeping 2 for Unknown
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        _limit_threads()
        return args.func(args)
    except PolyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (CliError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())
