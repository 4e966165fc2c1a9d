"""Regression corpus: the worked examples, each with its expected label."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .admissibility import find_witness
from .classify import ClassifyOptions, all_du_val, classify_surface, du_val
from .polycore import LinMap, compose_linear, parse_poly
from .ringext import reduce_representation, representation_from_decomposition
from .sosengine import decompose_sos, min_length
from .witness import build_family, constructive_decomposition

MATRIX_EXAMPLE = "-x^2*y^4 - x^4*y^2 + 3*x^3*y^3"


@dataclass(frozen=True)
class CorpusResult:
    name: str
    expected: str
    got: str
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.expected == self.got

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "got": self.got,
                "ok": self.ok, "note": self.note}


def _admissible(expr: str, opts: ClassifyOptions) -> str:
    return find_witness(parse_poly(expr), opts.height, opts.directions, opts.sos).kind


def _matrix_composition(_opts) -> str:
    f = parse_poly(MATRIX_EXAMPLE)
    g = compose_linear(f, LinMap.from_rows([[1, -1], [1, 1]]))
    if g == parse_poly("(x-y)^2*(x+y)^2*(x^2-5*y^2)"):
        return "(x-y)^2(x+y)^2(x^2-5y^2)"
    if g == parse_poly("(x-y)^2*(x+y)^2*(5*y^2-x^2)"):
        return "(x-y)^2(x+y)^2(5y^2-x^2)"
    return "other"


def _length(expr_or_n, opts) -> str:
    if isinstance(expr_or_n, int):
        f = build_family(parse_poly("y"), expr_or_n).poly(expr_or_n)
    else:
        f = parse_poly(expr_or_n)
    res = min_length(f, 8, opts.sos)
    return str(res.length) if res.certified else f"<= {res.upper_bound}"


def _reduce_f2(_opts) -> str:
    seq = build_family(parse_poly("y"), 2)
    rep = representation_from_decomposition(seq.poly(2), seq.base, constructive_decomposition(seq, 2))
    out = reduce_representation(rep, seq)
    return "F_1 = 1" if out.target == 1 and len(out.pairs) == 1 else "other"


def _entries() -> list[tuple[str, str, Callable, str]]:
    e: list[tuple[str, str, Callable, str]] = []
    for expr, label in [("x^3*y", "StrictlyAdmissible"), ("x^2 - y^2", "AdmissibleWith"),
                        ("-y^2 - x^7", "AdmissibleWith"), ("-2*x^2 - 3*x^4*y^2", "NotAdmissible"),
                        (MATRIX_EXAMPLE, "AdmissibleWith"), ("x^2*(1 - x^2)", "Unknown")]:
        e.append((f"admissible {expr}", label, lambda o, s=expr: _admissible(s, o), ""))
    e.append(("composition of the matrix example", "(x-y)^2(x+y)^2(x^2-5y^2)", _matrix_composition,
              "printed in the source as (5y^2-x^2); the exact expansion has the opposite sign"))
    for expr, label in [("x^2*y^4 + x^4*y^2 - 3*x^2*y^2 + 1", "NotSos"),
                        ("x^2 + y^2", "Decomposition"), ("(y - x^2)^2 + 1", "Decomposition")]:
        e.append((f"decompose {expr}", label,
                  lambda o, s=expr: decompose_sos(parse_poly(s), o.sos).kind, ""))
    e.append(("length 9", "1", lambda o: _length("9", o), ""))
    for n in (1, 2, 3):
        e.append((f"length F_{n} (f = y)", str(n), lambda o, n=n: _length(n, o), ""))
    for expr, label in [("y", "Infinite"), ("-x^3 - y^5", "Infinite"),
                        ("-(x^2 + y^2)", "Finite"), ("-(x^2 + y^4)", "Finite")]:
        e.append((f"classify {expr}", label,
                  lambda o, s=expr: classify_surface(parse_poly(s), o).kind, ""))
    for spec in all_du_val():
        e.append((f"du Val {spec.name}", spec.expected,
                  lambda o, s=spec: du_val(s, o)[1].kind, ""))
    e.append(("reduce F_2 (f = y)", "F_1 = 1", _reduce_f2, ""))
    return e


def run_corpus(opts: ClassifyOptions | None = None) -> list[CorpusResult]:
    opts = opts or ClassifyOptions()
    out = []
    for name, expected, fn, note in _entries():
        try:
            got = fn(opts)
        except Exception as exc:  # a crash is a mismatch, reported not raised
            got = f"error: {exc}"
        out.append(CorpusResult(name, expected, got, note))
    return out
