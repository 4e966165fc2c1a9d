"""Pythagoras-number verdicts for surfaces z^2 = f(x, y), and the du Val table."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .admissibility import (DEFAULT_DIRECTIONS, DEFAULT_HEIGHT, find_witness,
                            is_strictly_admissible)
from .polycore import LinMap, Poly, compose_linear, parse_poly, real_square_root
from .polycore.poly import format_poly
from .sosengine import SearchOptions, SosCertificate, decompose_sos

INFINITE = "Infinite"
FINITE = "Finite"
UNKNOWN = "Unknown"

MAIN = "Main"
SOS_LENGTH = "SosLength"
NEG_SOS = "NegSos"
SQUARE = "SquareDegenerate"

OPEN_REGION_NOTE = (
    "None of the available criteria applies. The expectation recorded alongside the open "
    "problem is that the Pythagoras number is infinite when f is positive but not SOS or "
    "indefinite, and finite when f is negative with -f not SOS. The related conjecture, for "
    "irreducible defining equations, ties infinitude to the equation changing sign on R^3. "
    "This is documentation only and is never used as a verdict."
)

_CASE_TEXT = {
    "a": "f looks nonnegative on samples and no SOS decomposition was found",
    "b": "f looks nonpositive on samples and no SOS decomposition of -f was found",
    "c": "f takes both signs on samples and no admissibility witness was found",
}


@dataclass(frozen=True)
class ClassifyOptions:
    height: int = DEFAULT_HEIGHT
    directions: int = DEFAULT_DIRECTIONS
    sos: SearchOptions = field(default_factory=SearchOptions)
    seed: int = 0


@dataclass(frozen=True)
class SurfaceVerdict:
    kind: str
    rule: str | None
    f: Poly
    evidence: dict = field(default_factory=dict)
    annotation: str | None = None

    @property
    def definite(self) -> bool:
        return self.kind != UNKNOWN

    def label(self) -> str:
        return f"{self.kind} ({self.rule})" if self.rule else self.kind

    def to_json(self) -> dict:
        ev = {}
        for key, val in self.evidence.items():
            ev[key] = val.to_json() if hasattr(val, "to_json") else val
        return {"verdict": self.kind, "rule": self.rule, "f": self.f.to_json(),
                "evidence": ev, "annotation": self.annotation}


def _sample_signs(f: Poly, seed: int) -> tuple[bool, bool]:
    rng = random.Random(seed)
    pts = [(a / 2, b / 2) for a in range(-8, 9) for b in range(-8, 9)]
    pts += [(rng.uniform(-20, 20), rng.uniform(-20, 20)) for _ in range(400)]
    vals = [f.evaluate_float(p) for p in pts]
    return any(v > 0 for v in vals), any(v < 0 for v in vals)


def problem_case(f: Poly, seed: int = 0) -> str:
    """Best-effort (sampled, heuristic) match to the three open cases a/b/c."""
    pos, neg = _sample_signs(f, seed)
    if pos and neg:
        return "c"
    return "b" if neg else "a"


def classify_surface(f: Poly, opts: ClassifyOptions | None = None) -> SurfaceVerdict:
    """Ladder: zero, square, f SOS, admissible, -f SOS, otherwise Unknown."""
    opts = opts or ClassifyOptions()
    if f.nvars != 2:
        raise ValueError("classify_surface expects f(x, y)")
    if f.is_zero:
        return SurfaceVerdict(UNKNOWN, None, f, annotation="f = 0 lies outside every criterion")
    rs = real_square_root(f)
    if rs is not None:
        w, g = rs
        assert (g * g).scale(w) == f
        return SurfaceVerdict(INFINITE, SQUARE, f,
                              {"square_root": g.to_json(), "weight": str(w)})
    cert = decompose_sos(f, opts.sos)
    if cert.is_decomposition and cert.verify():
        return SurfaceVerdict(INFINITE, SOS_LENGTH, f,
                              {"decomposition": cert, "not_a_square": True})
    neg: SosCertificate | None = None
    if not f.is_constant and f.constant_term == 0:
        verdict = find_witness(f, opts.height, opts.directions, opts.sos)
        if verdict.kind == "StrictlyAdmissible":
            assert is_strictly_admissible(f)
            return SurfaceVerdict(INFINITE, MAIN, f, {"witness": LinMap.identity().to_json(),
                                                      "strict": True})
        if verdict.kind == "AdmissibleWith":
            composed = compose_linear(f, verdict.witness)
            assert is_strictly_admissible(composed)
            return SurfaceVerdict(INFINITE, MAIN, f, {"witness": verdict.witness.to_json(),
                                                      "composed": composed.to_json()})
        if verdict.kind == "NotAdmissible":
            neg = verdict.certificate
    if neg is None:
        c = decompose_sos(-f, opts.sos)
        neg = c if c.is_decomposition else None
    if neg is not None and neg.verify():
        return SurfaceVerdict(FINITE, NEG_SOS, f, {"decomposition": neg})
    case = problem_case(f, opts.seed)
    return SurfaceVerdict(UNKNOWN, None, f,
                          {"problem_case": case, "case_note": _CASE_TEXT[case] + " (sampled)"},
                          annotation=OPEN_REGION_NOTE)


def classify_invariance_check(f: Poly, M: LinMap, opts: ClassifyOptions | None = None) -> bool:
    """False only if f and f o M get contradictory definite verdicts."""
    a = classify_surface(f, opts).kind
    b = classify_surface(compose_linear(f, M), opts).kind
    return not ({a, b} == {INFINITE, FINITE})


# ---- du Val singularities -------------------------------------------------

@dataclass(frozen=True)
class DuValSpec:
    family: str
    n: int | None = None

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        if fam == "A":
            if self.n is None or self.n < 1:
                raise ValueError("A_n needs n >= 1")
        elif fam == "D":
            if self.n is None or self.n < 4:
                raise ValueError("D_n needs n >= 4")
        elif fam in ("E6", "E7", "E8"):
            if self.n not in (None, int(fam[1])):
                raise ValueError(f"{fam} takes no index")
            object.__setattr__(self, "n", None)
        else:
            raise ValueError(f"unknown du Val family {self.family!r}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.n}" if self.n is not None else self.family

    def equation(self) -> str:
        """The defining equation Q(x, y, z) as text."""
        if self.family == "A":
            return f"z^2 + x^2 + y^{self.n + 1}"
        if self.family == "D":
            return f"z^2 + x^2*y + y^{self.n - 1}"
        return {"E6": "z^2 + x^3 + y^4", "E7": "z^2 + x^3 + x*y^2",
                "E8": "z^2 + x^3 + y^5"}[self.family]

    @property
    def expected(self) -> str:
        return FINITE if self.family == "A" and self.n % 2 == 1 else INFINITE

    @classmethod
    def parse(cls, family: str, n: int | None = None) -> "DuValSpec":
        fam = family.upper()
        if fam.startswith(("A", "D")) and len(fam) > 1 and n is None:
            return cls(fam[0], int(fam[1:]))
        return cls(fam, n)


def surface_to_f(text: str) -> Poly:
    """f with Q = c*(z^2 - f) for a surface equation Q = 0 quadratic in z."""
    Q = parse_poly(text, ("x", "y", "z"))
    zz = Q.coeff((0, 0, 2))
    rest = {}
    for m, c in Q.terms.items():
        if m[2] == 0:
            rest[m[:2]] = c
        elif m != (0, 0, 2):
            raise ValueError("the surface must read c*z^2 + g(x, y)")
    if zz == 0:
        raise ValueError("the surface must contain z^2")
    return Poly(rest).scale(-1 / zz)


def du_val(spec: DuValSpec, opts: ClassifyOptions | None = None) -> tuple[Poly, SurfaceVerdict]:
    f = surface_to_f(spec.equation())
    return f, classify_surface(f, opts)


def all_du_val(max_n: int = 8) -> list[DuValSpec]:
    specs = [DuValSpec("A", n) for n in range(1, max_n + 1)]
    specs += [DuValSpec("D", n) for n in range(4, max_n + 1)]
    return specs + [DuValSpec("E6"), DuValSpec("E7"), DuValSpec("E8")]


def describe(v: SurfaceVerdict) -> str:
    lines = [f"f = {format_poly(v.f)}", v.label()]
    if v.kind == UNKNOWN and v.evidence.get("problem_case"):
        lines.append(f"resembles open case {v.evidence['problem_case']}): {v.evidence['case_note']}")
    return "\n".join(lines)
