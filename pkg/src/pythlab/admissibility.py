"""Strict admissibility, witness search under linear maps, and refutation via -f SOS.

For ``f o M`` the extremal block ``(b, d, alpha)`` depends on M only through
its second column P: replacing the first column c by ``mu*c + t*P``
(``mu != 0``) substitutes ``x -> mu*x``, ``y -> y + t*x`` in ``f o M``,
which keeps the y-degree-d slice up to the factor ``mu**b``.  A negative
``mu`` can flip the sign of alpha only when b is odd, and then the
polynomial is strictly admissible anyway.  So one representative matrix
per primitive second column decides the whole integer grid of that
height.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .polycore import LinMap, Poly, compose_linear, leading_block, top_form
from .sosengine import SearchOptions, SosCertificate, decompose_sos

STRICT = "StrictlyAdmissible"
ADMISSIBLE_WITH = "AdmissibleWith"
NOT_ADMISSIBLE = "NotAdmissible"
UNKNOWN = "Unknown"

DEFAULT_HEIGHT = 8
DEFAULT_DIRECTIONS = 10_000


def is_strictly_admissible(f: Poly) -> bool:
    if f.nvars != 2 or f.is_constant or f.constant_term != 0:
        return False
    b, d, alpha = leading_block(f)
    return (alpha > 0 and b % 2 == 0 and d % 2 == 0) or b % 2 == 1 or d % 2 == 1


def _primitive_directions():
    """Primitive integer vectors by height, starting with the positive y-axis."""
    yield (0, 1)
    yield (1, 0)
    yield (0, -1)
    yield (-1, 0)
    h = 1
    while True:
        ring = []
        for p in range(-h, h + 1):
            for q in range(-h, h + 1):
                if max(abs(p), abs(q)) == h and gcd(p, q) == 1 and 0 not in (p, q):
                    ring.append((p, q))
        ring.sort(key=lambda v: (abs(v[0]) + abs(v[1]), -v[1], -v[0]))
        yield from ring
        h += 1


def _directions_up_to(height: int):
    for v in _primitive_directions():
        if max(abs(v[0]), abs(v[1])) > height:
            return
        yield v


def positive_direction(h: Poly, budget: int = DEFAULT_DIRECTIONS) -> tuple[Fraction, Fraction] | None:
    """A rational direction P with h(P) > 0, scanning ``budget`` primitive directions."""
    if h.is_zero:
        raise ValueError("positive_direction needs a nonzero form")
    degs = {sum(m) for m in h.terms}
    if len(degs) != 1:
        raise ValueError("positive_direction needs a homogeneous polynomial")
    for count, (p, q) in enumerate(_primitive_directions()):
        if count >= budget:
            return None
        point = (Fraction(p), Fraction(q))
        if h.evaluate(point) > 0:
            return point
    return None


def column_map(p: Fraction, q: Fraction) -> LinMap:
    """An invertible map whose second column is (p, q)."""
    if q != 0:
        return LinMap(Fraction(1), Fraction(p), Fraction(0), Fraction(q))
    return LinMap(Fraction(0), Fraction(p), Fraction(1), Fraction(0))


@dataclass(frozen=True)
class AdmissibilityVerdict:
    kind: str
    witness: LinMap | None = None
    certificate: SosCertificate | None = None
    budget: dict = field(default_factory=dict)

    @property
    def is_admissible(self) -> bool:
        return self.kind in (STRICT, ADMISSIBLE_WITH)

    def to_json(self) -> dict:
        return {
            "verdict": self.kind,
            "witness": self.witness.to_json() if self.witness else None,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "budget": self.budget or None,
        }


def certify_not_admissible(f: Poly, opts: SearchOptions | None = None) -> SosCertificate | None:
    """Exact decomposition of -f when one is found.

    A strictly admissible polynomial is positive somewhere, and so is every
    composition of an admissible one, so -f SOS rules admissibility out.
    """
    _require_candidate(f)
    cert = decompose_sos(-f, opts)
    if cert.is_decomposition and cert.verify():
        return cert
    return None


def _require_candidate(f: Poly) -> None:
    if f.nvars != 2:
        raise ValueError("admissibility is defined for polynomials in x, y")
    if f.is_constant:
        raise ValueError("admissibility needs a non-constant polynomial")
    if f.constant_term != 0:
        raise ValueError("admissibility needs f(0,0) = 0")


def _column_decides(f: Poly, h: Poly, p: int, q: int, stats: dict) -> LinMap | None:
    value = h.evaluate((p, q))
    if value < 0 and h.degree % 2 == 0:
        return None  # y^D survives with a negative even-degree coefficient
    if value == 0:
        stats["compositions"] += 1
    M = column_map(Fraction(p), Fraction(q))
    return M if is_strictly_admissible(compose_linear(f, M)) else None


def find_witness(f: Poly, budget: int = DEFAULT_HEIGHT, directions: int = DEFAULT_DIRECTIONS,
                 opts: SearchOptions | None = None) -> AdmissibilityVerdict:
    """Search order: identity, swap, the top-form direction, -f SOS, then the grid."""
    _require_candidate(f)
    if is_strictly_admissible(f):
        return AdmissibilityVerdict(STRICT)
    swap = LinMap.swap()
    if is_strictly_admissible(compose_linear(f, swap)):
        return AdmissibilityVerdict(ADMISSIBLE_WITH, witness=swap)
    h = top_form(f)
    point = positive_direction(h, directions)
    if point is not None:
        M = column_map(*point)
        if is_strictly_admissible(compose_linear(f, M)):
            return AdmissibilityVerdict(ADMISSIBLE_WITH, witness=M)
    cert = certify_not_admissible(f, opts)
    if cert is not None:
        return AdmissibilityVerdict(NOT_ADMISSIBLE, certificate=cert)
    stats = {"height": budget, "directions": directions, "columns_tested": 0, "compositions": 0}
    for p, q in _directions_up_to(budget):
        stats["columns_tested"] += 1
        M = _column_decides(f, h, p, q, stats)
        if M is not None:
            return AdmissibilityVerdict(ADMISSIBLE_WITH, witness=M)
    return AdmissibilityVerdict(UNKNOWN, budget=stats)
