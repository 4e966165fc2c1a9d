"""Minimal number of squares, with exact lower-bound witnesses where available."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
import sympy

from ..exact import rank_mod_p
from ..polycore import Poly, real_square_root
from .certificate import DECOMPOSITION, SosCertificate, verify_decomposition
from .gram import GramSystem, SearchOptions, _normalize_square, primal_search
from .core import decompose_sos


@dataclass(frozen=True)
class TwoSquaresWitness:
    """Exact evidence that f is not a sum of two real squares.

    If f = p^2 + q^2 then f = (p + iq)(p - iq) splits over C, so an
    absolutely irreducible non-constant f is never a sum of two squares.
    Absolute irreducibility is certified by the differential criterion:
    under gcd(f, f_x) = 1 the solutions (g, h) of
    ``d/dy (g/f) = d/dx (h/f)`` with bounded bidegrees form a space whose
    dimension is the number of absolutely irreducible factors.  The pair
    (f_x, f_y) always solves it, so a coefficient matrix of rank
    ``unknowns - 1`` (checked modulo a prime, which can only lower the
    rank) leaves exactly one factor.
    """

    unknowns: int
    rank: int
    prime: int
    swapped: bool

    def to_json(self) -> dict:
        return {"method": "absolute irreducibility", "unknowns": self.unknowns,
                "rank_mod_p": self.rank, "prime": self.prime, "swapped": self.swapped}


@dataclass
class LengthResult:
    length: int | None
    decomposition: SosCertificate | None
    lower_bound: int
    upper_bound: int | None
    lower_bound_inconclusive: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.length is not None and not self.lower_bound_inconclusive

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "lower_bound_inconclusive": self.lower_bound_inconclusive,
            "witnesses": self.witnesses,
            "decomposition": self.decomposition.to_json() if self.decomposition else None,
        }


def _to_sympy(f: Poly, gens):
    return sympy.Poly({m: sympy.Rational(c.numerator, c.denominator) for m, c in f.terms.items()},
                      *gens)


def _ruppert_matrix(f: Poly) -> tuple[np.ndarray, int]:
    """Integer matrix of g_y f - g f_y - h_x f + h f_x = 0 in the coefficients of g, h."""
    m = f.degree_in(0)
    n = f.degree_in(1)
    g_monos = [(a, b) for a in range(m) for b in range(n + 1)]
    h_monos = [(a, b) for a in range(m + 1) for b in range(n)]
    fx, fy = f.derivative(0), f.derivative(1)
    columns = []
    for a, b in g_monos:
        g = Poly({(a, b): 1})
        columns.append(g.derivative(1) * f - g * fy)
    for a, b in h_monos:
        h = Poly({(a, b): 1})
        columns.append(h * fx - h.derivative(0) * f)
    rows = sorted({mono for col in columns for mono in col.terms})
    index = {mono: i for i, mono in enumerate(rows)}
    A = np.zeros((len(rows), len(columns)), dtype=object)
    for j, col in enumerate(columns):
        for mono, c in col.terms.items():
            A[index[mono], j] = c
    return A, len(columns)


def two_squares_obstruction(f: Poly, prime: int = 2_147_483_629) -> TwoSquaresWitness | None:
    """Certify that f is not a sum of two squares in R[x, y], or return None."""
    if f.nvars != 2 or f.is_constant:
        return None
    swapped = False
    g = f.primitive_integer()[1]
    if g.degree_in(0) == 0 or g.degree_in(1) == 0:
        return None  # univariate: splits into linear factors over C
    x, y = sympy.symbols("x y")
    sg = _to_sympy(g, (x, y))
    if sympy.gcd(sg, sg.diff(x)).total_degree() > 0:
        if sympy.gcd(sg, sg.diff(y)).total_degree() > 0:
            return None
        g, swapped = g.swap_xy(), True
    A, unknowns = _ruppert_matrix(g)
    A = np.vectorize(lambda v: int(Fraction(v)))(A) if A.size else A
    r = rank_mod_p(A, prime)
    if r != unknowns - 1:
        return None
    return TwoSquaresWitness(unknowns, r, prime, swapped)


def min_length(f: Poly, max_k: int = 8, opts: SearchOptions | None = None,
               hint: SosCertificate | None = None) -> LengthResult:
    """Least number of squares of f, up to ``max_k``.

    The lower bound is certified exactly for the first two steps only:
    k >= 2 by failure of the square-root test, k >= 3 by the two-squares
    obstruction.  Beyond that the result carries
    ``lower_bound_inconclusive``.  ``hint`` may supply a known
    decomposition; it is verified exactly before use.
    """
    opts = opts or SearchOptions()
    if f.is_zero:
        return LengthResult(0, SosCertificate(DECOMPOSITION, f, ()), 0, 0, False)
    rs = real_square_root(f)
    if rs is not None:
        cert = SosCertificate(DECOMPOSITION, f, (_normalize_square(*rs),), method="square root")
        return LengthResult(1, cert, 1, 1, False, {"square_root": True})
    witnesses: dict = {"not_a_square": True}
    lower = 2
    best = None
    cert = decompose_sos(f, opts)
    if cert.is_decomposition:
        best = cert
    if hint is not None and hint.is_decomposition and hint.target == f and hint.verify():
        if best is None or hint.count < best.count:
            best = hint
    if best is None:
        return LengthResult(None, None, lower, None, True, witnesses)
    best = _shrink(f, best, lower, opts)
    upper = best.count
    if upper >= 3:
        obstruction = two_squares_obstruction(f)
        if obstruction is not None:
            lower = 3
            witnesses["two_squares"] = obstruction.to_json()
    inconclusive = lower < upper
    if upper > max_k:
        return LengthResult(None, best, lower, upper, inconclusive, witnesses)
    return LengthResult(upper, best, lower, upper, inconclusive, witnesses)


def _shrink(f: Poly, cert: SosCertificate, lower: int, opts: SearchOptions) -> SosCertificate:
    """Look for a decomposition with fewer squares via rank-capped Gram search."""
    if cert.info.get("unique_gram"):
        return cert  # every Gram matrix equals this one, so its rank is minimal
    system = GramSystem.for_target(f)
    if len(system.basis) == 0:
        return cert
    for k in range(lower, cert.count):
        capped = replace(opts, max_rank=k, iters=min(opts.iters, 20_000))
        res = primal_search(system, capped)
        if res.squares is not None and len(res.squares) <= k and verify_decomposition(f, res.squares):
            return SosCertificate(DECOMPOSITION, f, tuple(res.squares), method="gram rank-capped")
    return cert
