"""Arithmetic in R[x, y, sqrt(f)] and the one-step reduction of the infinitude proof.

An element is ``h1 + sqrt(f) * h2``.  A representation of a target T is a
list of pairs ``(f_i, g_i)`` with optional positive rational weights w_i
such that

    T = sum w_i (f_i^2 + f g_i^2)   and   sum w_i f_i g_i = 0,

i.e. T is the sum of the ring squares ``w_i (f_i + sqrt(f) g_i)^2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import affine_solution, householder, round_rational
from .polycore import X, Y, Poly, divide_binomial, real_square_root, substitute_power
from .sosengine import SearchOptions, decompose_sos
from .witness import AssocSequence


class DegenerateModulusError(ValueError):
    pass


class ModulusMismatchError(ValueError):
    pass


def _check_modulus(f: Poly) -> None:
    if f.is_zero or real_square_root(f) is not None:
        raise DegenerateModulusError(
            "modulus is a square: the ring splits as R[x,y] x R[x,y] and is not modelled")


@dataclass(frozen=True)
class RingElem:
    h1: Poly
    h2: Poly
    modulus: Poly

    def __post_init__(self):
        _check_modulus(self.modulus)

    def _same(self, other: "RingElem") -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatchError("elements live in rings with different moduli")

    def __add__(self, other: "RingElem") -> "RingElem":
        self._same(other)
        return RingElem(self.h1 + other.h1, self.h2 + other.h2, self.modulus)

    def __mul__(self, other: "RingElem") -> "RingElem":
        return ring_mul(self, other)

    def __str__(self) -> str:
        from .polycore import format_poly

        return f"({format_poly(self.h1)}) + sqrt({format_poly(self.modulus)})*({format_poly(self.h2)})"


def ring_mul(u: RingElem, v: RingElem) -> RingElem:
    u._same(v)
    f = u.modulus
    return RingElem(u.h1 * v.h1 + f * u.h2 * v.h2, u.h1 * v.h2 + u.h2 * v.h1, f)


Pair = tuple[Poly, Poly]


def expand_square_sum(pairs: Sequence[Pair], modulus: Poly,
                      weights: Sequence[Fraction] | None = None) -> tuple[Poly, Poly]:
    """``(sym, cross)`` with sum w_i (f_i + sqrt(f) g_i)^2 = sym + sqrt(f) * cross."""
    if not pairs:
        raise ValueError("need at least one pair")
    weights = weights if weights is not None else [Fraction(1)] * len(pairs)
    nv = modulus.nvars
    sym, cross = Poly.zero(nv), Poly.zero(nv)
    for w, (fi, gi) in zip(weights, pairs):
        sym = sym + (fi * fi + modulus * gi * gi).scale(w)
        cross = cross + (fi * gi).scale(2 * w)
    return sym, cross


@dataclass(frozen=True)
class RingRepresentation:
    modulus: Poly
    pairs: tuple[Pair, ...]
    target: Poly
    weights: tuple[Fraction, ...] | None = None

    @property
    def unit_weights(self) -> bool:
        return self.weights is None or all(w == 1 for w in self.weights)

    def weight_list(self) -> list[Fraction]:
        return list(self.weights) if self.weights is not None else [Fraction(1)] * len(self.pairs)

    def to_json(self) -> dict:
        out = {
            "modulus": self.modulus.to_json(),
            "target": self.target.to_json(),
            "pairs": [{"f": fi.to_json(), "g": gi.to_json()} for fi, gi in self.pairs],
        }
        if self.weights is not None:
            out["weights"] = [str(w) for w in self.weights]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RingRepresentation":
        weights = tuple(Fraction(w) for w in data["weights"]) if "weights" in data else None
        return cls(Poly.from_json(data["modulus"]),
                   tuple((Poly.from_json(p["f"]), Poly.from_json(p["g"])) for p in data["pairs"]),
                   Poly.from_json(data["target"]), weights)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    failed: str | None = None  # "symmetric" or "cross" or "weights"
    residual: Poly | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_representation(rep: RingRepresentation) -> VerifyResult:
    if any(w <= 0 for w in rep.weight_list()):
        return VerifyResult(False, "weights")
    if not rep.pairs:
        return VerifyResult(rep.target.is_zero, None if rep.target.is_zero else "symmetric",
                            None if rep.target.is_zero else rep.target)
    sym, cross = expand_square_sum(rep.pairs, rep.modulus, rep.weight_list())
    if sym != rep.target:
        return VerifyResult(False, "symmetric", rep.target - sym)
    if not cross.is_zero:
        return VerifyResult(False, "cross", cross.scale(Fraction(1, 2)))
    return VerifyResult(True)


class ReductionError(ValueError):
    """The input representation violates the reduction at ``step`` (0 = input checks)."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


@dataclass
class ReductionTrace:
    constants: list[Fraction] = field(default_factory=list)
    reflection: list[list[Fraction]] | None = None
    last_cofactor: Poly | None = None


def _target_index(rep: RingRepresentation, seq: AssocSequence) -> int:
    for n in range(len(seq.polys), 1, -1):
        if seq.poly(n) == rep.target:
            return n
    raise ReductionError(0, "target is not F_n (n >= 2) of the given sequence")


def reduce_representation(rep: RingRepresentation, seq: AssocSequence,
                          trace: ReductionTrace | None = None) -> RingRepresentation:
    """One reduction step: a representation of F_n becomes one of F_(n-1) with one pair fewer."""
    if rep.modulus != seq.base:
        raise ReductionError(0, "modulus differs from the sequence base polynomial")
    if not rep.unit_weights:
        raise ReductionError(0, "the reduction works with unit weights only")
    check = verify_representation(rep)
    if not check:
        raise ReductionError(0, f"input representation fails the {check.failed} identity")
    n = _target_index(rep, seq)
    r = seq.exponent(n - 1)
    trace = trace if trace is not None else ReductionTrace()

    # (1) along y = x^r the target is 1, so every g_i vanishes and every f_i is constant
    consts = []
    for fi, gi in rep.pairs:
        if not substitute_power(gi, r).is_zero:
            raise ReductionError(1, "some g_i does not vanish on y = x^r")
        fs = substitute_power(fi, r)
        if not fs.is_constant:
            raise ReductionError(1, "some f_i is not constant on y = x^r")
        consts.append(fs.constant_term)
    if sum(a * a for a in consts) != 1:
        raise ReductionError(1, "the constants a_i do not satisfy sum a_i^2 = 1")
    trace.constants = consts

    # (2) peel off the binomial
    f2, g2 = [], []
    for (fi, gi), a in zip(rep.pairs, consts):
        q, s = divide_binomial(fi - a, r)
        if not s.is_zero:
            raise ReductionError(2, "f_i - a_i is not divisible by y - x^r")
        f2.append(q)
        q, s = divide_binomial(gi, r)
        if not s.is_zero:
            raise ReductionError(2, "g_i is not divisible by y - x^r")
        g2.append(q)

    # (3) rational reflection taking (a_1..a_L) to (0..0,1)
    H = householder(consts)
    trace.reflection = H
    L = len(consts)
    f2 = [_combine(H[i], f2) for i in range(L)]
    g2 = [_combine(H[i], g2) for i in range(L)]

    # (4) the last cofactor is a multiple of y - x^r, hence zero by degree
    q, s = divide_binomial(f2[-1], r)
    trace.last_cofactor = f2[-1]
    if not s.is_zero:
        raise ReductionError(4, "last cofactor is not divisible by y - x^r")
    if not q.is_zero:
        raise ReductionError(4, f"degree contradiction: nonzero last cofactor against 2r = {2 * r} "
                                f"> deg F_{n - 1} = {seq.poly(n - 1).degree}")

    # (5) drop the last pair
    if not g2[-1].is_zero:
        raise ReductionError(5, "the last g cofactor is nonzero, so the pair cannot be dropped")
    out = RingRepresentation(rep.modulus, tuple(zip(f2[:-1], g2[:-1])), seq.poly(n - 1))
    check = verify_representation(out)
    if not check:
        raise ReductionError(5, f"reduced representation fails the {check.failed} identity")
    return out


def _combine(row: Sequence[Fraction], polys: Sequence[Poly]) -> Poly:
    out = Poly.zero(polys[0].nvars if polys else 2)
    for c, p in zip(row, polys):
        if c:
            out = out + p.scale(c)
    return out


def representation_from_decomposition(target: Poly, modulus: Poly, polys: Sequence[Poly]) -> RingRepresentation:
    """Embed a polynomial sum of squares with g_i = 0."""
    zero = Poly.zero(modulus.nvars)
    return RingRepresentation(modulus, tuple((p, zero) for p in polys), target)


def rotate_representation(rep: RingRepresentation, Q: Sequence[Sequence]) -> RingRepresentation:
    """Apply an orthogonal rational matrix to the pair vector; identities are preserved."""
    fs = [p for p, _ in rep.pairs]
    gs = [g for _, g in rep.pairs]
    pairs = tuple((_combine(row, fs), _combine(row, gs)) for row in Q)
    return RingRepresentation(rep.modulus, pairs, rep.target, rep.weights)


# ---- bounded search -------------------------------------------------------

def _monomials(deg: int) -> list[tuple[int, int]]:
    return [(i, d - i) for d in range(deg + 1) for i in range(d, -1, -1)]


def radical_multiple(target: Poly, modulus: Poly, deg_bound: int) -> Poly | None:
    """G with target = modulus * G and deg G <= 2*deg_bound, by exact linear algebra."""
    monos = _monomials(2 * deg_bound)
    cols = [modulus * Poly({m: 1}) for m in monos]
    rows = sorted({m for c in cols for m in c.terms} | set(target.terms))
    A = [[c.coeff(m) for c in cols] for m in rows]
    sol = affine_solution(A, [target.coeff(m) for m in rows])
    if sol is None:
        return None
    return Poly({m: c for m, c in zip(monos, sol[0]) if c})


def search_representation(target: Poly, modulus: Poly, k: int, deg_bound: int,
                          radical_only: bool = False, opts: SearchOptions | None = None,
                          seed: int = 0, restarts: int = 8) -> RingRepresentation | None:
    """Look for a k-pair representation with pair degrees at most ``deg_bound``.

    The single-pair case and the radical-only case (all f_i = 0) are decided
    exactly.  Otherwise pure polynomial decompositions are tried first, then
    a seeded least-squares search whose rounded output must verify exactly.
    A None result is evidence at this degree bound, not a proof.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if deg_bound > 8:
        raise ValueError("deg_bound above 8 is outside desk scale")
    _check_modulus(modulus)
    opts = opts or SearchOptions()
    zero = Poly.zero(modulus.nvars)

    G = radical_multiple(target, modulus, deg_bound)
    if G is not None:
        rep = _radical_rep(target, modulus, G, k, deg_bound, opts)
        if rep is not None:
            return rep
    if radical_only:
        return None
    rs = real_square_root(target)
    if rs is not None and rs[1].degree <= deg_bound:
        rep = RingRepresentation(modulus, ((rs[1], zero),), target, (rs[0],))
        return rep if verify_representation(rep) else None
    if k == 1:
        return None  # one pair forces f_1 g_1 = 0, covered by the two exact cases
    cert = decompose_sos(target, opts)
    if cert.is_decomposition and cert.count <= k and all(p.degree <= deg_bound for p in cert.polys()):
        rep = RingRepresentation(modulus, tuple((p, zero) for p in cert.polys()), target,
                                 tuple(w for w, _ in cert.squares))
        if verify_representation(rep):
            return rep
    return _numeric_search(target, modulus, k, deg_bound, seed, restarts)


def _radical_rep(target, modulus, G, k, deg_bound, opts) -> RingRepresentation | None:
    zero = Poly.zero(modulus.nvars)
    if G.is_zero:
        return None
    rs = real_square_root(G)
    if rs is not None:
        squares = [rs]
    else:
        cert = decompose_sos(G, opts)
        if not cert.is_decomposition:
            return None
        squares = list(cert.squares)
    if len(squares) > k or any(p.degree > deg_bound for _, p in squares):
        return None
    rep = RingRepresentation(modulus, tuple((zero, p) for _, p in squares), target,
                             tuple(w for w, _ in squares))
    return rep if verify_representation(rep) else None


def _numeric_search(target: Poly, modulus: Poly, k: int, deg_bound: int,
                    seed: int, restarts: int) -> RingRepresentation | None:
    from scipy.optimize import least_squares

    monos = _monomials(deg_bound)
    n = len(monos)
    fdeg = max(modulus.degree, 0)
    out_monos = _monomials(2 * deg_bound + fdeg)
    index = {m: i for i, m in enumerate(out_monos)}
    tvec = np.zeros(len(out_monos))
    for m, c in target.terms.items():
        if m not in index:
            return None
        tvec[index[m]] = float(c)
    # products of basis monomials, and times the modulus, as sparse index lists
    prod = [[index[(a[0] + b[0], a[1] + b[1])] for b in monos] for a in monos]
    fmod = [(m, float(c)) for m, c in modulus.terms.items()]

    def poly_mul(u, v):
        out = np.zeros(len(out_monos))
        np.add.at(out, flat, np.outer(u, v).ravel())
        return out

    # multiplication by the modulus on polynomials of degree <= 2*deg_bound
    S = np.zeros((len(out_monos), len(out_monos)))
    for i, mm in enumerate(out_monos):
        if sum(mm) > 2 * deg_bound:
            continue
        for m, c in fmod:
            S[index[(mm[0] + m[0], mm[1] + m[1])], i] += c
    flat = np.array(prod).ravel()

    def residual(z):
        F = z[: k * n].reshape(k, n)
        Gm = z[k * n:].reshape(k, n)
        sym = sum(poly_mul(F[i], F[i]) for i in range(k))
        gg = sum(poly_mul(Gm[i], Gm[i]) for i in range(k))
        gshift = S @ gg
        cross = sum(poly_mul(F[i], Gm[i]) for i in range(k))
        return np.concatenate([sym + gshift - tvec, cross])

    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        z0 = rng.normal(scale=0.5, size=2 * k * n)
        sol = least_squares(residual, z0, method="lm", xtol=1e-15, ftol=1e-15, max_nfev=4000)
        if np.linalg.norm(residual(sol.x)) > 1e-6:
            continue
        rep = _round_solution(sol.x, target, modulus, k, monos)
        if rep is not None:
            return rep
    return None


def _round_solution(z: np.ndarray, target: Poly, modulus: Poly, k: int,
                    monos: list) -> RingRepresentation | None:
    """Fix the orthogonal gauge by a QR step, then round rows with rational weights."""
    n = len(monos)
    Z = np.hstack([z[: k * n].reshape(k, n), z[k * n:].reshape(k, n)])
    R = np.linalg.qr(Z, mode="r")
    rows = []
    for row in R:
        nz = np.nonzero(np.abs(row) > 1e-7)[0]
        if nz.size == 0:
            continue
        piv = nz[0]
        rows.append((row[piv] ** 2, row / row[piv]))
    for den in (1, 2, 4, 8, 16, 64, 256, 1024, 2**12, 2**16, 2**20):
        pairs, weights = [], []
        for w, u in rows:
            vals = [round_rational(v, den) for v in u]
            fi = Poly({m: c for m, c in zip(monos, vals[:n]) if c})
            gi = Poly({m: c for m, c in zip(monos, vals[n:]) if c})
            pairs.append((fi, gi))
            weights.append(round_rational(w, den))
        if any(w <= 0 for w in weights):
            continue
        rep = RingRepresentation(modulus, tuple(pairs), target, tuple(weights))
        if verify_representation(rep):
            return rep
    return None
