"""Exact partial facial reduction for Gram systems.

Works on a Gram parametrisation ``target = u^T S u`` where ``u`` is a list
of basis polynomials (initially monomials).  Whenever a principal block of
S is fixed by the linear constraints and singular, every PSD solution must
annihilate its kernel, so ``u`` can be replaced by a smaller basis.  When
the constraints end up pinning S to a single matrix, PSD-ness of that
matrix decides the question exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from math import gcd

import sympy

from ..exact import affine_solution, ldl_psd
from ..polycore import Poly
from .basis import SupportBasis


@dataclass
class FaceResult:
    basis: list[Poly]
    unique: list[list[Fraction]] | None  # the only candidate S, when pinned down
    infeasible: bool = False
    rounds: int = 0


def _pairs(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(k) for j in range(i, k)]


def _system(target: Poly, us: list[Poly]):
    k = len(us)
    pairs = _pairs(k)
    prods = {}
    monos = set(target.terms)
    for i, j in pairs:
        p = us[i] * us[j]
        prods[(i, j)] = p
        monos.update(p.terms)
    monos = sorted(monos)
    A = [[prods[pr].coeff(m) * (1 if pr[0] == pr[1] else 2) for pr in pairs] for m in monos]
    b = [target.coeff(m) for m in monos]
    return pairs, A, b


def _determined_monomial(target: Poly, basis: SupportBasis):
    """Round one, monomial basis: an entry is fixed iff it alone makes its product."""
    fixed: dict[tuple[int, int], Fraction] = {}
    for m, pairs in basis.products.items():
        if len(pairs) == 1:
            i, j = pairs[0]
            fixed[(i, j)] = target.coeff(m) / (1 if i == j else 2)
    for m in target.terms:
        if m not in basis.products:
            return None
    return fixed


def _determined_general(target: Poly, us: list[Poly]):
    pairs, A, b = _system(target, us)
    sol = affine_solution(A, b)
    if sol is None:
        return None, False
    x0, null = sol
    fixed = {}
    for idx, pr in enumerate(pairs):
        if all(v[idx] == 0 for v in null):
            fixed[pr] = x0[idx]
    return fixed, not null


def _kernel_vectors(k: int, fixed: dict[tuple[int, int], Fraction]):
    """Kernel vectors forced by fixed principal blocks; None signals infeasibility."""
    def get(i, j):
        return fixed.get((i, j) if i <= j else (j, i))

    diag = [i for i in range(k) if (i, i) in fixed]
    kernel: list[list[Fraction]] = []
    for i in diag:
        if fixed[(i, i)] < 0:
            return None
        if fixed[(i, i)] == 0:
            v = [Fraction(0)] * k
            v[i] = Fraction(1)
            kernel.append(v)
    # greedy cliques of mutually fixed entries among positive diagonals
    pos = [i for i in diag if fixed[(i, i)] > 0]
    seen_blocks = set()
    for start in pos:
        block = [start]
        for j in pos:
            if j != start and all(get(j, i) is not None for i in block):
                block.append(j)
        block.sort()
        key = tuple(block)
        if len(block) < 2 or key in seen_blocks:
            continue
        seen_blocks.add(key)
        M = [[get(a, b) for b in block] for a in block]
        res = ldl_psd(M)
        if not res.psd:
            return None
        if res.rank < len(block):
            sol = affine_solution(M, [0] * len(block))
            for vec in sol[1]:
                v = [Fraction(0)] * k
                for a, c in zip(block, vec):
                    v[a] = c
                kernel.append(v)
    return kernel


def _directions(bound: int):
    out = []
    for h in range(1, bound + 1):
        for a in range(-h, h + 1):
            for b in range(-h, h + 1):
                if max(abs(a), abs(b)) == h and gcd(a, b) == 1:
                    out.append((a, b))
    return out


def _wdeg(m, w) -> int:
    return m[0] * w[0] + m[1] * w[1]


def _part(p: Poly, w, e: int) -> Poly:
    return Poly({m: c for m, c in p.terms.items() if _wdeg(m, w) == e}, p.nvars)


def _rational_zeros(g: Poly, w) -> list[tuple[Fraction, Fraction]]:
    """Rational points (up to weighted scaling) where a quasi-homogeneous g vanishes."""
    t = sympy.Symbol("t")
    pts = []
    for s in (1, -1):
        if w[0] == 0 and s == -1:
            continue
        expr = sum(sympy.Rational(c.numerator, c.denominator) * s ** m[0] * t ** m[1]
                   for m, c in g.terms.items())
        up = sympy.Poly(expr, t)
        if up.is_zero:
            continue
        for fac, _ in up.factor_list()[1]:
            if fac.degree() == 1:
                a, b = fac.all_coeffs()
                root = -sympy.Rational(b) / sympy.Rational(a)
                pts.append((Fraction(s), Fraction(int(root.p), int(root.q))))
    for s in (1, -1):
        if g.evaluate((0, s)) == 0:
            pts.append((Fraction(0), Fraction(s)))
    return pts


def _on_curve(p: Poly, c, w) -> dict[int, Fraction]:
    """Laurent coefficients of t -> p(c1 t^w1, c2 t^w2)."""
    out: dict[int, Fraction] = {}
    for m, coef in p.terms.items():
        v = coef * c[0] ** m[0] * c[1] ** m[1]
        if v:
            e = _wdeg(m, w)
            out[e] = out.get(e, 0) + v
    return {e: v for e, v in out.items() if v}


def _weighted_kernel(target: Poly, us: list[Poly], w, zeros_cache=None):
    """Kernel vectors forced along monomial curves of weight w; None means infeasible.

    For a curve point c, the functional "coefficient of t^(2E)" in
    ``p(c t^w)``, with E the top t-degree over the basis, has a rank-one
    PSD moment matrix.  If it kills the target, every square root must
    lose its t^E coefficient.
    """
    live = [u for u in us if not u.is_zero]
    if not live:
        return []
    e_top = max(_wdeg(m, w) for u in live for m in u.terms)
    d_f = max(_wdeg(m, w) for m in target.terms)
    if d_f > 2 * e_top:
        return None
    if d_f < 2 * e_top:
        tops = [_part(u, w, e_top) for u in us]
        monos = sorted({m for t in tops for m in t.terms})
        return [[t.coeff(m) for t in tops] for m in monos]
    kernel = []
    if zeros_cache is None:
        zeros_cache = {}
    if (w, d_f) not in zeros_cache:
        face = _part(target, w, d_f)
        zeros_cache[(w, d_f)] = _rational_zeros(face, w) if len(face.terms) > 1 else []
    for c in zeros_cache[(w, d_f)]:
        curves = [_on_curve(u, c, w) for u in us]
        e = max((max(cv) for cv in curves if cv), default=None)
        if e is None:
            continue
        fc = _on_curve(target, c, w)
        top_f = max(fc, default=None)
        if top_f is not None and top_f > 2 * e:
            return None
        if fc.get(2 * e, 0) != 0:
            continue
        kernel.append([cv.get(e, Fraction(0)) for cv in curves])
    return kernel


def _complement_basis(us: list[Poly], kernel) -> list[Poly]:
    nv = us[0].nvars if us else 2
    sol = affine_solution(kernel, [0] * len(kernel))
    out = []
    for vec in sol[1]:
        p = Poly.zero(nv)
        for c, u in zip(vec, us):
            if c:
                p = p + u.scale(c)
        out.append(p)
    return out


def reduce_face(target: Poly, basis: SupportBasis, max_rounds: int = 200,
                max_unknowns: int = 1200) -> FaceResult:
    """Shrink the Gram basis until no fixed block or weighted face forces more."""
    nv = target.nvars
    us = [Poly({m: 1}, nv) for m in basis.monos]
    fixed = _determined_monomial(target, basis)
    if fixed is None:
        return FaceResult(us, None, infeasible=True)
    directions = _directions(max(target.degree, 1)) if nv == 2 else []
    zeros_cache: dict = {}
    rounds = 0
    while rounds < max_rounds and us:
        rounds += 1
        k = len(us)
        kernel = _kernel_vectors(k, fixed) if fixed is not None else []
        if kernel is None:
            return FaceResult(us, None, infeasible=True, rounds=rounds)
        if not kernel:
            for w in directions:
                kernel = _weighted_kernel(target, us, w, zeros_cache)
                if kernel is None:
                    return FaceResult(us, None, infeasible=True, rounds=rounds)
                if kernel:
                    break
        if not kernel:
            if k * (k + 1) // 2 > max_unknowns:
                break
            fixed, is_unique = _determined_general(target, us)
            if fixed is None:
                return FaceResult(us, None, infeasible=True, rounds=rounds)
            if is_unique:
                unique = [[fixed[(min(i, j), max(i, j))] for j in range(k)] for i in range(k)]
                return FaceResult(us, unique, rounds=rounds)
            kernel = _kernel_vectors(k, fixed)
            if kernel is None:
                return FaceResult(us, None, infeasible=True, rounds=rounds)
            if not kernel:
                break
        us = _complement_basis(us, kernel)
        fixed = None
    if not us:
        if target.is_zero:
            return FaceResult([], [], rounds=rounds)
        return FaceResult([], None, infeasible=True, rounds=rounds)
    return FaceResult(us, None, rounds=rounds)


def squares_from_face(face: FaceResult) -> list[tuple[Fraction, Poly]] | None:
    """Weighted squares from a pinned-down PSD Gram matrix, or None."""
    if face.unique is None:
        return None
    ldl = ldl_psd(face.unique)
    if not ldl.psd:
        return None
    out = []
    for d, vec in ldl.factors:
        p = Poly.zero(face.basis[0].nvars) if face.basis else Poly.zero()
        for c, u in zip(vec, face.basis):
            if c:
                p = p + u.scale(c)
        out.append((d, p))
    return out


def unique_gram_rank(target: Poly, basis: SupportBasis | None = None) -> int | None:
    """Exact length of target when its Gram matrix is forced to a single PSD point.

    Every decomposition into k squares yields a Gram matrix of rank at most
    k on the support basis, so a unique feasible Gram matrix of rank r
    proves the length is exactly r.
    """
    from .basis import support_basis

    basis = basis if basis is not None else support_basis(target)
    face = reduce_face(target, basis)
    if face.unique is None:
        return None
    ldl = ldl_psd(face.unique)
    return ldl.rank if ldl.psd else None
