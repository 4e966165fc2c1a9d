"""Gram-matrix search: numeric alternating projections plus exact rounding.

Numeric iterates only ever propose candidates; anything returned from here
has been rebuilt in exact arithmetic and checked.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from ..exact import affine_solution, ldl_psd, numeric_rref
from ..polycore import Mono, Poly
from .basis import SupportBasis, support_basis


@dataclass(frozen=True)
class SearchOptions:
    tolerance: float = 1e-9
    iters: int = 100_000
    denominator_bound: int = 2**32
    max_rank: int | None = None


@dataclass
class GramSystem:
    """Linear constraints identifying v^T Q v with the target.

    Each unordered index pair (i, j) feeds exactly one product monomial, so
    the constraints decouple into one equation per product monomial.
    """

    target: Poly
    basis: SupportBasis

    @classmethod
    def for_target(cls, target: Poly, basis: SupportBasis | None = None) -> "GramSystem":
        return cls(target, basis if basis is not None else support_basis(target))

    @cached_property
    def alphas(self) -> list[Mono]:
        return list(self.basis.products)

    @cached_property
    def covers_target(self) -> bool:
        return all(m in self.basis.products for m in self.target.terms)

    @cached_property
    def labels(self) -> np.ndarray:
        n = len(self.basis)
        lab = np.zeros((n, n), dtype=np.int64)
        for k, m in enumerate(self.alphas):
            for i, j in self.basis.products[m]:
                lab[i, j] = lab[j, i] = k
        return lab

    @cached_property
    def counts(self) -> np.ndarray:
        return np.bincount(self.labels.ravel(), minlength=len(self.alphas)).astype(float)

    def target_vector(self, scale: float = 1.0) -> np.ndarray:
        return np.array([float(self.target.coeff(m)) / scale for m in self.alphas])

    def constraints(self) -> list[tuple[Mono, list[tuple[int, int, int]], Fraction]]:
        """Rows ``(alpha, [(i, j, multiplicity)], target coefficient)``."""
        rows = []
        for m in self.alphas:
            terms = [(i, j, 1 if i == j else 2) for i, j in self.basis.products[m]]
            rows.append((m, terms, self.target.coeff(m)))
        return rows

    # -- projections -----------------------------------------------------
    def project_affine(self, Q: np.ndarray, fvec: np.ndarray) -> np.ndarray:
        lab = self.labels
        sums = np.bincount(lab.ravel(), weights=Q.ravel(), minlength=len(self.alphas))
        corr = (fvec - sums) / self.counts
        return Q + corr[lab]

    def exact_gram(self, Q: np.ndarray, max_den: int) -> list[list[Fraction]]:
        """Round a numeric Gram matrix onto the exact affine constraint set.

        Per product monomial, one entry (diagonal when available) is solved
        for exactly; the others are rounded to denominators <= max_den.
        """
        n = len(self.basis)
        G = [[Fraction(0)] * n for _ in range(n)]
        for m, terms, coef in self.constraints():
            piv = next((t for t in terms if t[0] == t[1]), terms[0])
            acc = Fraction(0)
            for i, j, mult in terms:
                if (i, j) == piv[:2]:
                    continue
                v = Fraction(float(Q[i, j])).limit_denominator(max_den)
                G[i][j] = G[j][i] = v
                acc += mult * v
            i, j, mult = piv
            G[i][j] = G[j][i] = (coef - acc) / mult
        return G


def _psd_project(Q: np.ndarray, floor: float = 0.0, rank: int | None = None) -> np.ndarray:
    w, V = np.linalg.eigh((Q + Q.T) / 2)
    w = np.maximum(w, floor)
    if rank is not None and rank < len(w):
        w[: len(w) - rank] = floor
    return (V * w) @ V.T


def _den_schedule(bound: int) -> list[int]:
    out, d = [], 1
    while d <= bound:
        out.append(d)
        d *= 2
    return out


def squares_from_gram(system: GramSystem, G: list[list[Fraction]]):
    """Exact LDL^T of a Gram matrix into weighted squares, or None if not PSD."""
    res = ldl_psd(G)
    if not res.psd:
        return None
    nv = system.target.nvars
    squares = []
    for d, vec in res.factors:
        p = system.basis.vector_poly(vec, nv)
        squares.append(_normalize_square(d, p))
    return squares


def _normalize_square(w: Fraction, p: Poly) -> tuple[Fraction, Poly]:
    from math import isqrt

    n, d = w.numerator, w.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(1), p.scale(Fraction(rn, rd))
    return w, p


@dataclass
class PrimalResult:
    squares: list[tuple[Fraction, Poly]] | None
    iterations: int
    gap: float
    stalled: bool


def primal_search(system: GramSystem, opts: SearchOptions, floor: float = 0.0) -> PrimalResult:
    """Alternating projections between the PSD cone and the Gram affine set.

    Exact rounding is attempted at geometric checkpoints, so faces with a
    unique rational point are caught long before numeric convergence.
    """
    n = len(system.basis)
    if n == 0:
        return PrimalResult([] if system.target.is_zero else None, 0, 0.0, False)
    if not system.covers_target:
        return PrimalResult(None, 0, float("inf"), True)
    scale = max(float(abs(c)) for c in system.target.terms.values())
    fvec = system.target_vector(scale)
    Q = system.project_affine(np.eye(n), fvec)
    gap = float("inf")
    history = []
    checkpoint = 16
    rank = opts.max_rank
    for it in range(1, opts.iters + 1):
        P = _psd_project(Q, floor, rank)
        Q = system.project_affine(P, fvec)
        gap = float(np.linalg.norm(Q - P))
        if it == checkpoint or gap < opts.tolerance:
            squares = _try_round(system, Q * scale, gap * scale, opts)
            if squares is None:
                squares = face_round(system, Q * scale, gap, opts)
            if squares is not None:
                return PrimalResult(squares, it, gap, False)
            if gap < opts.tolerance and floor == 0.0:
                # converged numerically but rounding failed: face needs finer denominators
                return PrimalResult(None, it, gap, False)
            checkpoint *= 2
        if it % 200 == 0:
            history.append(gap)
            if len(history) >= 3 and gap > 1e-4 and history[-1] > 0.999 * history[-3]:
                return PrimalResult(None, it, gap, True)
    return PrimalResult(None, opts.iters, gap, False)


def _try_round(system: GramSystem, Q: np.ndarray, gap: float, opts: SearchOptions):
    # denominators finer than the numeric accuracy carry no information
    useful = int(min(opts.denominator_bound, max(1.0, 1.0 / max(gap, 1e-300)) ** 0.5 * 4))
    seen = set()
    for den in _den_schedule(max(1, useful)):
        G = system.exact_gram(Q, den)
        key = tuple(tuple(r) for r in G)
        if key in seen:
            continue
        seen.add(key)
        squares = squares_from_gram(system, G)
        if squares is not None:
            if opts.max_rank is not None and len(squares) > opts.max_rank:
                continue
            return squares
    return None


@dataclass
class DualResult:
    dual: dict[Mono, Fraction] | None
    iterations: int


def dual_search(system: GramSystem, opts: SearchOptions) -> DualResult:
    """Look for a functional L with PSD moment matrix and L(target) < 0.

    Alternating projections between {M >= floor * I} and the affine set of
    moment matrices normalised by L(target) = -1.  Rounded candidates are
    checked exactly; the floor leaves room for the rounding error.
    """
    target = system.target
    if not system.covers_target:
        # a target monomial no square can produce: put all the weight there
        m = next(m for m in target.support() if m not in system.basis.products)
        c = target.coeff(m)
        dual = {a: Fraction(0) for a in system.alphas}
        dual[m] = Fraction(-1) / c
        for a in target.terms:
            dual.setdefault(a, Fraction(0))
        return DualResult(dual, 0)
    n = len(system.basis)
    if n == 0:
        return DualResult(None, 0)
    scale = max(float(abs(c)) for c in target.terms.values())
    cvec = system.target_vector(scale)
    cnt = system.counts
    lab = system.labels
    denom = float(np.sum(cvec * cvec / cnt))
    if denom == 0.0:
        return DualResult(None, 0)

    def proj_aff(Z):
        z = np.bincount(lab.ravel(), weights=Z.ravel(), minlength=len(cnt)) / cnt
        lam = (cvec @ z + 1.0) / denom
        y = z - lam * cvec / cnt
        return y

    iters_total = 0
    for floor in (1e-2, 1e-4, 1e-6):
        y = proj_aff(np.eye(n))
        budget = max(1, opts.iters // 3)
        for it in range(1, budget + 1):
            X = y[lab]
            w = np.linalg.eigvalsh(X)
            if w[0] >= floor * 0.5:
                break
            y = proj_aff(_psd_project(X, floor))
        iters_total += it
        if np.linalg.eigvalsh(y[lab])[0] <= 0:
            continue
        for den in _den_schedule(opts.denominator_bound)[4:]:
            dual = {a: Fraction(float(v)).limit_denominator(den) for a, v in zip(system.alphas, y)}
            if _check_dual(system, dual):
                return DualResult(dual, iters_total)
    return DualResult(None, iters_total)


def _check_dual(system: GramSystem, dual: dict[Mono, Fraction]) -> bool:
    value = sum((c * dual[m] for m, c in system.target.terms.items()), Fraction(0))
    if value >= 0:
        return False
    n = len(system.basis)
    M = [[Fraction(0)] * n for _ in range(n)]
    for m, pairs in system.basis.products.items():
        for i, j in pairs:
            M[i][j] = M[j][i] = dual[m]
    return ldl_psd(M).psd


def _rank_candidates(w: np.ndarray, gap: float) -> list[int]:
    """Plausible numeric ranks: positions of large relative jumps in the spectrum."""
    w = np.sort(np.abs(w))[::-1]
    top = w[0] if w.size else 0.0
    if top <= 0:
        return []
    noise = max(gap, 1e-12) * top
    out = []
    for r in range(1, len(w) + 1):
        nxt = w[r] if r < len(w) else 0.0
        if w[r - 1] > 10 * noise and (nxt < 0.1 * w[r - 1] or nxt <= noise):
            out.append(r)
    return out


def face_round(system: GramSystem, Q: np.ndarray, gap: float, opts: SearchOptions):
    """Round onto the face spanned by the numeric range of Q.

    The range of the limiting Gram matrix is a rational subspace whenever a
    rational low-rank solution exists; its reduced row echelon basis then has
    small denominators.  With basis rows u_k, the target becomes
    u^T S u with a small exactly solvable system for S.
    """
    w, V = np.linalg.eigh((Q + Q.T) / 2)
    order = np.argsort(w)[::-1]
    w, V = w[order], V[:, order]
    nv = system.target.nvars
    for r in _rank_candidates(w, gap):
        if opts.max_rank is not None and r > opts.max_rank:
            break
        R = numeric_rref(V[:, :r].T, threshold=max(1e-6, 50 * gap))
        if R.shape[0] != r:
            continue
        for den in (1, 2, 4, 8, 16, 64, 256, 1024):
            B = [[Fraction(float(v)).limit_denominator(den) for v in row] for row in R]
            if max(abs(float(b) - v) for row_b, row in zip(B, R) for b, v in zip(row_b, row)) > 0.25 / den + 50 * gap:
                continue
            squares = _solve_on_face(system, B, Q, nv)
            if squares is not None:
                return squares
    return None


def _solve_on_face(system: GramSystem, B, Q: np.ndarray, nv: int):
    us = [system.basis.vector_poly(row, nv) for row in B]
    r = len(us)
    pairs = [(k, l) for k in range(r) for l in range(k, r)]
    prods = {}
    monos = set(system.target.terms)
    for k, l in pairs:
        p = us[k] * us[l]
        prods[(k, l)] = p
        monos.update(p.terms)
    monos = sorted(monos)
    A = [[prods[(k, l)].coeff(m) * (1 if k == l else 2) for (k, l) in pairs] for m in monos]
    b = [system.target.coeff(m) for m in monos]
    sol = affine_solution(A, b)
    if sol is None:
        return None
    x0, null = sol
    Bf = np.array([[float(v) for v in row] for row in B])
    G = Bf @ Bf.T
    Ginv = np.linalg.inv(G)
    S_num = Ginv @ Bf @ Q @ Bf.T @ Ginv
    target_vec = np.array([S_num[k, l] for k, l in pairs])
    x0f = np.array([float(v) for v in x0])
    candidates = [list(x0)]
    if null:
        N = np.array([[float(v) for v in vec] for vec in null]).T
        t, *_ = np.linalg.lstsq(N, target_vec - x0f, rcond=None)
        candidates = []
        for den in _den_schedule(2**20):
            tr = [Fraction(float(v)).limit_denominator(den) for v in t]
            x = [x0[i] + sum(tr[j] * null[j][i] for j in range(len(null))) for i in range(len(x0))]
            if x not in candidates:
                candidates.append(x)
    for x in candidates:
        S = [[Fraction(0)] * r for _ in range(r)]
        for (k, l), v in zip(pairs, x):
            S[k][l] = S[l][k] = v
        res = ldl_psd(S)
        if not res.psd:
            continue
        squares = []
        for d, vec in res.factors:
            p = Poly.zero(nv)
            for c, u in zip(vec, us):
                if c:
                    p = p + u.scale(c)
            squares.append(_normalize_square(d, p))
        return squares
    return None
