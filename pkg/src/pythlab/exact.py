"""Exact rational linear algebra used by the certificate checkers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

Matrix = list[list[Fraction]]


@dataclass
class LDLResult:
    """Outcome of an exact symmetric LDL^T with diagonal pivoting.

    When ``psd`` holds, ``Q == sum(d * outer(v, v) for d, v in factors)`` with
    every ``d > 0``; ``len(factors)`` is the rank of Q.
    """

    psd: bool
    factors: list[tuple[Fraction, list[Fraction]]] = field(default_factory=list)
    reason: str = ""

    @property
    def rank(self) -> int:
        return len(self.factors)


def ldl_psd(Q: Sequence[Sequence]) -> LDLResult:
    n = len(Q)
    A = [[Fraction(v) for v in row] for row in Q]
    for i in range(n):
        if len(A[i]) != n:
            raise ValueError("matrix is not square")
        for j in range(i):
            if A[i][j] != A[j][i]:
                return LDLResult(False, reason=f"not symmetric at ({i}, {j})")
    active = list(range(n))
    factors = []
    while active:
        diag = [(A[i][i], i) for i in active]
        neg = [i for d, i in diag if d < 0]
        if neg:
            return LDLResult(False, factors, reason=f"negative pivot at index {neg[0]}")
        pos = [i for d, i in diag if d > 0]
        if not pos:
            for i in active:
                for j in active:
                    if A[i][j] != 0:
                        return LDLResult(False, factors,
                                         reason=f"zero diagonal with nonzero entry ({i}, {j})")
            break
        k = pos[0]
        d = A[k][k]
        col = [A[i][k] / d if i in active else Fraction(0) for i in range(n)]
        col[k] = Fraction(1)
        factors.append((d, col))
        active.remove(k)
        for i in active:
            li = A[i][k]
            if not li:
                continue
            row_i = A[i]
            row_k = A[k]
            s = li / d
            for j in active:
                if row_k[j]:
                    row_i[j] -= s * row_k[j]
    return LDLResult(True, factors)


def householder(a: Sequence) -> Matrix:
    """Rational reflection H with H a = e_last, for a vector of unit squared norm.

    Returns the identity when ``a`` is already ``e_last``.
    """
    a = [Fraction(v) for v in a]
    n = len(a)
    if sum(v * v for v in a) != 1:
        raise ValueError("vector must have squared norm 1")
    target = [Fraction(0)] * (n - 1) + [Fraction(1)]
    w = [ai - ti for ai, ti in zip(a, target)]
    ww = sum(v * v for v in w)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if ww == 0:
        return ident
    return [[ident[i][j] - 2 * w[i] * w[j] / ww for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0))
             for j in range(len(B[0]))] for i in range(len(A))]


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)]


def solve_linear(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One exact solution of ``A x = b`` (free variables set to 0), or None."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[Fraction(v) for v in A[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [vi - f * vr for vi, vr in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x


def rank_mod_p(A: np.ndarray, p: int = 2_147_483_629) -> int:
    """Rank of an integer matrix over GF(p); a lower bound for its rank over Q."""
    if p >= 2**31:
        raise ValueError("prime must be below 2**31")
    M = np.array(A, dtype=object) % p
    M = np.asarray(M, dtype=np.int64)
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        below = np.nonzero(M[r + 1:, c])[0] + r + 1
        if below.size:
            factors = M[below, c].reshape(-1, 1)
            # entries < p < 2**31 keep the products inside int64
            M[below] = (M[below] - (factors * M[r]) % p) % p
        r += 1
    return r


def in_convex_hull(point: Sequence, points: Sequence[Sequence]) -> bool:
    """Exact membership of ``point`` in conv(points) via a phase-one simplex.

    Variables are convex weights lambda_j >= 0; constraints are
    sum lambda_j p_j = point and sum lambda_j = 1.  Bland's rule.
    """
    pts = [tuple(Fraction(v) for v in p) for p in points]
    target = tuple(Fraction(v) for v in point)
    if not pts:
        return False
    if target in pts:
        return True
    dim = len(target)
    m = dim + 1
    n = len(pts)
    rows = []
    for i in range(dim):
        rows.append([p[i] for p in pts] + [target[i]])
    rows.append([Fraction(1)] * n + [Fraction(1)])
    for row in rows:
        if row[-1] < 0:
            row[:] = [-v for v in row]
    # tableau columns: n structural, m artificial, rhs
    T = [row[:n] + [Fraction(int(i == k)) for k in range(m)] + [row[-1]] for i, row in enumerate(rows)]
    basis = [n + i for i in range(m)]
    width = n + m
    while True:
        # reduced costs for minimizing the sum of artificials
        cost = [Fraction(0)] * width
        for j in range(width):
            if j >= n:
                continue
            cost[j] = -sum(T[i][j] for i in range(m) if basis[i] >= n)
        entering = next((j for j in range(width) if j not in basis and cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            if T[i][entering] > 0:
                ratio = T[i][-1] / T[i][entering]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break
        _, r = best
        pv = T[r][entering]
        T[r] = [v / pv for v in T[r]]
        for i in range(m):
            if i != r and T[i][entering] != 0:
                f = T[i][entering]
                T[i] = [a - f * b for a, b in zip(T[i], T[r])]
        basis[r] = entering
    infeas = sum(T[i][-1] for i in range(m) if basis[i] >= n)
    return infeas == 0


def round_rational(x: float, max_den: int) -> Fraction:
    return Fraction(x).limit_denominator(max_den)


def affine_solution(A: Sequence[Sequence], b: Sequence) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """All solutions of ``A x = b`` as ``(particular, nullspace basis)``, or None."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[Fraction(v) for v in A[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [vi - f * vr for vi, vr in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if M[i][cols] != 0:
            return None
    x0 = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x0[c] = M[i][cols]
    free = [c for c in range(cols) if c not in set(pivots)]
    null = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][fc]
        null.append(v)
    return x0, null


def numeric_rref(V: np.ndarray, threshold: float) -> np.ndarray:
    """Reduced row echelon form with leftmost pivots, ignoring entries below threshold."""
    A = np.array(V, dtype=float)
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(A[r:, c])))
        if abs(A[p, c]) < threshold:
            continue
        A[[r, p]] = A[[p, r]]
        A[r] /= A[r, c]
        for i in range(rows):
            if i != r:
                A[i] -= A[i, c] * A[r]
        r += 1
    return A[:r]
