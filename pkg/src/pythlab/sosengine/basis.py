from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from ..exact import in_convex_hull
from ..polycore import Mono, Poly, mono_order_key


@dataclass(frozen=True)
class SupportBasis:
    """Candidate monomials for the square roots of a target polynomial."""

    monos: tuple[Mono, ...]

    def __len__(self) -> int:
        return len(self.monos)

    @cached_property
    def products(self) -> dict[Mono, list[tuple[int, int]]]:
        """Map each product monomial to the index pairs (i <= j) producing it."""
        out: dict[Mono, list[tuple[int, int]]] = {}
        for i, a in enumerate(self.monos):
            for j in range(i, len(self.monos)):
                m = tuple(u + v for u, v in zip(a, self.monos[j]))
                out.setdefault(m, []).append((i, j))
        return out

    def vector_poly(self, coeffs, nvars: int) -> Poly:
        return Poly({m: c for m, c in zip(self.monos, coeffs) if c}, nvars)


def _sum_deg_bounds(f: Poly) -> tuple[int, int]:
    degs = [sum(m) for m in f.terms]
    return min(degs), max(degs)


def newton_half_points(f: Poly) -> list[Mono]:
    """Lattice points m with 2m in the Newton polytope of f (unpruned)."""
    pts = f.support()
    n = f.nvars
    lo_deg, hi_deg = _sum_deg_bounds(f)
    maxes = [max(m[k] for m in pts) // 2 for k in range(n)]
    mins = [(min(m[k] for m in pts) + 1) // 2 for k in range(n)]
    out = []
    for cand in product(*(range(a, b + 1) for a, b in zip(mins, maxes))):
        doubled = tuple(2 * e for e in cand)
        s = sum(doubled)
        if s < lo_deg or s > hi_deg:
            continue
        if in_convex_hull(doubled, pts):
            out.append(cand)
    return out


def prune_basis(f: Poly, monos: list[Mono]) -> list[Mono]:
    """Drop monomials whose diagonal Gram entry is forced to zero.

    If 2m has zero coefficient in f and is not the sum of two distinct basis
    monomials, the (m, m) Gram entry must vanish and so must its row.
    """
    cur = list(monos)
    changed = True
    while changed:
        changed = False
        present = set(cur)
        for m in list(cur):
            doubled = tuple(2 * e for e in m)
            if f.coeff(doubled) != 0:
                continue
            split = False
            for a in present:
                if a == m:
                    continue
                b = tuple(d - e for d, e in zip(doubled, a))
                if b != a and b in present:
                    split = True
                    break
            if not split:
                cur.remove(m)
                present.discard(m)
                changed = True
    return cur


def support_basis(f: Poly, prune: bool = True) -> SupportBasis:
    """Monomial basis for Gram-matrix SOS search; empty for odd degree or zero."""
    if f.is_zero or f.degree % 2:
        return SupportBasis(())
    monos = newton_half_points(f)
    if prune:
        monos = prune_basis(f, monos)
    monos.sort(key=mono_order_key)
    return SupportBasis(tuple(monos))


def moment_matrix_float(basis: SupportBasis, values: dict[Mono, float]) -> np.ndarray:
    n = len(basis)
    M = np.zeros((n, n))
    for m, pairs in basis.products.items():
        v = values.get(m, 0.0)
        for i, j in pairs:
            M[i, j] = M[j, i] = v
    return M
