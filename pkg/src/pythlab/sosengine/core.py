from __future__ import annotations

from fractions import Fraction
from itertools import product

from ..polycore import Mono, Poly, real_square_root
from .basis import support_basis
from .certificate import DECOMPOSITION, INCONCLUSIVE, NOT_SOS, SosCertificate
from .facial import FaceResult, reduce_face, squares_from_face
from .gram import GramSystem, SearchOptions, _normalize_square, dual_search, primal_search

_SAMPLE_VALUES = sorted({Fraction(p, q) for p in range(-3, 4) for q in (1, 2, 3)},
                        key=lambda v: (abs(v), v))


def evaluation_witness(f: Poly, values=_SAMPLE_VALUES) -> tuple[Fraction, ...] | None:
    """A rational point where f is negative, from a small deterministic grid."""
    floats = [float(v) for v in values]
    best = None
    for idx in product(range(len(values)), repeat=f.nvars):
        v = f.evaluate_float([floats[i] for i in idx])
        if v < 0 and (best is None or v < best[0]):
            best = (v, idx)
    if best is None:
        return None
    point = tuple(values[i] for i in best[1])
    if f.evaluate(point) < 0:
        return point
    # float noise: confirm exactly over the whole grid
    for idx in product(range(len(values)), repeat=f.nvars):
        point = tuple(values[i] for i in idx)
        if f.evaluate(point) < 0:
            return point
    return None


def evaluation_functional(f: Poly, point) -> dict[Mono, Fraction]:
    """L(m) = m(point) on every product-support monomial and every term of f."""
    basis = support_basis(f)
    monos = set(basis.products) | set(f.terms)
    out = {}
    for m in monos:
        v = Fraction(1)
        for c, e in zip(point, m):
            v *= Fraction(c) ** e
        out[m] = v
    return out


def certify_not_sos(f: Poly, opts: SearchOptions | None = None) -> dict[Mono, Fraction] | None:
    """Exact dual witness that f is not a sum of squares, or None."""
    opts = opts or SearchOptions()
    if f.is_zero:
        return None
    point = evaluation_witness(f)
    if point is not None:
        return evaluation_functional(f, point)
    system = GramSystem.for_target(f)
    if len(system.basis) == 0:
        return None
    return dual_search(system, opts).dual


def decompose_sos(f: Poly, opts: SearchOptions | None = None) -> SosCertificate:
    """Try to prove f SOS (exact decomposition) or not SOS (exact dual witness)."""
    opts = opts or SearchOptions()
    if f.is_zero:
        return SosCertificate(DECOMPOSITION, f, (), method="zero")
    rs = real_square_root(f)
    if rs is not None:
        w, g = rs
        cert = SosCertificate(DECOMPOSITION, f, (_square(w, g),), method="square root")
        return cert
    point = evaluation_witness(f)
    if point is not None:
        return SosCertificate(NOT_SOS, f, dual=evaluation_functional(f, point),
                              method="negative value", info={"point": [str(c) for c in point]})
    system = GramSystem.for_target(f)
    if len(system.basis) == 0:
        return SosCertificate(INCONCLUSIVE, f, method="empty basis")
    face = _try_face(f, system)
    if face is not None:
        squares = squares_from_face(face)
        if squares is not None:
            squares = tuple(_normalize_square(w, p) for w, p in squares)
            return SosCertificate(DECOMPOSITION, f, squares, method="facial reduction",
                                  info={"rounds": face.rounds, "unique_gram": True})
    primal = primal_search(system, opts)
    if primal.squares is not None:
        return SosCertificate(DECOMPOSITION, f, tuple(primal.squares), method="gram",
                              info={"iterations": primal.iterations})
    dual = dual_search(system, opts)
    if dual.dual is not None:
        return SosCertificate(NOT_SOS, f, dual=dual.dual, method="moment",
                              info={"iterations": dual.iterations})
    if not primal.stalled:
        # interior point search: full-rank Gram matrices tolerate rounding
        interior = primal_search(system, opts, floor=1e-6)
        if interior.squares is not None:
            return SosCertificate(DECOMPOSITION, f, tuple(interior.squares), method="gram-interior")
    return SosCertificate(INCONCLUSIVE, f, method="gram+moment",
                          info={"primal_gap": primal.gap, "primal_iterations": primal.iterations})


def _square(w: Fraction, g: Poly) -> tuple[Fraction, Poly]:
    return _normalize_square(w, g)


def _try_face(f: Poly, system: GramSystem, max_basis: int = 120) -> FaceResult | None:
    if len(system.basis) > max_basis:
        return None
    return reduce_face(f, system.basis)
