"""Hypothesis strategies for small exact polynomials and integer matrices."""
from fractions import Fraction

from hypothesis import strategies as st

from pythlab.polycore import LinMap, Poly

coefs = st.fractions(min_value=-6, max_value=6, max_denominator=4).filter(lambda c: c != 0)


def monos(max_deg: int):
    return st.tuples(st.integers(0, max_deg), st.integers(0, max_deg)).filter(
        lambda m: m[0] + m[1] <= max_deg)


def polys(max_deg: int = 4, max_terms: int = 6, min_terms: int = 0):
    return st.dictionaries(monos(max_deg), coefs, min_size=min_terms, max_size=max_terms).map(Poly)


def nonzero_polys(max_deg: int = 4, max_terms: int = 6):
    return polys(max_deg, max_terms, min_terms=1)


def int_matrices(height: int = 4):
    entry = st.integers(-height, height)
    return st.tuples(entry, entry, entry, entry).filter(
        lambda t: t[0] * t[3] - t[1] * t[2] != 0).map(
        lambda t: LinMap.from_rows([[t[0], t[1]], [t[2], t[3]]]))


@st.composite
def unit_vectors(draw, min_dim: int = 2, max_dim: int = 5):
    """Rational points on the unit sphere, by inverse stereographic projection."""
    n = draw(st.integers(min_dim, max_dim))
    t = [draw(st.fractions(min_value=-5, max_value=5, max_denominator=6)) for _ in range(n - 1)]
    s = sum(v * v for v in t)
    return [2 * v / (s + 1) for v in t] + [(s - 1) / (s + 1)]


__all__ = ["coefs", "monos", "polys", "nonzero_polys", "int_matrices", "unit_vectors", "Fraction"]
