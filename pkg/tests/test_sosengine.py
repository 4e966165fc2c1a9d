from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from pythlab.polycore import Poly, parse_poly
from pythlab.sosengine import (DECOMPOSITION, INCONCLUSIVE, NOT_SOS, SosCertificate,
                               decompose_sos, min_length, sum_weighted_squares,
                               two_squares_obstruction, unique_gram_rank, verify_decomposition,
                               verify_dual)
from pythlab.witness import build_family
from strategies import polys

MOTZKIN = "x^2*y^4 + x^4*y^2 - 3*x^2*y^2 + 1"


def family(n):
    return build_family(parse_poly("y"), n).poly(n)


def test_motzkin_refuted_exactly():
    cert = decompose_sos(parse_poly(MOTZKIN))
    assert cert.kind == NOT_SOS
    assert verify_dual(cert.target, cert.dual)


def test_tampered_dual_rejected():
    cert = decompose_sos(parse_poly(MOTZKIN))
    bad = dict(cert.dual)
    bad[(0, 0)] = -bad[(0, 0)]  # a negative diagonal moment cannot be PSD
    assert not verify_dual(cert.target, bad)


def test_negative_somewhere_is_refuted():
    cert = decompose_sos(parse_poly("x^2 - y^2"))
    assert cert.is_not_sos and cert.verify()


def test_easy_decompositions():
    for text in ["x^2 + y^2", "(y - x^2)^2 + 1", "x^4 + 2*x^2*y^2 + y^4 + 1", "9"]:
        cert = decompose_sos(parse_poly(text))
        assert cert.kind == DECOMPOSITION, text
        assert cert.verify()


def test_odd_degree_never_sos():
    assert decompose_sos(parse_poly("x^3 + y^2")).is_not_sos


def test_certificate_json_round_trip():
    for text in ["x^2 + y^2", MOTZKIN]:
        cert = decompose_sos(parse_poly(text))
        again = SosCertificate.from_json(cert.to_json())
        assert again.kind == cert.kind and again.verify()


def test_family_decompositions_are_exact():
    for n in (2, 3, 4):
        cert = decompose_sos(family(n))
        assert cert.is_decomposition and cert.verify()


def test_unique_gram_rank_matches_family_length():
    assert unique_gram_rank(family(3)) == 3
    assert unique_gram_rank(family(4)) == 4
    assert unique_gram_rank(parse_poly("x^2*y^2 + 1")) == 2


class TestLength:
    def test_square(self):
        res = min_length(parse_poly("9"))
        assert res.length == 1 and res.certified

    def test_two(self):
        res = min_length(parse_poly("x^2 + y^2"))
        assert res.length == 2 and res.certified

    def test_not_sos_has_no_length(self):
        res = min_length(parse_poly(MOTZKIN))
        assert res.length is None and res.decomposition is None

    def test_family_three_is_certified(self):
        res = min_length(family(3))
        assert (res.length, res.lower_bound, res.certified) == (3, 3, True)
        assert res.witnesses

    def test_obstruction_needs_irreducibility(self):
        # x^2 + y^2 = (x + iy)(x - iy) is a sum of two squares
        assert two_squares_obstruction(parse_poly("x^2 + y^2")) is None
        assert two_squares_obstruction(family(3)) is not None


@st.composite
def sums_of_squares(draw):
    k = draw(st.integers(1, 3))
    parts = [draw(polys(max_deg=2, max_terms=3)) for _ in range(k)]
    weights = [draw(st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=4))
               for _ in range(k)]
    return sum_weighted_squares(list(zip(weights, parts)))


@given(sums_of_squares())
def test_certificate_soundness_on_sos_inputs(f):
    cert = decompose_sos(f)
    assert cert.kind != NOT_SOS
    if cert.kind == DECOMPOSITION:
        assert verify_decomposition(f, cert.squares)


@given(polys(max_deg=4, max_terms=5))
def test_certificate_soundness_on_random_inputs(f):
    cert = decompose_sos(f)
    assert cert.kind in (DECOMPOSITION, NOT_SOS, INCONCLUSIVE)
    if cert.kind != INCONCLUSIVE:
        assert cert.target == f
        assert cert.verify()
