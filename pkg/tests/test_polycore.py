from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pythlab.polycore import (LinMap, Poly, PolyParseError, SingularMatrixError, X, Y,
                              compose_linear, divide_binomial, exact_quotient, format_poly,
                              is_perfect_square, leading_block, parse_poly, real_square_root,
                              substitute_power, top_form)
from strategies import int_matrices, nonzero_polys, polys


def P(text):
    return parse_poly(text)


class TestParsing:
    def test_basic_arithmetic(self):
        assert P("(x - y)^2") == X * X - 2 * X * Y + Y * Y
        assert P("2x^2y") == (X * X * Y).scale(2)
        assert P("x**3 - 1/2") == X ** 3 - Fraction(1, 2)
        assert P("-(x^2 + y^4)") == -(X ** 2) - Y ** 4

    def test_three_variables(self):
        Q = parse_poly("z^2 - x*y", ("x", "y", "z"))
        assert Q.nvars == 3
        assert Q.coeff((0, 0, 2)) == 1

    @pytest.mark.parametrize("bad", ["x^", "(x + y", "x^-1", "q + 1", "x^y", ""])
    def test_errors_carry_position(self, bad):
        with pytest.raises(PolyParseError) as info:
            P(bad)
        assert info.value.position >= 0

    def test_format_is_graded(self):
        assert format_poly(P("1 + y + x^2")) == "x^2 + y + 1"

    @given(polys())
    def test_parse_print_idempotent(self, f):
        assert P(format_poly(f)) == f
        assert format_poly(P(format_poly(f))) == format_poly(f)

    @given(polys())
    def test_json_round_trip(self, f):
        assert Poly.from_json(f.to_json()) == f


class TestLinearMaps:
    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            LinMap.from_rows([[1, 2], [2, 4]])

    def test_composition_convention(self):
        M = LinMap.from_rows([[1, -1], [1, 1]])
        # f o M = f(x - y, x + y)
        assert compose_linear(P("x^2 - y^2"), M) == P("-4*x*y")
        assert compose_linear(P("x"), M) == P("x - y")

    @given(polys(max_deg=3), int_matrices(), int_matrices())
    def test_compose_is_an_action(self, f, M, N):
        assert compose_linear(compose_linear(f, M), N) == compose_linear(f, M @ N)


class TestOps:
    def test_substitute_power(self):
        assert substitute_power(P("y - x^2"), 2).is_zero
        assert substitute_power(P("x*y + y^2"), 3) == P("x^4 + x^6")

    def test_divide_binomial_example(self):
        q, s = divide_binomial(P("y^2 + x"), 2)
        assert q == P("y + x^2")
        assert s == P("x^4 + x")

    def test_leading_block(self):
        assert leading_block(P("x^2 - y^2")) == (0, 2, -1)
        assert leading_block(P("x^3*y + y - x^5")) == (3, 1, 1)
        assert leading_block(P("-y^2 - x^7")) == (0, 2, -1)

    def test_top_form(self):
        assert top_form(P("x^3 + x*y - 1")) == P("x^3")

    def test_squares(self):
        assert is_perfect_square(P("x^2 + 2*x*y + y^2")) in (P("x + y"), P("-x - y"))
        assert is_perfect_square(P("x^2 + y^2")) is None
        assert is_perfect_square(P("2*x^2")) is None
        assert real_square_root(P("2*x^2")) == (2, P("x"))
        assert real_square_root(P("-x^2")) is None

    @given(polys(max_deg=3))
    def test_perfect_square_of_square(self, g):
        h = is_perfect_square(g * g)
        assert h is not None
        assert h * h == g * g

    def test_exact_quotient(self):
        assert exact_quotient(P("x^2 - y^2"), P("x - y")) == P("x + y")
        assert exact_quotient(P("x^2 + y^2"), P("x - y")) is None

    @given(polys(max_deg=3), nonzero_polys(max_deg=2))
    def test_exact_quotient_of_product(self, f, g):
        assert exact_quotient(f * g, g) == f


@given(polys(), int_matrices())
def test_compose_invert_round_trip(f, M):
    assert compose_linear(compose_linear(f, M), M.inverse()) == f


@given(polys(max_deg=5, max_terms=8), st.integers(1, 6))
def test_divide_binomial_recombines(f, r):
    q, s = divide_binomial(f, r)
    assert q * (Y - X ** r) + s == f
    assert s.degree_in(1) <= 0
    assert s == substitute_power(f, r)
