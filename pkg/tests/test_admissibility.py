import pytest
from hypothesis import given

from pythlab.admissibility import (ADMISSIBLE_WITH, NOT_ADMISSIBLE, STRICT, UNKNOWN,
                                   certify_not_admissible, column_map, find_witness,
                                   is_strictly_admissible, positive_direction)
from pythlab.polycore import LinMap, compose_linear, parse_poly
from strategies import nonzero_polys

P = parse_poly


@pytest.mark.parametrize("text,strict", [
    ("x^3*y", True),        # d = 1 is odd
    ("x^2*y^2 - x", True),  # even block with positive coefficient
    ("-x^2*y^2 + y", False),
    ("x^2 - y^2", False),
    ("y", True),
    ("x^5", True),          # d = 0, b = 5 odd
    ("-x^4", False),
])
def test_strict_admissibility(text, strict):
    assert is_strictly_admissible(P(text)) is strict


def test_strictness_needs_vanishing_and_nonconstant():
    assert not is_strictly_admissible(P("y + 1"))
    assert not is_strictly_admissible(P("0"))


def test_worked_examples():
    assert find_witness(P("x^3*y")).kind == STRICT
    for text in ["x^2 - y^2", "-y^2 - x^7", "-x^2*y^4 - x^4*y^2 + 3*x^3*y^3"]:
        v = find_witness(P(text))
        assert v.kind == ADMISSIBLE_WITH, text
        assert is_strictly_admissible(compose_linear(P(text), v.witness))
    v = find_witness(P("-2*x^2 - 3*x^4*y^2"))
    assert v.kind == NOT_ADMISSIBLE
    assert v.certificate.verify() and v.certificate.target == P("2*x^2 + 3*x^4*y^2")


def test_matrix_example_printed_witness_fails():
    # the matrix [[1,-1],[1,1]] leaves the top block negative; another witness exists
    f = P("-x^2*y^4 - x^4*y^2 + 3*x^3*y^3")
    assert not is_strictly_admissible(compose_linear(f, LinMap.from_rows([[1, -1], [1, 1]])))
    assert is_strictly_admissible(compose_linear(f, LinMap.from_rows([[1, 1], [0, 1]])))


def test_unknown_reports_budget():
    v = find_witness(P("x^2*(1 - x^2)"), budget=3, directions=100)
    assert v.kind == UNKNOWN
    assert v.budget["height"] == 3
    assert set(v.to_json()) == {"verdict", "witness", "certificate", "budget"}


def test_invalid_inputs():
    with pytest.raises(ValueError):
        find_witness(P("x + 1"))
    with pytest.raises(ValueError):
        find_witness(P("3"))
    with pytest.raises(ValueError):
        positive_direction(P("0"))
    with pytest.raises(ValueError):
        positive_direction(P("x^2 + y"))


def test_positive_direction():
    h = P("x^2 - 5*y^2")
    p, q = positive_direction(h)
    assert h.evaluate((p, q)) > 0
    assert positive_direction(P("-x^2 - y^2")) is None


def test_column_map_second_column():
    M = column_map(3, 5)
    assert M.apply((0, 1)) == (3, 5)
    assert M.det != 0


def test_certify_not_admissible():
    assert certify_not_admissible(P("-x^2 - y^2")).verify()
    assert certify_not_admissible(P("x^2 - y^2")) is None


@given(nonzero_polys(max_deg=4, max_terms=5))
def test_witness_soundness(f):
    f = f - f.constant_term
    if f.is_zero:
        return
    v = find_witness(f, budget=3, directions=200)
    if v.kind == STRICT:
        assert is_strictly_admissible(f)
    elif v.kind == ADMISSIBLE_WITH:
        assert v.witness.det != 0
        assert is_strictly_admissible(compose_linear(f, v.witness))
    elif v.kind == NOT_ADMISSIBLE:
        assert v.certificate.target == -f and v.certificate.verify()
    else:
        assert v.kind == UNKNOWN
