import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pythlab.classify import (FINITE, INFINITE, MAIN, NEG_SOS, OPEN_REGION_NOTE, SOS_LENGTH,
                              SQUARE, UNKNOWN, DuValSpec, all_du_val, classify_invariance_check,
                              classify_surface, du_val, problem_case, surface_to_f)
from pythlab.polycore import parse_poly
from strategies import int_matrices

P = parse_poly


@pytest.mark.parametrize("text,kind,rule", [
    ("y", INFINITE, MAIN),
    ("-x^3 - y^5", INFINITE, MAIN),
    ("x^2 - y^2", INFINITE, MAIN),
    ("x^2 + y^2", INFINITE, SOS_LENGTH),
    ("4*(x - y)^2", INFINITE, SQUARE),
    ("-(x^2 + y^2)", FINITE, NEG_SOS),
    ("-(x^2 + y^4)", FINITE, NEG_SOS),
    ("-1 - x^2", FINITE, NEG_SOS),
])
def test_ladder(text, kind, rule):
    v = classify_surface(P(text))
    assert (v.kind, v.rule) == (kind, rule)


def test_unknown_is_annotated():
    v = classify_surface(P("x^2*(1 - x^2)"))
    assert v.kind == UNKNOWN
    assert v.annotation == OPEN_REGION_NOTE
    assert v.evidence["problem_case"] == "c"


def test_problem_cases():
    assert problem_case(P("x^2*y^4 + x^4*y^2 - 3*x^2*y^2 + 1")) == "a"
    assert problem_case(P("-(x^2*y^4 + x^4*y^2 - 3*x^2*y^2 + 1)")) == "b"


def test_surface_to_f():
    assert surface_to_f("z^2 + x^2 + y^2") == P("-x^2 - y^2")
    assert surface_to_f("2*z^2 - 2*y") == P("y")
    with pytest.raises(ValueError):
        surface_to_f("z^2 + x*z")
    with pytest.raises(ValueError):
        surface_to_f("x + y")


def test_du_val_table():
    specs = all_du_val(8)
    assert len(specs) == 16
    for spec in specs:
        _, v = du_val(spec)
        assert v.kind == spec.expected, spec.name
    assert DuValSpec("A", 3).expected == FINITE
    assert DuValSpec("A", 4).expected == INFINITE


def test_du_val_validation():
    assert DuValSpec.parse("a3") == DuValSpec("A", 3)
    assert DuValSpec.parse("E7").name == "E7"
    for bad in [("A", 0), ("D", 3), ("E9", None), ("E6", 7)]:
        with pytest.raises(ValueError):
            DuValSpec(*bad)


BASES = [P(t) for t in ["y", "-x^3 - y^5", "-(x^2 + y^4)", "x^2 + y^2", "x^2*y - y^3",
                        "x^2*(1 - x^2)"]]


@settings(max_examples=50)
@given(int_matrices(height=4), st.sampled_from(range(len(BASES))))
def test_gl2_non_contradiction(M, i):
    assert classify_invariance_check(BASES[i], M)
