from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pythlab.exact import householder, mat_mul, transpose
from pythlab.polycore import Poly, parse_poly
from pythlab.ringext import (DegenerateModulusError, ModulusMismatchError, ReductionError,
                             ReductionTrace, RingElem, RingRepresentation, expand_square_sum,
                             radical_multiple, reduce_representation,
                             representation_from_decomposition, ring_mul, rotate_representation,
                             search_representation, verify_representation)
from pythlab.witness import build_family, constructive_decomposition
from strategies import polys, unit_vectors

P = parse_poly
ROT = [[Fraction(3, 5), Fraction(-4, 5)], [Fraction(4, 5), Fraction(3, 5)]]


def constructed(n, f="y"):
    seq = build_family(P(f), max(n, 2))
    rep = representation_from_decomposition(seq.poly(n), seq.base,
                                            constructive_decomposition(seq, n))
    return seq, rep


def rotated(rep):
    k = len(rep.pairs)
    Q = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    for i in range(2):
        for j in range(2):
            Q[i][j] = ROT[i][j]
    return rotate_representation(rep, Q)


class TestRing:
    def test_multiplication(self):
        u = RingElem(P("x"), P("1"), P("y"))
        assert ring_mul(u, u) == RingElem(P("x^2 + y"), P("2*x"), P("y"))

    def test_square_modulus_rejected(self):
        with pytest.raises(DegenerateModulusError):
            RingElem(P("1"), P("1"), P("(x + y)^2"))
        with pytest.raises(DegenerateModulusError):
            RingElem(P("1"), P("1"), P("0"))

    def test_mismatch(self):
        with pytest.raises(ModulusMismatchError):
            RingElem(P("1"), P("0"), P("y")) + RingElem(P("1"), P("0"), P("x"))


@given(unit_vectors())
def test_householder_is_orthogonal(a):
    H = householder(a)
    n = len(a)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    assert mat_mul(transpose(H), H) == ident
    assert [sum(H[i][j] * a[j] for j in range(n)) for i in range(n)] == ident[-1]


class TestReduction:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_constructed_reduces(self, n):
        seq, rep = constructed(n)
        assert verify_representation(rep)
        out = reduce_representation(rep, seq)
        assert verify_representation(out)
        assert out.target == seq.poly(n - 1)
        assert len(out.pairs) == n - 1

    @pytest.mark.parametrize("n", [2, 3])
    def test_rotated_reduces(self, n):
        seq, rep = constructed(n)
        rep = rotated(rep)
        assert verify_representation(rep)
        trace = ReductionTrace()
        out = reduce_representation(rep, seq, trace)
        assert verify_representation(out) and out.target == seq.poly(n - 1)

    def test_chain_to_one(self):
        seq, rep = constructed(3)
        while len(rep.pairs) > 1:
            rep = reduce_representation(rep, seq)
        assert rep.target == 1
        assert search_representation(P("1"), P("y"), 1, 4, radical_only=True) is None

    def test_wrong_target_refused(self):
        seq, rep = constructed(3)
        bad = RingRepresentation(rep.modulus, rep.pairs, rep.target + 1)
        assert not verify_representation(bad)
        with pytest.raises(ReductionError):
            reduce_representation(bad, seq)

    def test_json_round_trip(self):
        _, rep = constructed(3)
        assert RingRepresentation.from_json(rep.to_json()) == rep


class TestSearch:
    def test_radical_multiple(self):
        assert radical_multiple(P("y^3 + y*x^2"), P("y"), 2) == P("y^2 + x^2")
        assert radical_multiple(P("1"), P("y"), 4) is None

    def test_single_pair(self):
        F2 = build_family(P("y"), 2).poly(2)
        assert search_representation(F2, P("y"), 1, 4) is None
        rep = search_representation(F2, P("y"), 2, 4)
        assert rep is not None and verify_representation(rep)

    def test_f_itself(self):
        rep = search_representation(P("y"), P("y"), 1, 2)
        assert rep is not None and verify_representation(rep)

    def test_mixed(self):
        target = P("x^2 + y + 1 + y*x^2")
        rep = search_representation(target, P("y"), 2, 2)
        assert rep is not None and verify_representation(rep) and rep.target == target


@given(st.lists(st.tuples(polys(max_deg=2, max_terms=3), polys(max_deg=2, max_terms=3)),
                min_size=1, max_size=3))
def test_expansion_identity(pairs):
    f = P("x^3 - y")
    sym, cross = expand_square_sum(pairs, f)
    total = RingElem(Poly.zero(), Poly.zero(), f)
    for a, b in pairs:
        e = RingElem(a, b, f)
        total = total + ring_mul(e, e)
    assert (total.h1, total.h2) == (sym, cross)
