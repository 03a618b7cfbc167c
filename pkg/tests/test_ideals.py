from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricmld.errors import DimensionError, InhomogeneousError, MathError
from toricmld.ideals import (
    MonomialIdeal,
    MonomialRIdeal,
    WeightedHomPoly,
    all_monomials_of_degree,
    newton_polygon_lct,
    newton_polyhedron_membership,
    ord_along,
    parse_terms,
    substitute,
)

gens3 = st.lists(st.tuples(*[st.integers(0, 6)] * 3), min_size=1, max_size=4)
weight3 = st.tuples(*[st.integers(1, 9)] * 3)


def test_minimal_generators_drop_redundant_monomials():
    i = MonomialIdeal(((2, 0), (3, 1), (0, 2), (1, 2)))
    assert set(i.generators) == {(2, 0), (0, 2)}


def test_json_round_trip():
    a = MonomialRIdeal.of([[1, 2, 0], [0, 0, 3]], "2/5") * MonomialRIdeal.of([[1, 1, 1]], 1)
    assert MonomialRIdeal.from_json(a.to_json()) == a
    assert a.describe() == "(z^3,xy^2)^2/5*(xyz)^1"


def test_malformed_ideals():
    with pytest.raises(MathError):
        MonomialRIdeal.from_json({"dim": 2})
    with pytest.raises(DimensionError):
        MonomialRIdeal.from_json({"dim": 2, "factors": [{"gens": [[1, 0, 0]], "exp": "1"}]})
    with pytest.raises(MathError):
        MonomialIdeal(((-1, 0),))
    with pytest.raises(MathError):
        MonomialRIdeal.of([[1, 0]], "-1/2")


@given(gens3, weight3, st.fractions(min_value=0, max_value=3, max_denominator=12))
@settings(max_examples=100, deadline=None)
def test_order_is_minimum_over_generators(gens, w, e):
    a = MonomialRIdeal.of(gens, e)
    expect = e * min(sum(x * y for x, y in zip(g, w)) for g in gens)
    assert ord_along(w, a) == expect


def test_order_dimension_mismatch():
    with pytest.raises(DimensionError):
        ord_along((1, 1), MonomialRIdeal.of([[1, 0, 0]]))


@given(gens3, st.tuples(*[st.integers(0, 12)] * 3), st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=6))
@settings(max_examples=60, deadline=None)
def test_newton_membership_agrees_with_support_function(gens, point, c):
    # p lies in c*Newton(a) iff <w,p> >= c*ord_w(a) for every w on a fine enough grid of directions;
    # here the check only runs the implication that is exact on any sample of w
    inside = newton_polyhedron_membership(MonomialIdeal(tuple(gens)), point, c)
    i = MonomialIdeal(tuple(gens))
    if inside:
        for w in product(range(0, 4), repeat=3):
            assert sum(x * y for x, y in zip(w, point)) >= c * i.order(w)


def test_newton_membership_explicit():
    i = MonomialIdeal(((2, 0), (0, 3)))
    assert newton_polyhedron_membership(i, (1, Fraction(3, 2)), 1)
    assert not newton_polyhedron_membership(i, (1, 1), 1)
    assert newton_polyhedron_membership(i, (Fraction(5, 6), Fraction(5, 4)), Fraction(5, 6))


@pytest.mark.parametrize("a,b", [(2, 3), (3, 4), (2, 5), (4, 4), (3, 7)])
def test_newton_polygon_lct_of_brieskorn_curve(a, b):
    # lct(x^a + y^b) = min(1, 1/a + 1/b)
    res = newton_polygon_lct([(a, 0), (0, b)])
    assert res.value == min(Fraction(1), Fraction(1, a) + Fraction(1, b))
    assert not res.warnings


def test_newton_polygon_lct_flags_non_isolated():
    res = newton_polygon_lct([(1, 1), (0, 6)])
    assert res.value == 1
    assert res.warnings


def test_parse_terms_accepts_several_spellings():
    expect = {(2, 0, 1): Fraction(3, 2), (0, 1, 0): Fraction(-1)}
    assert parse_terms({"2,0,1": "3/2", "0,1,0": -1}) == expect
    assert parse_terms({"x1^2*x3": "3/2", "x2": "-1"}) == expect
    assert parse_terms([[[2, 0, 1], "3/2"], [[0, 1, 0], "-1"]]) == expect
    with pytest.raises(MathError):
        parse_terms({"y^2": 1})


def test_weighted_poly_homogeneity_and_printing():
    f = WeightedHomPoly.make((2, 1, 1), {"x1*x3": 1, "x2^3": 1, "x2": 0})
    assert f.degree == 3
    assert str(WeightedHomPoly.make((2, 1, 1), {"x1": 1, "x2^2": -1})) == "-x2^2 + x1"
    with pytest.raises(InhomogeneousError):
        WeightedHomPoly.make((2, 1, 1), {"x1": 1, "x2": 1})
    with pytest.raises(MathError):
        WeightedHomPoly.make((2, 1, 2), {"x1": 1})
    assert WeightedHomPoly.from_json(f.to_json()) == f


def test_substitute_shift_and_inverse():
    f = WeightedHomPoly.make((2, 1, 1), {"x1*x3": 1, "x2^3": 1})
    g = substitute(f, {0: {"x1": 1, "x2^2": 1}})
    back = substitute(g, {0: {"x1": 1, "x2^2": -1}})
    assert back == f
    assert g.coeff((0, 2, 1)) == 1


def test_substitute_rejects_degenerate_changes():
    f = WeightedHomPoly.make((1, 1, 1), {"x1^2": 1, "x2^2": 1})
    with pytest.raises(InhomogeneousError):
        substitute(f, {0: {"x2": 1}})  # x1 -> x2 collapses two coordinates
    with pytest.raises(InhomogeneousError):
        substitute(f, {0: {"x2^2": 1}})  # wrong weight
    # mixing coordinates of equal weight is fine when the linear part is invertible
    g = substitute(f, {0: {"x2": 1}, 1: {"x1": 1}})
    assert g == f


def test_monomials_of_degree():
    assert all_monomials_of_degree((2, 1, 1), 2) == [(0, 0, 2), (0, 1, 1), (0, 2, 0), (1, 0, 0)]
