from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from toricmld.algebra import (
    Constraint,
    SimplicialCone,
    cone_membership,
    determinant,
    element_order,
    fmt,
    frac,
    in_lattice,
    is_primitive,
    maximize,
    minimize,
    primitive,
    quotient_group,
    solve_square,
)

small = st.integers(min_value=-6, max_value=6)


def test_frac_and_fmt_round_trip():
    assert frac("3/6") == Fraction(1, 2)
    assert frac(2) == Fraction(2)
    assert fmt(Fraction(4, 2)) == "2"
    assert fmt(Fraction(-3, 9)) == "-1/3"
    assert frac(fmt(Fraction(7, 12))) == Fraction(7, 12)


def test_frac_rejects_non_rationals():
    with pytest.raises(ValueError):
        frac("abc")
    with pytest.raises(TypeError):
        frac(0.5)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=80, deadline=None)
def test_determinant_matches_sympy(rows):
    assert determinant(rows) == sympy.Matrix(rows).det()


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(small, min_size=3, max_size=3))
@settings(max_examples=80, deadline=None)
def test_solve_square_solves_or_reports_singular(rows, rhs):
    x = solve_square(rows, rhs)
    if sympy.Matrix(rows).det() == 0:
        assert x is None
    else:
        for r, b in zip(rows, rhs):
            assert sum(Fraction(a) * xi for a, xi in zip(r, x)) == b


def test_primitive_on_quotient_lattice():
    # on 1/2(1,1,1) the point (1/2,1/2,1/2) is in the lattice, so (1,1,1) is not primitive
    assert in_lattice((Fraction(1, 2),) * 3, 2, (1, 1, 1))
    assert not in_lattice((Fraction(1, 2), 0, 0), 2, (1, 1, 1))
    assert primitive((1, 1, 1), 2, (1, 1, 1)) == (Fraction(1, 2),) * 3
    assert primitive((4, 6)) == (2, 3)
    assert is_primitive((2, 3))
    assert not is_primitive((2, 4))


def test_cone_membership_and_coefficients():
    cone = SimplicialCone(((1, 0), (1, 2)))
    inside = cone_membership(cone, (2, 1))
    assert inside.inside
    assert cone.coefficients((2, 1)) == (Fraction(3, 2), Fraction(1, 2))
    assert not cone_membership(cone, (0, 1)).inside


def test_quotient_group_order_equals_index():
    basis = ((2, 1), (0, 1))
    group = quotient_group(basis, ((1, 0), (0, 1)))
    assert len(group) == abs(determinant(basis))
    assert all(element_order(c) in (1, 2) for c in group)


def test_lp_small_known_optimum():
    # minimise x + y subject to x + 2y >= 4, 3x + y >= 6
    res = minimize((1, 1), [Constraint((1, 2), ">=", 4), Constraint((3, 1), ">=", 6)], nonneg=(True, True))
    assert res.optimal
    assert res.value == Fraction(14, 5)
    assert res.point == (Fraction(8, 5), Fraction(6, 5))


def test_lp_infeasible_and_unbounded():
    res = minimize((1,), [Constraint((1,), ">=", 2), Constraint((1,), "<=", 1)], nonneg=(True,))
    assert not res.optimal and res.status == "infeasible"
    res = maximize((1,), [Constraint((1,), ">=", 0)], nonneg=(True,))
    assert not res.optimal and res.status == "unbounded"


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(1, 12)), min_size=1, max_size=5),
       st.tuples(st.integers(1, 5), st.integers(1, 5)))
@settings(max_examples=60, deadline=None)
def test_lp_agrees_with_scipy(rows, cost):
    cons = [Constraint((a, b), ">=", c) for a, b, c in rows if a or b]
    if not cons:
        return
    res = minimize(cost, cons, nonneg=(True, True))
    ref = linprog(cost, A_ub=[[-c.coeffs[0], -c.coeffs[1]] for c in cons], b_ub=[-c.rhs for c in cons],
                  bounds=[(0, None)] * 2, method="highs")
    assert res.optimal == (ref.status == 0)
    if res.optimal:
        assert float(res.value) == pytest.approx(ref.fun, abs=1e-9)
        assert all(c.holds(res.point) for c in cons)
