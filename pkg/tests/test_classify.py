import math
from fractions import Fraction

import pytest
import sympy

from toricmld.classify import (
    EXCEPTIONAL,
    HYPERSURFACE,
    SATURATED,
    admissible_hypersurface_pairs,
    classify_curve,
    feasible_pairs,
    half_lemma_check,
    verify_saturated_lc,
)
from toricmld.errors import MathError, NormalFormError
from toricmld.ideals import WeightedHomPoly

X = sympy.symbols("x1 x2 x3")


def poly(w1, w2, terms):
    return WeightedHomPoly.make((w1, w2, 1), terms)


def to_sympy(f):
    return sum(sympy.Rational(c.numerator, c.denominator) * X[0] ** e[0] * X[1] ** e[1] * X[2] ** e[2]
               for e, c in f.terms)


def expand_back(case):
    """Compose the normal form with the recorded coordinate changes, independently of the library."""
    g = to_sympy(case.normal_form)
    names = {str(x): x for x in X}
    for step in reversed(case.to_json()["substitutions"]):
        g = g.subs({names[k]: sympy.sympify(v, locals=names) for k, v in step.items()}, simultaneous=True)
    scale = sympy.Rational(case.to_json()["scale"])
    return sympy.expand(scale * g)


CASES = [
    ((2, 1), {"x1*x3": 1, "x2^3": 1}, HYPERSURFACE, (1, 3)),
    ((3, 2), {"x1*x2": 1, "x3^5": 1}, SATURATED, None),
    ((1, 1), {"x1^2": 1, "x2*x3": 1}, SATURATED, None),
    ((2, 2), {"x1*x2": 1, "x3^4": 1}, SATURATED, None),
    ((2, 2), {"x1^2": 1, "x2*x3^2": 1}, HYPERSURFACE, (2, 2)),
    ((5, 3), {"x1*x3": 1, "x2^2": 1}, HYPERSURFACE, (1, 2)),
    ((3, 1), {"x1*x3": 1, "x2^4": 1, "x2^2*x3^2": 3, "x2*x3^3": 1}, HYPERSURFACE, (1, 4)),
    ((2, 1), {"x1*x3": 1, "x2^3": 1, "x2^2*x3": 1}, HYPERSURFACE, (1, 3)),
    ((3, 2), {"x1*x2": 2, "x2*x3^3": 1, "x3^5": 1, "x1*x3^2": -1}, SATURATED, None),
    ((4, 3), {"x1*x3^2": "1/2", "x2^2": 3, "x2*x3^3": 1}, HYPERSURFACE, (2, 2)),
]


@pytest.mark.parametrize("w,terms,tag,pq", CASES)
def test_normal_forms_expand_back(w, terms, tag, pq):
    f = poly(*w, terms)
    case = classify_curve(w, f)
    assert case.tag == tag
    if pq is not None:
        assert (case.p, case.q) == pq
        assert case.constraint_holds()
        w1, w2 = w
        assert w1 + case.p == case.q * w2 <= w1 + w2
    assert sympy.expand(expand_back(case) - to_sympy(f)) == 0


def test_classification_is_idempotent_on_normal_forms():
    for w1 in range(1, 7):
        for w2 in range(1, w1 + 1):
            for p, q in admissible_hypersurface_pairs(w1, w2):
                case = classify_curve((w1, w2), poly(w1, w2, {f"x1*x3^{p}" if p > 1 else "x1*x3": 1, f"x2^{q}": 1}))
                if w1 == 1:
                    # on P(1,1,1) a smooth conic is reported in the saturated form
                    assert case.tag == SATURATED
                    continue
                assert case.tag == HYPERSURFACE and (case.p, case.q) == (p, q)
                assert case.substitutions == ()


def test_admissible_pairs():
    assert admissible_hypersurface_pairs(2, 1) == [(1, 3)]
    for w1 in range(1, 9):
        for w2 in range(1, w1 + 1):
            for p, q in admissible_hypersurface_pairs(w1, w2):
                assert p >= 1 and w1 + p == q * w2 <= w1 + w2


def test_exceptional_divisor():
    case = classify_curve((3, 2), None)
    assert case.tag == EXCEPTIONAL
    assert case.to_json() == {"case": EXCEPTIONAL, "weights": [3, 2]}


@pytest.mark.parametrize("w,terms,message", [
    ((3, 1), {"x1*x3^2": 1, "x2^5": 1}, "degree"),
    ((2, 1), {"x2*x3": 1}, "divisible by x3"),
    ((1, 1), {"x1^2": 1, "x2^2": -1}, "two components"),
    ((2, 2), {"x1^2": 1, "x2^2": -2}, "rationals"),
])
def test_rejected_curves(w, terms, message):
    with pytest.raises(NormalFormError, match=message):
        classify_curve(w, poly(*w, terms))


def test_weight_order_and_mismatch():
    with pytest.raises(MathError):
        classify_curve((1, 2), None)
    with pytest.raises(MathError):
        classify_curve((3, 2), poly(2, 1, {"x1*x3": 1, "x2^3": 1}))


# the one-half inequality chain


def test_half_forces_two_one():
    v = half_lemma_check(2, 1, Fraction(1, 2))
    assert v.feasible and v.forced_weights == (2, 1)
    assert feasible_pairs(Fraction(1, 2), 12) == [(2, 1)]
    assert not half_lemma_check(3, 2, Fraction(1, 2)).chain_holds


def test_below_half_is_infeasible():
    for t in (Fraction(1, 3), Fraction(2, 5), Fraction(49, 100)):
        assert feasible_pairs(t, 12) == []


def test_chain_bounds_match_direct_inequality():
    for t in (Fraction(1, 2), Fraction(3, 5), Fraction(2, 3), Fraction(1)):
        expect = [(a, b) for a in range(1, 13) for b in range(1, a + 1)
                  if math.gcd(a, b) == 1 and (1 - t) * a <= b <= t * a]
        assert feasible_pairs(t, 12) == expect


def test_step_identity_symbolically():
    w1, w2, t, b = sympy.symbols("w1 w2 t b", positive=True)
    lhs = ((w1 + w2 - 1) + b - t * w1) / (w1 * w2)
    rhs = 1 / w1 + (1 - t) / w2 - (1 - b) / (w1 * w2)
    assert sympy.simplify(lhs - rhs) == 0
    for (a, c) in [(2, 1), (3, 2), (5, 3)]:
        v = half_lemma_check(a, c, Fraction(1, 2), Fraction(1, 3))
        assert v.step_identity
        assert v.step_value == Fraction(a + c - 1) / (a * c) + (Fraction(1, 3) - Fraction(a, 2)) / (a * c)


def test_half_input_errors():
    with pytest.raises(MathError):
        half_lemma_check(4, 2, Fraction(1, 2))
    with pytest.raises(MathError):
        half_lemma_check(2, 1, 0)
    with pytest.raises(MathError):
        half_lemma_check(2, 1, Fraction(1, 2), 2)


# log canonicity of the saturated case


def test_saturated_lc_for_small_coprime_weights():
    for w1 in range(1, 9):
        for w2 in range(1, w1 + 1):
            if math.gcd(w1, w2) == 1:
                rep = verify_saturated_lc(w1, w2)
                assert rep.lc, (w1, w2)
                assert rep.to_json()["line_coefficient"] == "1"


def test_saturated_lc_reduces_common_factor():
    rep = verify_saturated_lc(4, 2)
    assert rep.lc and rep.to_json()["gcd"] == 2 and rep.to_json()["reduced"] == [2, 1]
