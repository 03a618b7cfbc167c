"""Centres of crepant divisors on a (w1, w2, 1) weighted blow-up of a smooth threefold.

A divisor E computing an mld equal to one with ord_E(m) = 1 either is the
exceptional divisor F of such a blow-up or has as centre a curve on
F = P(w1, w2, 1). ``classify_curve`` brings the weighted-homogeneous equation
of that curve into one of two normal forms by explicit coordinate changes:

    x1*x3^p + x2^q      with w1 + p = q*w2 <= w1 + w2
    x1*x2 + x3^(w1+w2)

All coefficients are rational and every change of coordinates is recorded
and checked by expanding the normal form back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import fmt
from .blowup import different_on_exceptional, weighted_blowup
from .errors import MathError, NormalFormError
from .ideals import (
    WeightedHomPoly,
    newton_polygon_lct,
    poly_add,
    substitute,
)
from .valuations import ToricGerm

EXCEPTIONAL = "ExceptionalDivisor"
HYPERSURFACE = "HypersurfaceCurve"
SATURATED = "SaturatedCurve"

_X = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def _mono(e, c=1) -> dict:
    return {tuple(e): Fraction(c)}


def _scale(p: dict, c) -> dict:
    c = Fraction(c)
    return {e: v * c for e, v in p.items() if v * c != 0}


def _x3pow(k: int, c=1) -> dict:
    return _mono((0, 0, k), c)


def _poly_str(weights, p: dict) -> str:
    return str(WeightedHomPoly(tuple(weights), tuple(p.items())))


@dataclass(frozen=True)
class Substitution:
    """New coordinates written in the previous ones (unlisted variables are unchanged)."""

    forward: dict  # 0-based variable -> polynomial dict
    inverse: dict

    def to_json(self, weights) -> dict:
        return {f"x{i + 1}": _poly_str(weights, p) for i, p in sorted(self.forward.items())}


@dataclass(frozen=True)
class CrepantCase:
    tag: str
    weights: tuple
    p: int | None = None
    q: int | None = None
    substitutions: tuple = ()
    scale: Fraction = Fraction(1)
    normal_form: WeightedHomPoly | None = None
    notes: tuple = field(default=())

    def constraint_holds(self) -> bool:
        if self.tag != HYPERSURFACE:
            return True
        w1, w2 = self.weights
        return w1 + self.p == self.q * w2 <= w1 + w2

    def to_json(self) -> dict:
        w = (self.weights[0], self.weights[1], 1)
        out = {"case": self.tag, "weights": list(self.weights)}
        if self.tag == HYPERSURFACE:
            out["p"], out["q"] = self.p, self.q
        if self.normal_form is not None:
            out["normal_form"] = str(self.normal_form)
            out["scale"] = fmt(self.scale)
            out["substitutions"] = [s.to_json(w) for s in self.substitutions]
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def hypersurface_form(w1: int, w2: int, p: int, q: int) -> WeightedHomPoly:
    return WeightedHomPoly.make((w1, w2, 1), {(1, 0, p): 1, (0, q, 0): 1})


def saturated_form(w1: int, w2: int) -> WeightedHomPoly:
    return WeightedHomPoly.make((w1, w2, 1), {(1, 1, 0): 1, (0, 0, w1 + w2): 1})


def admissible_hypersurface_pairs(w1: int, w2: int) -> list[tuple[int, int]]:
    """All (p, q) with p >= 1 and w1 + p = q*w2 <= w1 + w2."""
    out = []
    for p in range(1, w2 + 1):
        if (w1 + p) % w2 == 0:
            out.append((p, (w1 + p) // w2))
    return out


class _Tracker:
    def __init__(self, f: WeightedHomPoly):
        self.f = f
        self.steps: list[Substitution] = []

    def apply(self, forward: dict, inverse: dict) -> None:
        forward = {k: v for k, v in forward.items() if v != _mono(_X[k])}
        inverse = {k: v for k, v in inverse.items() if v != _mono(_X[k])}
        if not forward:
            return
        self.f = substitute(self.f, inverse)
        self.steps.append(Substitution(forward, inverse))


def _fail(message: str, condition: str, f: WeightedHomPoly, **details):
    raise NormalFormError(message, condition=condition, polynomial=str(f), **details)


def _check_input(w1: int, w2: int, f: WeightedHomPoly) -> None:
    if w2 < 1 or w1 < w2:
        raise MathError("weights must satisfy w1 >= w2 >= 1", w1=w1, w2=w2)
    if f.weights != (w1, w2, 1):
        raise MathError("polynomial weights differ from (w1, w2, 1)", weights=list(f.weights))
    d = f.degree
    if d > w1 + w2:
        _fail("curve degree exceeds w1 + w2", "degree <= w1 + w2", f, degree=d)
    if all(e[2] >= 1 for e, _ in f.terms):
        _fail("polynomial is divisible by x3", "centre not contained in {x3 = 0}", f)
    if all(e[0] == 0 for e, _ in f.terms):
        _fail("no monomial involves x1", "some monomial involves x1", f)


def _hypersurface_branch(tr: _Tracker, w1: int, w2: int):
    """Reduce c*x1*x3^p + (terms in x2, x3) to x1*x3^p + x2^q."""
    f = tr.f
    d = f.degree
    p = d - w1
    x1_terms = [e for e, _ in f.terms if e[0] > 0]
    if x1_terms != [(1, 0, p)]:
        _fail("unexpected monomials involving x1", "only x1*x3^p involves x1", f, monomials=[list(e) for e in x1_terms])
    if p == 0:
        _fail("the curve is a coordinate locus x1 + h(x2, x3)", "centre not contained in a u1 locus", f)
    q = d // w2
    lam_q = f.coeff((0, q, d - q * w2))
    if lam_q == 0 or d != q * w2:
        _fail(
            "the forced coefficient of x2^q vanishes, so the curve is reducible",
            "lambda_q != 0 and w1 + p = q*w2",
            f,
            p=p,
            q=q,
        )
    c = f.coeff((1, 0, p))
    h = {}
    for e, v in f.terms:
        if e[0] == 0 and e[1] < q:
            # lambda_i x2^i x3^(w1 + p - i w2) = x3^p * lambda_i x2^i x3^(w1 - i w2)
            h = poly_add(h, _mono((0, e[1], e[2] - p), v))
    new_x1 = _scale(poly_add(_mono(_X[0], c), h), 1 / lam_q)
    old_x1 = _scale(poly_add(_mono(_X[0], lam_q), _scale(h, -1)), 1 / c)
    tr.apply({0: new_x1}, {0: old_x1})
    return HYPERSURFACE, p, q, lam_q


def _saturated_branch(tr: _Tracker, w1: int, w2: int):
    """Reduce alpha*x1*x2 + beta*x1*x3^w2 + (terms in x2, x3) to x1*x2 + x3^(w1+w2)."""
    f = tr.f
    d = f.degree
    alpha = f.coeff((1, 1, 0))
    beta = f.coeff((1, 0, w2))
    s = beta / alpha
    tr.apply(
        {1: poly_add(_mono(_X[1]), _x3pow(w2, s))},
        {1: poly_add(_mono(_X[1]), _x3pow(w2, -s))},
    )
    f = tr.f
    lam0 = f.coeff((0, 0, d))
    if lam0 == 0:
        _fail("the curve contains the locus x2 = 0 and is reducible", "lambda_0 != 0", f)
    h = {}
    for e, v in f.terms:
        if e[0] == 0 and e[1] >= 1:
            h = poly_add(h, _mono((0, e[1] - 1, e[2]), v))
    new_x1 = _scale(poly_add(_mono(_X[0], alpha), h), 1 / lam0)
    old_x1 = _scale(poly_add(_mono(_X[0], lam0), _scale(h, -1)), 1 / alpha)
    tr.apply({0: new_x1}, {0: old_x1})
    return SATURATED, None, None, lam0


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, m = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and m * m == x.denominator:
        return Fraction(n, m)
    return None


def _equal_weights_branch(tr: _Tracker, w: int):
    """Case w1 = w2 = w: split on the rank of the quadratic part in x1, x2."""
    f = tr.f
    a, b, c = f.coeff((2, 0, 0)), f.coeff((1, 1, 0)), f.coeff((0, 2, 0))
    disc = b * b - 4 * a * c
    lin = lambda u, v: poly_add(_mono(_X[0], u), _mono(_X[1], v))  # noqa: E731
    if disc != 0:
        root = _rational_sqrt(disc)
        if root is None:
            _fail(
                "the quadratic part does not split over the rationals",
                "rational factorization of the x1, x2 quadratic part",
                f,
                discriminant=fmt(disc),
            )
        # quadratic part = l1 * l2 with l1 carrying x1 and l2 carrying x2
        if a != 0:
            r1, r2 = (-b + root) / (2 * a), (-b - root) / (2 * a)
            if r2 == 0:
                r1, r2 = r2, r1
            l1, l2 = (a, -a * r1), (Fraction(1), -r2)
        else:
            l1, l2 = (b, c), (Fraction(0), Fraction(1))
        det = l1[0] * l2[1] - l1[1] * l2[0]
        tr.apply(
            {0: lin(*l1), 1: lin(*l2)},
            {0: lin(l2[1] / det, -l1[1] / det), 1: lin(-l2[0] / det, l1[0] / det)},
        )
        f = tr.f
        mu1, mu2, mu3 = f.coeff((1, 0, w)), f.coeff((0, 1, w)), f.coeff((0, 0, 2 * w))
        lam3 = mu3 - mu1 * mu2
        if lam3 == 0:
            _fail("the curve splits into two components", "lambda_3 != 0", f)
        tr.apply(
            {0: _scale(poly_add(_mono(_X[0]), _x3pow(w, mu2)), 1 / lam3), 1: poly_add(_mono(_X[1]), _x3pow(w, mu1))},
            {0: poly_add(_mono(_X[0], lam3), _x3pow(w, -mu2)), 1: poly_add(_mono(_X[1]), _x3pow(w, -mu1))},
        )
        return SATURATED, None, None, lam3
    if a == 0 and c == 0:
        _fail("polynomial is divisible by x3", "centre not contained in {x3 = 0}", f)
    # rank one: quadratic part = kappa * y2^2
    if c != 0:
        s = b / (2 * c)
        tr.apply({1: lin(s, 1)}, {1: lin(-s, 1)})
    else:
        tr.apply({0: _mono(_X[1]), 1: _mono(_X[0])}, {0: _mono(_X[1]), 1: _mono(_X[0])})
    f = tr.f
    kappa = f.coeff((0, 2, 0))
    l1, l2, l3 = f.coeff((1, 0, w)), f.coeff((0, 1, w)), f.coeff((0, 0, 2 * w))
    if l1 == 0:
        _fail("no monomial involves x1 after diagonalizing", "lambda_1 != 0", f)
    fwd = _scale(poly_add(poly_add(_mono(_X[0], l1), _mono(_X[1], l2)), _x3pow(w, l3)), 1 / kappa)
    inv = _scale(poly_add(poly_add(_mono(_X[0], kappa), _mono(_X[1], -l2)), _x3pow(w, -l3)), 1 / l1)
    tr.apply({0: fwd}, {0: inv})
    if w == 1:
        # x1*x3 + x2^2 is a conic in P^2; swapping x2 and x3 gives the saturated form
        tr.apply({1: _mono(_X[2]), 2: _mono(_X[1])}, {1: _mono(_X[2]), 2: _mono(_X[1])})
        return SATURATED, None, None, kappa
    return HYPERSURFACE, w, 2, kappa


def classify_curve(weights, f: WeightedHomPoly | None) -> CrepantCase:
    """Normal form of the centre of a crepant divisor on P(w1, w2, 1).

    ``f`` is the weighted-homogeneous equation of the centre curve; ``None``
    means the divisor is the exceptional divisor itself. Irreducibility of
    ``f`` is the caller's responsibility, but every reducibility the normal
    form reduction runs into is reported as a ``NormalFormError``.
    """
    w1, w2 = (int(x) for x in weights)
    if f is None:
        if w2 < 1 or w1 < w2:
            raise MathError("weights must satisfy w1 >= w2 >= 1", w1=w1, w2=w2)
        return CrepantCase(EXCEPTIONAL, (w1, w2))
    _check_input(w1, w2, f)
    tr = _Tracker(f)
    d = f.degree
    if w1 == w2 and d == 2 * w1:
        tag, p, q, scale = _equal_weights_branch(tr, w1)
    elif d == w1 + w2 and f.coeff((1, 1, 0)) != 0:
        tag, p, q, scale = _saturated_branch(tr, w1, w2)
    else:
        tag, p, q, scale = _hypersurface_branch(tr, w1, w2)
    normal = hypersurface_form(w1, w2, p, q) if tag == HYPERSURFACE else saturated_form(w1, w2)
    case = CrepantCase(tag, (w1, w2), p, q, tuple(tr.steps), scale, normal)
    _verify_expansion(case, f)
    return case


def _verify_expansion(case: CrepantCase, f: WeightedHomPoly) -> None:
    """Expand scale * normal form through the recorded substitutions and compare with f."""
    g = case.normal_form
    for step in reversed(case.substitutions):
        g = substitute(g, step.forward)
    expanded = _scale(g.as_dict, case.scale)
    if expanded != f.as_dict:
        raise NormalFormError("normal form does not expand back to the input", polynomial=str(f))


# --------------------------------------------------------------------------
# The one-half inequality chain


@dataclass(frozen=True)
class HalfLemmaVerdict:
    weights: tuple
    t: Fraction
    b: Fraction
    lower: Fraction  # (1 - t) w1
    upper: Fraction  # t w1
    chain_holds: bool  # (1 - t) w1 <= w2 <= t w1 for the given weights
    feasible: bool  # some positive weights satisfy the chain
    forced_half: bool  # feasibility implies t >= 1/2
    forced_weights: tuple | None  # the unique coprime pair when the chain pins w2/w1
    step_value: Fraction  # ((w1 + w2 - 1) + b - t w1) * (-F^2)
    step_identity: bool
    step_conclusion: bool  # step_value > 1 forces w2 = 1 and t w1 < b

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "t": fmt(self.t),
            "b": fmt(self.b),
            "lower": fmt(self.lower),
            "upper": fmt(self.upper),
            "chain_holds": self.chain_holds,
            "feasible": self.feasible,
            "forced_half": self.forced_half,
            "forced_weights": None if self.forced_weights is None else list(self.forced_weights),
            "step_value": fmt(self.step_value),
            "step_identity": self.step_identity,
            "step_conclusion": self.step_conclusion,
        }


def half_lemma_check(w1: int, w2: int, t, b=0) -> HalfLemmaVerdict:
    """Evaluate the inequality chain (1 - t) w1 <= w2 <= t w1 behind the one-half bound."""
    w1, w2 = int(w1), int(w2)
    t, b = Fraction(t), Fraction(b)
    if not w1 >= w2 >= 1:
        raise MathError("weights must satisfy w1 >= w2 >= 1", w1=w1, w2=w2)
    if math.gcd(w1, w2) != 1:
        raise MathError("weights must be coprime", w1=w1, w2=w2)
    if not 0 <= b < 1 or t <= 0:
        raise MathError("need 0 <= b < 1 and t > 0", t=fmt(t), b=fmt(b))
    lower, upper = (1 - t) * w1, t * w1
    # the ratio w2/w1 must lie in [max(1 - t, 0), min(t, 1)] and be positive
    lo, hi = max(1 - t, Fraction(0)), min(t, Fraction(1))
    feasible = lo <= hi and hi > 0
    forced = None
    if feasible and lo == hi:
        forced = (lo.denominator, lo.numerator)
    neg_f2 = Fraction(1, w1 * w2)
    value = ((w1 + w2 - 1) + b - t * w1) * neg_f2
    identity = value == Fraction(1, w1) + (1 - t) / w2 - (1 - b) / (w1 * w2)
    conclusion = value <= 1 or (w2 == 1 and t * w1 < b)
    return HalfLemmaVerdict(
        (w1, w2), t, b, lower, upper,
        lower <= w2 <= upper, feasible, (not feasible) or t >= Fraction(1, 2), forced,
        value, identity, conclusion,
    )


def feasible_pairs(t, bound: int) -> list[tuple[int, int]]:
    """Coprime (w1, w2) with bound >= w1 >= w2 satisfying the chain for ``t``."""
    t = Fraction(t)
    return [
        (w1, w2)
        for w1 in range(1, bound + 1)
        for w2 in range(1, w1 + 1)
        if math.gcd(w1, w2) == 1 and (1 - t) * w1 <= w2 <= t * w1
    ]


# --------------------------------------------------------------------------
# Log canonicity of (F, C + L) in the saturated case


@dataclass(frozen=True)
class PointCertificate:
    point: str
    index: int  # order of the cyclic quotient at the point
    local_terms: tuple  # exponents of the local equation of C + L on the cover
    on_boundary: bool
    lct: Fraction | None
    lc: bool

    def to_json(self) -> dict:
        return {
            "point": self.point,
            "index": self.index,
            "local_terms": [list(e) for e in self.local_terms],
            "on_boundary": self.on_boundary,
            "lct": None if self.lct is None else fmt(self.lct),
            "lc": self.lc,
        }


@dataclass(frozen=True)
class SaturatedLcReport:
    weights: tuple
    gcd: int
    reduced: tuple
    line_coefficient: Fraction  # different plus restriction of H3 along L
    points: tuple
    line_adjunction: tuple  # coefficients of Q1, Q2 in K_L + (C + L)|_L
    lc: bool

    def __bool__(self) -> bool:
        return self.lc

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "gcd": self.gcd,
            "reduced": list(self.reduced),
            "line_coefficient": fmt(self.line_coefficient),
            "points": [p.to_json() for p in self.points],
            "line_adjunction": [fmt(x) for x in self.line_adjunction],
            "lc": self.lc,
        }


def _dehomogenize(p: dict, k: int) -> list[tuple[int, int]]:
    return sorted({tuple(x for i, x in enumerate(e) if i != k) for e in p})


def verify_saturated_lc(w1: int, w2: int) -> SaturatedLcReport:
    """Check that (F, C + L) is lc for C = {x1*x2 + x3^(w1+w2)} and L = {x3 = 0}.

    Common factors g of w1, w2 are removed first: the different of F along L
    has coefficient 1 - 1/g and F restricts x3 = 0 to L/g, so L enters with
    coefficient one on P(w1/g, w2/g, 1).
    """
    w1, w2 = int(w1), int(w2)
    if not w1 >= w2 >= 1:
        raise MathError("weights must satisfy w1 >= w2 >= 1", w1=w1, w2=w2)
    g = math.gcd(w1, w2)
    diff = different_on_exceptional(weighted_blowup(ToricGerm.smooth(3), (w1, w2, 1)))
    line = next(x for x in diff["lines"] if x["line"] == "F*H3")
    line_coeff = Fraction(line["coefficient"]) + Fraction(1, line["index"])
    v1, v2 = w1 // g, w2 // g
    n = v1 + v2
    curve_plus_line = {(1, 1, 1): Fraction(1), (0, 0, n + 1): Fraction(1)}
    certs = []
    for k, r in enumerate((v1, v2, 1)):
        terms = _dehomogenize(curve_plus_line, k)
        if (0, 0) in terms:
            certs.append(PointCertificate(f"Q{k + 1}", r, tuple(terms), False, None, True))
            continue
        nl = newton_polygon_lct(terms)
        # lc on the smooth cover implies lc on the quotient, which is etale in codimension one
        certs.append(PointCertificate(f"Q{k + 1}", r, tuple(terms), True, nl.value, nl.value >= 1))
    # along L: different (1 - 1/r) at Qi plus C|_L, which is one transverse point on the cover
    curve = {(1, 1, 0): Fraction(1), (0, 0, n): Fraction(1)}
    adj = []
    for k, r in enumerate((v1, v2)):
        # order along L of the local equation of C restricted to x3 = 0
        mult = min(e[0] for e in _dehomogenize(curve, k) if e[1] == 0)
        adj.append((1 - Fraction(1, r)) + Fraction(mult, r))
    lc = line_coeff == 1 and all(c.lc for c in certs) and all(x <= 1 for x in adj)
    return SaturatedLcReport((w1, w2), g, (v1, v2), line_coeff, tuple(certs), tuple(adj), lc)
