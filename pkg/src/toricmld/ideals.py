"""Monomial ideals, monomial R-ideals and weighted-homogeneous polynomials."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from .algebra import Constraint, determinant, dot, fmt, frac, minimize, vec
from .errors import DimensionError, InhomogeneousError, MathError


def _minimize_gens(gens: Iterable[Sequence[int]]) -> tuple:
    pts = sorted({tuple(int(x) for x in g) for g in gens})
    keep = []
    for p in pts:
        if any(all(a <= b for a, b in zip(q, p)) for q in pts if q != p):
            continue
        keep.append(p)
    return tuple(keep)


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by exponent vectors; stored with minimal generators."""

    generators: tuple
    dim: int = 0

    def __post_init__(self):
        gens = [tuple(g) for g in self.generators]
        if not gens:
            raise MathError("the zero ideal is not allowed", hint="use [[0,...,0]] for the unit ideal")
        d = self.dim or len(gens[0])
        if any(len(g) != d for g in gens):
            raise DimensionError("generators have mixed dimensions")
        if any(int(x) != x or x < 0 for g in gens for x in g):
            raise MathError("exponents must be non-negative integers")
        object.__setattr__(self, "generators", _minimize_gens(gens))
        object.__setattr__(self, "dim", d)

    @classmethod
    def maximal(cls, d: int) -> MonomialIdeal:
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @classmethod
    def unit(cls, d: int) -> MonomialIdeal:
        return cls(((0,) * d,))

    @property
    def is_unit(self) -> bool:
        return self.generators == ((0,) * self.dim,)

    def order(self, w: Sequence) -> Fraction:
        w = vec(w)
        return min(dot(w, g) for g in self.generators)

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(tuple(tuple(a + b for a, b in zip(g, h)) for g in self.generators for h in other.generators))

    def power(self, n: int) -> MonomialIdeal:
        out = MonomialIdeal.unit(self.dim)
        for _ in range(n):
            out = out * self
        return out

    def is_m_primary(self) -> bool:
        # a pure power of every variable must be present
        return all(any(g[i] > 0 and sum(g) == g[i] for g in self.generators) for i in range(self.dim))

    def to_json(self) -> list:
        return [list(g) for g in self.generators]


@dataclass(frozen=True)
class MonomialRIdeal:
    """Formal product of monomial ideals with non-negative rational exponents."""

    factors: tuple  # tuple[(MonomialIdeal, Fraction), ...]

    def __post_init__(self):
        fs = []
        for ideal, e in self.factors:
            if not isinstance(ideal, MonomialIdeal):
                ideal = MonomialIdeal(tuple(ideal))
            e = frac(e)
            if e < 0:
                raise MathError("exponents must be non-negative", exponent=fmt(e))
            fs.append((ideal, e))
        if not fs:
            raise MathError("an R-ideal needs at least one factor")
        d = fs[0][0].dim
        if any(f.dim != d for f, _ in fs):
            raise DimensionError("factors have different dimensions")
        object.__setattr__(self, "factors", tuple(fs))

    @classmethod
    def trivial(cls, d: int) -> MonomialRIdeal:
        return cls(((MonomialIdeal.unit(d), Fraction(0)),))

    @classmethod
    def of(cls, gens: Sequence[Sequence[int]], exp=1) -> MonomialRIdeal:
        return cls(((MonomialIdeal(tuple(map(tuple, gens))), frac(exp)),))

    @property
    def dim(self) -> int:
        return self.factors[0][0].dim

    def is_trivial(self) -> bool:
        return all(e == 0 or i.is_unit for i, e in self.factors)

    def __mul__(self, other: MonomialRIdeal) -> MonomialRIdeal:
        return MonomialRIdeal(self.factors + other.factors)

    def __pow__(self, t) -> MonomialRIdeal:
        t = frac(t)
        return MonomialRIdeal(tuple((i, e * t) for i, e in self.factors))

    def active_factors(self):
        return [(i, e) for i, e in self.factors if e != 0 and not i.is_unit]

    def to_json(self) -> dict:
        return {"dim": self.dim, "factors": [{"gens": i.to_json(), "exp": fmt(e)} for i, e in self.factors]}

    @classmethod
    def from_json(cls, data) -> MonomialRIdeal:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            d = int(data["dim"])
            fs = []
            for f in data["factors"]:
                gens = tuple(tuple(int(x) for x in g) for g in f["gens"])
                if any(len(g) != d for g in gens):
                    raise DimensionError("generator length differs from dim", dim=d)
                fs.append((MonomialIdeal(gens, d), frac(str(f.get("exp", "1")))))
        except (KeyError, TypeError, ValueError) as exc:
            raise MathError(f"malformed ideal description: {exc}") from exc
        return cls(tuple(fs))

    def describe(self) -> str:
        names = "xyz" if self.dim <= 3 else None
        parts = []
        for i, e in self.factors:
            gens = []
            for g in i.generators:
                mono = "".join(f"{names[k]}^{g[k]}" if g[k] > 1 else names[k] for k in range(self.dim) if g[k])
                gens.append(mono or "1")
            parts.append(f"({','.join(gens)})^{fmt(e)}")
        return "*".join(parts)


def ord_along(w, a: MonomialRIdeal) -> Fraction:
    """Order of ``a`` along the toric valuation ``w``: sum of exponent times factor order."""
    w = vec(getattr(w, "w", w))
    if len(w) != a.dim:
        raise DimensionError("valuation and ideal dimensions differ", valuation=len(w), ideal=a.dim)
    return sum((e * i.order(w) for i, e in a.factors if e != 0), Fraction(0))


def newton_polyhedron_membership(a: MonomialIdeal, point: Sequence, c) -> bool:
    """Whether ``point`` lies in ``c`` times the Newton polyhedron of ``a``."""
    c = frac(c)
    if c <= 0:
        raise MathError("dilation factor must be positive", c=fmt(c))
    point = vec(point)
    if any(x < 0 for x in point):
        raise MathError("point must be componentwise non-negative")
    gens = a.generators
    k = len(gens)
    cons = [Constraint(tuple(Fraction(1) for _ in gens), "==", c)]
    for i in range(a.dim):
        cons.append(Constraint(tuple(g[i] for g in gens), "<=", point[i]))
    res = minimize((0,) * k, cons, nonneg=(True,) * k)
    return res.optimal


@dataclass(frozen=True)
class NewtonLct:
    value: Fraction
    diagonal_exit: Fraction
    nondegenerate_assumed: bool = True
    warnings: tuple = ()


def newton_polygon_lct(vertices: Sequence[Sequence[int]]) -> NewtonLct:
    """lct of a plane curve germ read off its Newton polygon, capped at 1.

    Valid only for curves nondegenerate with respect to the polygon; the
    result says so explicitly.
    """
    pts = [tuple(int(x) for x in v) for v in vertices]
    if not pts or any(len(p) != 2 for p in pts):
        raise MathError("Newton polygon needs planar exponent vertices")
    warnings = []
    if not any(p[0] == 0 for p in pts) or not any(p[1] == 0 for p in pts):
        warnings.append("polygon does not meet both axes; the curve has a non-isolated singular component")
    k = len(pts)
    # variables: lambda_1..k >= 0, t free; min t s.t. (t,t) >= sum lambda p, sum lambda = 1
    cons = [Constraint((1,) * k + (0,), "==", 1)]
    for i in range(2):
        cons.append(Constraint(tuple(p[i] for p in pts) + (-1,), "<=", 0))
    res = minimize((0,) * k + (1,), cons, nonneg=(True,) * k + (False,))
    t0 = res.value
    value = Fraction(1) if t0 == 0 else min(Fraction(1), 1 / t0)
    return NewtonLct(value, t0, True, tuple(warnings))


# --------------------------------------------------------------------------
# Weighted-homogeneous polynomials in x1, x2, x3


Poly = dict  # exponent tuple -> Fraction


def _clean(p: Mapping) -> dict:
    return {e: c for e, c in p.items() if c != 0}


def poly_mul(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, Fraction(0)) + c1 * c2
    return _clean(out)


def poly_add(p: Mapping, q: Mapping) -> dict:
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, Fraction(0)) + c
    return _clean(out)


def poly_pow(p: Mapping, n: int, nvars: int) -> dict:
    out = {(0,) * nvars: Fraction(1)}
    for _ in range(n):
        out = poly_mul(out, p)
    return out


_VAR = re.compile(r"^x([123])(?:\^(\d+))?$")


def _monomial_key(key: str) -> tuple:
    key = key.replace(" ", "")
    if "x" not in key:
        try:
            return tuple(int(x) for x in key.replace("(", "").replace(")", "").split(","))
        except ValueError:
            raise MathError("unreadable exponent key", key=key) from None
    e = [0, 0, 0]
    for part in key.split("*"):
        m = _VAR.match(part)
        if m is None:
            raise MathError("unreadable monomial", key=key)
        e[int(m.group(1)) - 1] += int(m.group(2) or 1)
    return tuple(e)


def parse_terms(terms) -> dict:
    """Accept ``{"2,0,1": "3/2"}``, ``{"x1^2*x3": "3/2"}``, ``[[[2,0,1], "3/2"], ...]`` or tuple keys."""
    out: dict = {}
    items = terms.items() if isinstance(terms, Mapping) else terms
    for key, coeff in items:
        if isinstance(key, str):
            key = _monomial_key(key)
        e = tuple(int(x) for x in key)
        out[e] = out.get(e, Fraction(0)) + frac(coeff if not isinstance(coeff, float) else str(coeff))
    return _clean(out)


@dataclass(frozen=True)
class WeightedHomPoly:
    weights: tuple
    terms: tuple  # sorted tuple of (exponent tuple, Fraction)
    degree: int = field(default=-1)

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if len(w) != 3 or w[2] != 1 or min(w) < 1:
            raise MathError("weights must be (w1, w2, 1) with positive entries", weights=list(w))
        terms = _clean(dict(self.terms) if not isinstance(self.terms, dict) else self.terms)
        if not terms:
            raise MathError("the zero polynomial is not allowed")
        degs = {sum(a * b for a, b in zip(e, w)) for e in terms}
        if len(degs) != 1:
            raise InhomogeneousError("terms have different weighted degrees", degrees=sorted(degs))
        (d,) = degs
        if self.degree not in (-1, d):
            raise InhomogeneousError("declared degree disagrees with terms", declared=self.degree, actual=d)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "terms", tuple(sorted(terms.items())))
        object.__setattr__(self, "degree", d)

    @classmethod
    def make(cls, weights, terms) -> WeightedHomPoly:
        return cls(tuple(weights), tuple(parse_terms(terms).items()))

    @property
    def as_dict(self) -> dict:
        return dict(self.terms)

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self.as_dict.get(tuple(e), Fraction(0))

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "degree": self.degree,
            "terms": [[list(e), fmt(c)] for e, c in self.terms],
        }

    @classmethod
    def from_json(cls, data) -> WeightedHomPoly:
        if isinstance(data, str):
            data = json.loads(data)
        return cls.make(data["weights"], data["terms"])

    def __str__(self) -> str:
        out = []
        for e, c in self.terms:
            mono = "*".join(f"x{i+1}^{k}" if k > 1 else f"x{i+1}" for i, k in enumerate(e) if k)
            coef = fmt(c)
            if mono and coef in ("1", "-1"):
                out.append(mono if coef == "1" else f"-{mono}")
            else:
                out.append(f"{coef}*{mono}" if mono else coef)
        return " + ".join(out)


def substitute(f: WeightedHomPoly, mapping: Mapping[int, Mapping]) -> WeightedHomPoly:
    """Simultaneously replace variables (0-based index) by polynomials.

    Each replacement must be weighted homogeneous of the replaced variable's
    weight, and the linear part of the whole map must be nonsingular so the
    change of coordinates is invertible.
    """
    w = f.weights
    reps = {}
    for var, rep in mapping.items():
        rep = parse_terms(rep) if not all(isinstance(k, tuple) for k in rep) else _clean(dict(rep))
        for e in rep:
            if sum(a * b for a, b in zip(e, w)) != w[var]:
                raise InhomogeneousError(
                    "replacement is not weighted homogeneous of the variable's weight",
                    variable=f"x{var+1}",
                    weight=w[var],
                )
        reps[var] = rep
    # the linear part only mixes variables of equal weight; invertible iff nonsingular
    units = [tuple(int(i == j) for i in range(3)) for j in range(3)]
    jac = [[reps[i].get(units[j], Fraction(0)) if i in reps else Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    if determinant(jac) == 0:
        raise InhomogeneousError("substitution is not an invertible change of coordinates")
    out: dict = {}
    for e, c in f.terms:
        term = {(0, 0, 0): c}
        for i, k in enumerate(e):
            base = reps.get(i, {tuple(int(j == i) for j in range(3)): Fraction(1)})
            term = poly_mul(term, poly_pow(base, k, 3))
        out = poly_add(out, term)
    return WeightedHomPoly(w, tuple(out.items()))


def all_monomials_of_degree(weights: Sequence[int], d: int) -> list:
    w1, w2, w3 = weights
    out = []
    for a, b in iproduct(range(d // w1 + 1), range(d // w2 + 1)):
        rest = d - a * w1 - b * w2
        if rest >= 0 and rest % w3 == 0:
            out.append((a, b, rest // w3))
    return sorted(out)
