"""Weighted blow-ups as star subdivisions, weak transforms and regular towers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import (
    SimplicialCone,
    cone_membership,
    element_order,
    fmt,
    gcd_all,
    lcm_all,
    quotient_group,
    vec,
)
from .errors import DimensionError, LatticeError, MathError, UnsupportedShapeError, ZeroVectorError
from .ideals import MonomialIdeal, MonomialRIdeal, ord_along
from .valuations import ToricGerm, ToricValuation, a_log_discrepancy, log_discrepancy


def _unit(d: int, i: int) -> tuple:
    return tuple(Fraction(int(j == i)) for j in range(d))


def _jsonvec(v) -> list:
    return [int(x) if x.denominator == 1 else fmt(x) for x in v]


def lattice_generators(germ: ToricGerm) -> list[tuple]:
    gens = [_unit(germ.dim, i) for i in range(germ.dim)]
    if germ.index > 1:
        gens.append(tuple(Fraction(a, germ.index) for a in germ.weights))
    return gens


def chart_germ(germ: ToricGerm, basis: Sequence[Sequence], exceptional: int | None = None) -> ToricGerm:
    """Cyclic quotient type of the simplicial cone ``basis`` in the lattice of ``germ``.

    Among the generators of ``N / Z basis`` the one giving weight ``-1`` on the
    ``exceptional`` coordinate is preferred, so that smooth weighted blow-ups
    produce the familiar ``1/w_i(w_1, .., -1, .., w_d)`` charts.
    """
    basis = [vec(b) for b in basis]
    elems = quotient_group(basis, lattice_generators(germ))
    r = len(elems)
    if r == 1:
        return ToricGerm.smooth(germ.dim)
    gens = [c for c in elems if element_order(c) == r]
    if not gens:
        raise LatticeError("local class group of the chart is not cyclic", order=r)
    cands = [tuple(int(x * r) for x in c) for c in gens]
    if exceptional is not None:
        pref = [c for c in cands if c[exceptional] == r - 1]
        if pref:
            cands = pref
    return ToricGerm(germ.dim, r, min(cands))


def chart_coordinates(basis: Sequence[Sequence], u: Sequence) -> tuple:
    return SimplicialCone(tuple(vec(b) for b in basis)).coefficients(u)


# --------------------------------------------------------------------------
# Fans


@dataclass
class Fan:
    """A simplicial fan refining the orthant, stored by its maximal cones."""

    germ: ToricGerm
    cones: list = field(default_factory=list)

    def __post_init__(self):
        if not self.cones:
            self.cones = [tuple(_unit(self.germ.dim, i) for i in range(self.germ.dim))]
        self.cones = [tuple(vec(g) for g in c) for c in self.cones]

    def copy(self) -> Fan:
        return Fan(self.germ, list(self.cones))

    @property
    def rays(self) -> list[tuple]:
        seen = []
        for c in self.cones:
            for g in c:
                if g not in seen:
                    seen.append(g)
        return seen

    def minimal_cone_containing(self, u: Sequence):
        """Smallest cone of the fan containing ``u``: (maximal cone, face generators, coefficients)."""
        u = vec(u)
        for c in self.cones:
            mem = cone_membership(SimplicialCone(c), u)
            if mem.inside:
                face = tuple(c[i] for i in mem.face)
                return c, face, tuple(mem.coefficients[i] for i in mem.face)
        raise MathError("vector lies outside the support of the fan", u=_jsonvec(u))

    def star_subdivide(self, v: Sequence) -> None:
        v = vec(v)
        if not any(v):
            raise ZeroVectorError("cannot subdivide at the zero vector")
        out = []
        hit = False
        for c in self.cones:
            mem = cone_membership(SimplicialCone(c), v)
            if not mem.inside:
                out.append(c)
                continue
            hit = True
            if len(mem.face) == 1 and c[mem.face[0]] == v:
                out.append(c)  # v is already a ray
                continue
            for i in mem.face:
                out.append(tuple(v if j == i else g for j, g in enumerate(c)))
        if not hit:
            raise MathError("subdivision vector lies outside the fan", v=_jsonvec(v))
        self.cones = out

    def cones_containing_ray(self, v: Sequence) -> list[tuple]:
        v = vec(v)
        return [c for c in self.cones if v in c]


# --------------------------------------------------------------------------
# Weighted blow-ups


@dataclass(frozen=True)
class Chart:
    basis: tuple  # cone generators in the source coordinates
    germ: ToricGerm
    exceptional: int  # position of the exceptional ray in ``basis``

    def to_json(self) -> dict:
        return {"basis": [_jsonvec(b) for b in self.basis], "germ": str(self.germ), "exceptional": self.exceptional + 1}


@dataclass(frozen=True)
class WeightedBlowup:
    source: ToricGerm
    weight: ToricValuation
    charts: tuple

    @property
    def centre(self) -> tuple:
        return self.weight.support

    def exceptional(self) -> dict:
        w = self.weight.w
        s = self.centre
        return {
            "weights": _jsonvec(w),
            "space": "P(" + ",".join(fmt(w[i]) for i in s) + ")",
            "dimension": len(s) - 1,
            "log_discrepancy": fmt(log_discrepancy(self.source, w)),
        }

    def to_json(self) -> dict:
        return {
            "source": str(self.source),
            "weight": self.weight.to_json(),
            "centre": [i + 1 for i in self.centre],
            "charts": [c.to_json() for c in self.charts],
            "exceptional": self.exceptional(),
        }


def weighted_blowup(germ: ToricGerm, w) -> WeightedBlowup:
    w = vec(getattr(w, "w", w))
    val = ToricValuation(germ, w)  # validates lattice membership and primitivity
    s = val.support
    if len(s) < 2:
        raise MathError("weight must be positive on at least two coordinates", w=_jsonvec(w))
    if germ.dim == 2 and len(s) != 2:
        raise MathError("surface blow-ups need a point centre")
    d = germ.dim
    charts = []
    for i in s:
        basis = tuple(w if j == i else _unit(d, j) for j in range(d))
        charts.append(Chart(basis, chart_germ(germ, basis, i), i))
    return WeightedBlowup(germ, val, tuple(charts))


# --------------------------------------------------------------------------
# Pull-backs


@dataclass(frozen=True)
class PullbackTriple:
    source: ToricGerm
    basis: tuple
    germ: ToricGerm
    delta: tuple  # coefficient on each chart coordinate hyperplane
    ideal: MonomialRIdeal
    exceptional: tuple  # flags per basis vector

    def to_json(self) -> dict:
        return {
            "germ": str(self.germ),
            "basis": [_jsonvec(b) for b in self.basis],
            "delta": [fmt(x) for x in self.delta],
            "exceptional": list(self.exceptional),
            "ideal": self.ideal.to_json(),
        }

    def to_chart(self, u: Sequence) -> tuple:
        return chart_coordinates(self.basis, u)

    def to_source(self, c: Sequence) -> tuple:
        c = vec(c)
        return tuple(sum((ci * b[k] for ci, b in zip(c, self.basis)), Fraction(0)) for k in range(len(c)))


def _is_coordinate_ray(g: Sequence) -> bool:
    return sum(1 for x in g if x != 0) == 1


def pullback(germ: ToricGerm, a: MonomialRIdeal, basis: Sequence[Sequence], delta=None,
             exceptional_pos: int | None = None) -> PullbackTriple:
    """Crepant pull-back of (germ, delta, a) to the affine chart of a cone.

    Rays that are not coordinate axes are exceptional: their multiplicity in
    each factor is removed (weak transform) and they receive the boundary
    coefficient ``1 - a_g(germ, delta, a)``.
    """
    d = germ.dim
    if a.dim != d:
        raise DimensionError("ideal and germ dimensions differ")
    basis = tuple(vec(b) for b in basis)
    dl = vec(delta) if delta is not None else (Fraction(0),) * d
    flags = tuple(not _is_coordinate_ray(g) for g in basis)
    cg = chart_germ(germ, basis, exceptional_pos)
    new_delta = []
    for g, ex in zip(basis, flags):
        if ex:
            new_delta.append(1 - a_log_discrepancy(germ, g, a, dl))
        else:
            k = next(i for i, x in enumerate(g) if x != 0)
            new_delta.append(dl[k])
    factors = []
    for ideal, e in a.factors:
        shifts = [ideal.order(g) if ex else Fraction(0) for g, ex in zip(basis, flags)]
        gens = [tuple(sum((Fraction(mi) * gi for mi, gi in zip(m, g)), Fraction(0)) - s
                      for g, s in zip(basis, shifts)) for m in ideal.generators]
        L = lcm_all(x.denominator for gen in gens for x in gen)
        ints = tuple(tuple(int(x * L) for x in gen) for gen in gens)
        factors.append((MonomialIdeal(ints, d), e / L))
    return PullbackTriple(germ, basis, cg, tuple(new_delta), MonomialRIdeal(tuple(factors)), flags)


def weak_transform(bl: WeightedBlowup, a: MonomialRIdeal, delta=None) -> list[PullbackTriple]:
    return [pullback(bl.source, a, c.basis, delta, c.exceptional) for c in bl.charts]


def crepancy_violations(triple: PullbackTriple, a: MonomialRIdeal, delta=None, bound: int = 4) -> list:
    """Chart lattice points where the pulled-back log discrepancy differs from the original."""
    g = triple.germ
    bad = []
    r = g.index
    d = g.dim
    rng = range(1, r * bound + 1)
    for u in np.ndindex(*(len(rng),) * d):
        c = tuple(Fraction(rng[k], r) for k in u)
        if not g.contains(c):
            continue
        lhs = a_log_discrepancy(g, c, triple.ideal, triple.delta)
        rhs = a_log_discrepancy(triple.source, triple.to_source(c), a, delta)
        if lhs != rhs:
            bad.append((_jsonvec(c), fmt(lhs), fmt(rhs)))
    return bad


# --------------------------------------------------------------------------
# Regular towers


@dataclass(frozen=True)
class TowerStep:
    centre: tuple  # generators spanning the blown-up cone
    valuation: tuple
    a_value: Fraction | None = None
    centre_order: Fraction | None = None

    def to_json(self) -> dict:
        out = {"centre": [_jsonvec(g) for g in self.centre], "valuation": _jsonvec(self.valuation)}
        if self.a_value is not None:
            out["a"] = fmt(self.a_value)
            out["centre_order"] = fmt(self.centre_order)
        return out


@dataclass(frozen=True)
class TowerRecord:
    target: tuple
    steps: tuple
    order_at_centre: Fraction | None = None
    monotone_gate: str | None = None  # "le1", "lt1" or None when the hypothesis fails

    @property
    def vectors(self) -> list[tuple]:
        return [s.valuation for s in self.steps]

    @property
    def length(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        out = {"target": _jsonvec(self.target), "tower": [_jsonvec(v) for v in self.vectors],
               "steps": [s.to_json() for s in self.steps]}
        if self.order_at_centre is not None:
            out["order_at_centre"] = fmt(self.order_at_centre)
            out["monotone_gate"] = self.monotone_gate
            out["a_profile"] = [fmt(s.a_value) for s in self.steps]
            out["centre_orders"] = [fmt(s.centre_order) for s in self.steps]
        return out

    def to_dot(self) -> str:
        lines = ["digraph tower {", "  rankdir=LR;"]
        names = {}

        def node(v):
            key = tuple(v)
            if key not in names:
                names[key] = f"n{len(names)}"
                lines.append(f'  {names[key]} [label="({",".join(fmt(x) for x in v)})"];')
            return names[key]

        for i, s in enumerate(self.steps):
            tgt = node(s.valuation)
            for g in s.centre:
                lines.append(f'  {node(g)} -> {tgt} [label="{i + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def regular_tower(germ: ToricGerm, w) -> TowerRecord:
    """Iterated smooth blow-ups ending at the divisor of ``w``.

    At each stage the centre is the orbit of the smallest fan cone containing
    ``w``; its generators sum to the next exceptional ray.
    """
    if not germ.is_smooth:
        raise MathError("regular towers are defined on smooth germs")
    w = vec(getattr(w, "w", w))
    ToricValuation(germ, w)
    if sum(1 for x in w if x > 0) < 2:
        raise MathError("a coordinate vector needs no tower", w=_jsonvec(w))
    fan = Fan(germ)
    steps = []
    while True:
        _, face, _ = fan.minimal_cone_containing(w)
        if face == (w,):
            break
        v = tuple(sum(col, Fraction(0)) for col in zip(*face))
        steps.append(TowerStep(face, v))
        fan.star_subdivide(v)
    return TowerRecord(w, tuple(steps))


def tower_discrepancy_profile(germ: ToricGerm, w, a: MonomialRIdeal) -> TowerRecord:
    base = regular_tower(germ, w)
    exc_orders = {}
    steps = []
    for s in base.steps:
        v = s.valuation
        order_v = ord_along(v, a)
        on_centre = order_v - sum((exc_orders[g] for g in s.centre if g in exc_orders), Fraction(0))
        steps.append(TowerStep(s.centre, v, log_discrepancy(germ, v) - order_v, on_centre))
        exc_orders[v] = order_v
    first = ord_along(base.steps[0].valuation, a)
    gate = "lt1" if first < 1 else ("le1" if first <= 1 else None)
    return TowerRecord(base.target, tuple(steps), first, gate)


def continued_fraction(p: int, q: int) -> list[int]:
    out = []
    while q:
        out.append(p // q)
        p, q = q, p % q
    return out


# --------------------------------------------------------------------------
# Adjunction and intersection numbers


def _line_index(u: Sequence, v: Sequence) -> int:
    """Index of the 2-dimensional cone spanned by integer vectors ``u``, ``v`` in Z^3."""
    minors = [u[i] * v[j] - u[j] * v[i] for i in range(3) for j in range(i + 1, 3)]
    return gcd_all(abs(int(m)) for m in minors)


def different_on_exceptional(bl: WeightedBlowup) -> dict:
    """Different of (Y, F) restricted to the exceptional divisor F."""
    d = bl.source.dim
    w = bl.weight.w
    if d == 2:
        pts = []
        for c in bl.charts:
            r = c.germ.index
            pts.append({"chart": c.exceptional + 1, "index": r, "coefficient": fmt(1 - Fraction(1, r))})
        return {"shape": "surface", "points": pts}
    if not bl.source.is_smooth or sorted(x for x in w)[0] != 1 or any(x == 0 for x in w):
        raise UnsupportedShapeError(
            "different is implemented for surfaces and for (w1,w2,1) blow-ups of smooth threefolds",
            w=_jsonvec(w),
        )
    lines = []
    for k in range(3):
        g = _line_index(w, _unit(3, k))
        lines.append({"line": f"F*H{k + 1}", "index": g, "coefficient": fmt(1 - Fraction(1, g))})
    return {"shape": "threefold", "lines": lines}


def intersection_numbers(w1: int, w2: int, dim: int = 2, degree: int | None = None) -> dict:
    """Closed-form intersection numbers on a weighted blow-up with weights (w1,w2) or (w1,w2,1)."""
    w1, w2 = int(w1), int(w2)
    if w1 < 1 or w2 < 1:
        raise MathError("weights must be positive")
    p = Fraction(1, w1 * w2)
    if dim == 2:
        if math.gcd(w1, w2) != 1:
            raise MathError("surface weights must be coprime", w1=w1, w2=w2)
        return {"-F^2": p, "F.H1": Fraction(1, w2), "F.H2": Fraction(1, w1)}
    if dim != 3:
        raise DimensionError("dimension must be 2 or 3")
    out = {"F^3": p, "F^2.H1": -w1 * p, "F^2.H2": -w2 * p, "F^2.H3": -p}
    if degree is not None:
        out["C.(-F)"] = degree * p
    return out
