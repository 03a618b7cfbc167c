"""Toric germs, toric valuations and the minimal-log-discrepancy engine.

Valuations are written in orbifold coordinates: on ``1/r(a_1..a_d)`` the
lattice is ``Z^d + Z*a/r`` and the coordinate hyperplanes have primitive
normal rays ``e_i``.  The log discrepancy of ``w`` is then the coordinate sum.

The mld over a torus-invariant centre is the minimum of a convex, piecewise
linear, positively homogeneous function over lattice points in an open face
of the orthant.  The engine bounds it from below with exact LPs and
enumerates a box of lattice points, reporting how the answer was certified.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .algebra import (Constraint, determinant, dot, fmt, frac, gcd_all, in_lattice, lcm_all, maximize, minimize,
                      primitive, solve_square, vec)
from .errors import DimensionError, LatticeError, MathError, NoSolutionError, NotLogCanonicalError
from .ideals import MonomialRIdeal, ord_along

DEFAULT_BOX_LIMIT = 64
INITIAL_BOX = 4


def box_limit() -> int:
    raw = os.environ.get("MLD_BOX_LIMIT")
    if raw is None or raw == "":
        return DEFAULT_BOX_LIMIT
    try:
        val = int(raw)
    except ValueError as exc:
        raise MathError("MLD_BOX_LIMIT must be a positive integer", value=raw) from exc
    if val < 1:
        raise MathError("MLD_BOX_LIMIT must be a positive integer", value=raw)
    return val


@dataclass(frozen=True)
class ToricGerm:
    dim: int
    index: int = 1
    weights: tuple = ()

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise DimensionError("only dimensions 2 and 3 are supported", dim=self.dim)
        r = int(self.index)
        if r < 1:
            raise LatticeError("index must be positive", index=r)
        ws = tuple(int(a) % r for a in (self.weights or (0,) * self.dim))
        if len(ws) != self.dim:
            raise DimensionError("weight count differs from dimension", dim=self.dim, weights=list(ws))
        for i in range(self.dim):
            others = [ws[j] for j in range(self.dim) if j != i]
            if math.gcd(r, gcd_all(others)) != 1:
                raise LatticeError(
                    "quotient is not well formed (contains a quasi-reflection)",
                    index=r,
                    weights=list(ws),
                )
        object.__setattr__(self, "index", r)
        object.__setattr__(self, "weights", ws)

    @classmethod
    def smooth(cls, d: int) -> ToricGerm:
        return cls(d, 1, (0,) * d)

    @classmethod
    def parse(cls, text: str) -> ToricGerm:
        text = text.strip().replace(" ", "")
        m = re.fullmatch(r"smooth([23])", text)
        if m:
            return cls.smooth(int(m.group(1)))
        m = re.fullmatch(r"1/(\d+)\(([-\d,]+)\)", text)
        if m:
            ws = tuple(int(x) for x in m.group(2).split(","))
            return cls(len(ws), int(m.group(1)), ws)
        raise MathError("germ must be 'smooth2', 'smooth3' or '1/r(a1,...,ad)'", germ=text)

    @property
    def is_smooth(self) -> bool:
        return self.index == 1

    def contains(self, w: Sequence) -> bool:
        return in_lattice(w, self.index, self.weights)

    def primitive(self, w: Sequence) -> tuple:
        return primitive(w, self.index, self.weights)

    def box_points(self) -> list[tuple]:
        """Nonzero points of the fundamental box ``frac(k*a/r)``."""
        r = self.index
        return [tuple(Fraction(k * a % r, r) for a in self.weights) for k in range(1, r)]

    def is_terminal_germ(self) -> bool:
        return all(sum(p) > 1 for p in self.box_points())

    def is_canonical_germ(self) -> bool:
        return all(sum(p) >= 1 for p in self.box_points())

    def __str__(self) -> str:
        if self.is_smooth:
            return f"smooth{self.dim}"
        return f"1/{self.index}({','.join(map(str, self.weights))})"


@dataclass(frozen=True)
class ToricValuation:
    germ: ToricGerm
    w: tuple

    def __post_init__(self):
        w = vec(self.w)
        if len(w) != self.germ.dim:
            raise DimensionError("valuation has the wrong length", expected=self.germ.dim, got=len(w))
        if any(x < 0 for x in w) or not any(w):
            raise LatticeError("valuation must be non-negative and nonzero", w=[fmt(x) for x in w])
        if not self.germ.contains(w):
            raise LatticeError("vector is not in the germ lattice", w=[fmt(x) for x in w], germ=str(self.germ))
        if self.germ.primitive(w) != w:
            raise LatticeError("valuation vector is not primitive", w=[fmt(x) for x in w])
        object.__setattr__(self, "w", w)

    @property
    def support(self) -> tuple:
        return tuple(i for i, x in enumerate(self.w) if x > 0)

    def to_json(self) -> list:
        return [int(x) if x.denominator == 1 else fmt(x) for x in self.w]


def _raw(w) -> tuple:
    return vec(getattr(w, "w", w))


def _delta(germ: ToricGerm, delta) -> tuple:
    if delta is None:
        return (Fraction(0),) * germ.dim
    d = vec(delta)
    if len(d) != germ.dim:
        raise DimensionError("boundary needs one coefficient per coordinate hyperplane")
    return d


def log_discrepancy(germ: ToricGerm, w) -> Fraction:
    w = _raw(w)
    if len(w) != germ.dim:
        raise DimensionError("valuation has the wrong length")
    if any(x < 0 for x in w):
        raise LatticeError("valuation lies outside the cone", w=[fmt(x) for x in w])
    return sum(w, Fraction(0))


def a_log_discrepancy(germ: ToricGerm, w, a: MonomialRIdeal | None = None, delta=None) -> Fraction:
    w = _raw(w)
    dl = _delta(germ, delta)
    val = log_discrepancy(germ, w) - sum((c * x for c, x in zip(dl, w)), Fraction(0))
    if a is not None:
        if a.dim != germ.dim:
            raise DimensionError("ideal and germ dimensions differ")
        val -= ord_along(w, a)
    return val


# --------------------------------------------------------------------------
# LP building blocks


def _discrepancy_lp(d: int, dl: tuple, a: MonomialRIdeal):
    """Objective and constraints for a(w) with one auxiliary t_j per factor.

    Variables are ``w_1..w_d`` followed by ``t_j``; minimising drives each
    ``t_j`` up to ``min_m <m, w>``.
    """
    facs = a.active_factors()
    k = len(facs)
    obj = tuple(1 - c for c in dl) + tuple(-e for _, e in facs)
    cons = []
    for j, (ideal, _) in enumerate(facs):
        for m in ideal.generators:
            row = tuple(-Fraction(x) for x in m) + tuple(Fraction(int(i == j)) for i in range(k))
            cons.append(Constraint(row, "<=", 0))
    return obj, cons, k


def _face_constraints(d: int, k: int, support: Sequence[int], lower: Fraction) -> list:
    cons = []
    for i in range(d):
        row = tuple(Fraction(int(j == i)) for j in range(d)) + (Fraction(0),) * k
        if i in support:
            if lower > 0:
                cons.append(Constraint(row, ">=", lower))
        else:
            cons.append(Constraint(row, "==", 0))
    return cons


def simplex_minimum(germ: ToricGerm, a: MonomialRIdeal, delta=None, support=None):
    """Minimum of a(w) over ``{w >= 0, sum w = 1}`` restricted to a closed face."""
    d = germ.dim
    support = tuple(range(d)) if support is None else tuple(support)
    dl = _delta(germ, delta)
    obj, cons, k = _discrepancy_lp(d, dl, a)
    cons = cons + _face_constraints(d, k, support, Fraction(0))
    cons.append(Constraint((Fraction(1),) * d + (Fraction(0),) * k, "==", 1))
    res = minimize(obj, cons, nonneg=(True,) * d + (False,) * k)
    assert res.optimal
    return res.value, res.point[:d]


def lp_lower_bound(germ: ToricGerm, a: MonomialRIdeal, delta, support) -> Fraction:
    d = germ.dim
    dl = _delta(germ, delta)
    obj, cons, k = _discrepancy_lp(d, dl, a)
    cons = cons + _face_constraints(d, k, support, Fraction(1, germ.index))
    res = minimize(obj, cons, nonneg=(True,) * d + (False,) * k)
    if not res.optimal:
        raise MathError("lower-bound LP failed", status=res.status)
    return res.value


# --------------------------------------------------------------------------
# Lattice enumeration


class _Evaluator:
    """Integer-scaled evaluation of a(w) on arrays of lattice points ``u = r*w``."""

    def __init__(self, germ: ToricGerm, a: MonomialRIdeal, dl: tuple):
        self.germ = germ
        facs = a.active_factors()
        coeffs = [1 - c for c in dl] + [e for _, e in facs]
        self.scale = lcm_all(x.denominator for x in coeffs) if coeffs else 1
        self.lin = np.array([int((1 - c) * self.scale) for c in dl], dtype=np.int64)
        self.facs = [
            (np.array(ideal.generators, dtype=np.int64).T, int(e * self.scale)) for ideal, e in facs
        ]
        self.denom = germ.index * self.scale

    def values(self, u: np.ndarray) -> np.ndarray:
        out = u @ self.lin
        for gens, e in self.facs:
            out = out - e * (u @ gens).min(axis=1)
        return out


def _lattice_points(germ: ToricGerm, support: Sequence[int], bound: int):
    """Lattice points with w_i in (0, bound] on ``support`` and 0 elsewhere, as ``u = r*w``."""
    r, d = germ.index, germ.dim
    top = r * bound
    for k in range(r):
        base = [k * a % r for a in germ.weights]
        if any(base[i] != 0 for i in range(d) if i not in support):
            continue
        axes = []
        for i in range(d):
            if i in support:
                start = base[i] if base[i] > 0 else r
                axes.append(np.arange(start, top + 1, r, dtype=np.int64))
            else:
                axes.append(np.zeros(1, dtype=np.int64))
        if any(len(ax) == 0 for ax in axes):
            continue
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
        yield grid


def enumerate_minimum(germ: ToricGerm, a: MonomialRIdeal, delta, support, bound: int):
    """Exact minimum of a(w) over the box, with the lexicographically smallest minimiser."""
    ev = _Evaluator(germ, a, _delta(germ, delta))
    best_val = None
    best_pts = []
    for grid in _lattice_points(germ, support, bound):
        vals = ev.values(grid)
        m = int(vals.min())
        if best_val is None or m < best_val:
            best_val, best_pts = m, [grid[vals == m]]
        elif m == best_val:
            best_pts.append(grid[vals == m])
    if best_val is None:
        return None, None
    pts = np.concatenate(best_pts)
    order = np.lexsort(pts.T[::-1])
    u = pts[order[0]]
    w = tuple(Fraction(int(x), germ.index) for x in u)
    return Fraction(best_val, ev.denom), w


# --------------------------------------------------------------------------
# mld


@dataclass(frozen=True)
class MldReport:
    value: Fraction | None  # None encodes minus infinity
    witness: ToricValuation | None
    lp_lower_bound: Fraction | None
    search_box_bound: int
    certified: bool
    certificate: str
    centre: tuple = ()
    witness_value: Fraction | None = None

    @property
    def neg_inf(self) -> bool:
        return self.value is None

    def to_json(self) -> dict:
        return {
            "value": "-inf" if self.value is None else fmt(self.value),
            "witness": None if self.witness is None else self.witness.to_json(),
            "witness_value": None if self.witness_value is None else fmt(self.witness_value),
            "lp_lower_bound": None if self.lp_lower_bound is None else fmt(self.lp_lower_bound),
            "search_box_bound": self.search_box_bound,
            "certified": self.certified,
            "certificate": self.certificate,
            "centre": [i + 1 for i in self.centre],
        }


def _check_centre(germ: ToricGerm, centre) -> tuple:
    if centre is None:
        return tuple(range(germ.dim))
    s = tuple(sorted(set(int(i) for i in centre)))
    if not s or any(i < 0 or i >= germ.dim for i in s):
        raise MathError("centre must be a nonempty set of coordinate indices", centre=list(centre))
    return s


def negative_witness(germ: ToricGerm, a: MonomialRIdeal, delta, support, point) -> tuple:
    """Lattice point with support exactly ``support`` and negative a-value.

    ``point`` is an LP point on the closed face with a(point) < 0; adding a
    small multiple of the all-ones vector keeps the value negative by
    sublinearity.
    """
    s = lcm_all(x.denominator for x in point) * germ.index
    base = tuple(x * s for x in point)
    neg = a_log_discrepancy(germ, base, a, delta)
    ones = tuple(Fraction(int(i in support)) for i in range(germ.dim))
    pos = a_log_discrepancy(germ, ones, a, delta)
    n = 1
    while n * neg + pos >= 0:
        n *= 2
    w = tuple(n * b + o for b, o in zip(base, ones))
    return germ.primitive(w)


def _null_vector(rows: Sequence[Sequence]) -> tuple | None:
    """Primitive integral generator of the kernel of k-1 rows in k variables, if it is a line."""
    k = len(rows) + 1
    v = [(-1) ** i * determinant([[r[j] for j in range(k) if j != i] for r in rows]) for i in range(k)]
    if all(x == 0 for x in v):
        return None
    den = lcm_all(x.denominator for x in v)
    ints = [int(x * den) for x in v]
    g = gcd_all(ints)
    return tuple(x // g for x in ints)


def polyhedral_box_bound(germ: ToricGerm, a: MonomialRIdeal, delta, support) -> int | None:
    """Box size that provably contains an integral minimiser of a(w) on the open face.

    a(w) is linear on each region where every factor attains its minimum at a
    fixed generator.  Such a region meets {w_i >= 1/r} in a polyhedron
    P = conv(vertices) + cone(rays).  If a lattice point of P uses a ray h
    with coefficient at least one, subtracting h stays in P and does not
    raise the (nonnegative on the cone) linear value, so some minimiser has
    coordinates at most max(vertex) + sum(|h|).  Returns None when a(w) takes
    negative values on the face, where no such bound exists.
    """
    sup = list(support)
    k = len(sup)
    r = germ.index
    facs = a.active_factors()
    bound = 0
    for choice in product(*(range(len(ideal.generators)) for ideal, _ in facs)):
        # rows n with n.w >= 0 on the cone, plus the coordinate rows
        cone_rows = []
        for (ideal, _), c in zip(facs, choice):
            star = ideal.generators[c]
            for m in ideal.generators:
                row = tuple(Fraction(m[i] - star[i]) for i in sup)
                if any(row) and row not in cone_rows:
                    cone_rows.append(row)
        units = [tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)]
        rows = units + cone_rows
        rhs = [Fraction(1, r)] * k + [Fraction(0)] * len(cone_rows)
        verts = []
        for idx in combinations(range(len(rows)), k):
            p = solve_square([rows[i] for i in idx], [rhs[i] for i in idx])
            if p is not None and all(dot(n, p) >= b for n, b in zip(rows, rhs)):
                verts.append(p)
        if not verts:
            continue
        rays = set()
        for idx in combinations(range(len(rows)), k - 1):
            h = _null_vector([rows[i] for i in idx])
            if h is None:
                continue
            for cand in (h, tuple(-x for x in h)):
                if all(dot(n, cand) >= 0 for n in rows):
                    rays.add(cand)
        # a is linear here; it must be nonnegative along every ray
        full = [Fraction(0)] * germ.dim
        for h in rays:
            for i, x in zip(sup, h):
                full[i] = Fraction(x)
            if a_log_discrepancy(germ, tuple(full), a, delta) < 0:
                return None
        top = max(max(p) for p in verts) + sum(max(h) for h in rays)
        bound = max(bound, math.ceil(top))
    return max(bound, 1)


def _branch_and_bound(germ: ToricGerm, a: MonomialRIdeal, delta, support, incumbent: Fraction,
                      node_cap: int = 500):
    """Exact integer minimisation of a(w) below ``incumbent`` by LP branch and bound.

    Lattice points are written per coset as ``w = (base + r*z)/r`` with ``z``
    integral.  Returns ``(nodes_used, best_value, best_point)``; the point is
    ``None`` when nothing beats the incumbent, and ``nodes_used`` is ``None``
    when the node cap was hit.
    """
    d, r = germ.dim, germ.index
    dl = _delta(germ, delta)
    facs = a.active_factors()
    k = len(facs)
    best_val, best_pt = incumbent, None
    nodes = 0
    for kk in range(r):
        base = [kk * x % r for x in germ.weights]
        if any(base[i] != 0 for i in range(d) if i not in support):
            continue
        # a(w) in z-variables: sum c_i (base_i + r z_i)/r - sum e_j t_j, t_j <= <m,(base + r z)/r>
        const = sum(((1 - c) * Fraction(b, r) for c, b in zip(dl, base)), Fraction(0))
        obj = tuple(1 - c for c in dl) + tuple(-e for _, e in facs)
        rows = []
        for j, (ideal, _) in enumerate(facs):
            for m in ideal.generators:
                off = sum((Fraction(mi * b, r) for mi, b in zip(m, base)), Fraction(0))
                rows.append(Constraint(tuple(-Fraction(x) for x in m) + tuple(Fraction(int(i == j)) for i in range(k)), "<=", off))
        lo0 = [(0 if base[i] > 0 else 1) if i in support else 0 for i in range(d)]
        hi0 = [None if i in support else 0 for i in range(d)]
        stack = [(lo0, hi0)]
        while stack:
            nodes += 1
            if nodes > node_cap:
                return None, best_val, best_pt
            lo, hi = stack.pop()
            cons = list(rows)
            for i in range(d):
                unit = tuple(Fraction(int(j == i)) for j in range(d)) + (Fraction(0),) * k
                cons.append(Constraint(unit, ">=", lo[i]))
                if hi[i] is not None:
                    cons.append(Constraint(unit, "<=", hi[i]))
            res = minimize(obj, cons, nonneg=(False,) * (d + k))
            if not res.optimal:
                continue
            val = const + res.value
            if val >= best_val:
                continue
            z = res.point[:d]
            frac_i = next((i for i in range(d) if z[i].denominator != 1), None)
            if frac_i is None:
                best_val = val
                best_pt = tuple(Fraction(b, r) + zi for b, zi in zip(base, z))
                continue
            f = math.floor(z[frac_i])
            up_lo = list(lo)
            up_lo[frac_i] = f + 1
            dn_hi = list(hi)
            dn_hi[frac_i] = f
            stack.append((up_lo, hi))
            if f >= lo[frac_i]:
                stack.append((lo, dn_hi))
    return nodes, best_val, best_pt


def mld(germ: ToricGerm, a: MonomialRIdeal | None = None, centre=None, delta=None, limit: int | None = None) -> MldReport:
    """Minimal log discrepancy of (germ, delta, a) over a torus-invariant centre.

    ``centre`` lists the coordinates that vanish on it (0-based); the default
    is the closed point.  The minimum is first searched in a box; it is then
    certified by an LP bound, by a norm bound, by a polyhedral box bound, by
    exact branch and bound or,
    failing all of these, by stability under doubling of the box.
    """
    d = germ.dim
    a = a if a is not None else MonomialRIdeal.trivial(d)
    if a.dim != d:
        raise DimensionError("ideal and germ dimensions differ", ideal=a.dim, germ=d)
    support = _check_centre(germ, centre)
    limit = box_limit() if limit is None else limit
    mu, point = simplex_minimum(germ, a, delta, support)
    if len(support) == 1:
        w = germ.primitive(tuple(Fraction(int(i in support)) for i in range(d)))
        v = a_log_discrepancy(germ, w, a, delta)
        return MldReport(v, ToricValuation(germ, w), v, 1, True, "divisor", support, v)
    if mu < 0:
        w = negative_witness(germ, a, delta, support, point)
        return MldReport(None, ToricValuation(germ, w), None, 0, True, "negative_lp", support,
                         a_log_discrepancy(germ, w, a, delta))
    lower = lp_lower_bound(germ, a, delta, support)
    bound = min(INITIAL_BOX, limit)

    def report(v, w, cert, ok=True):
        return MldReport(v, ToricValuation(germ, w), lower, bound, ok, cert, support, v)

    v, w = enumerate_minimum(germ, a, delta, support, bound)
    assert v is not None  # the sum of the unit vectors on the support is always in the box
    if mu > 0 and v / mu > bound and math.ceil(v / mu) <= limit:
        bound = math.ceil(v / mu)
        v, w = enumerate_minimum(germ, a, delta, support, bound)
    if v == lower:
        return report(v, w, "lp_bound")
    if v == 0:
        return report(v, w, "zero")
    if mu > 0 and v / mu <= bound:
        return report(v, w, "norm_bound")
    pb = polyhedral_box_bound(germ, a, delta, support)
    if pb is not None and pb <= limit:
        if pb > bound:
            bound = pb
            v, w = enumerate_minimum(germ, a, delta, support, bound)
        return report(v, w, "polyhedral")
    nodes, best, pt = _branch_and_bound(germ, a, delta, support, v)
    if nodes is not None:
        if pt is not None:
            pt = germ.primitive(pt)
            far = math.ceil(max(pt))
            if bound < far <= limit:
                bound = far
                v, w = enumerate_minimum(germ, a, delta, support, bound)
            if v != best:
                w, v = pt, best
        return report(v, w, "branch_and_bound")
    # node cap exceeded: fall back to stability of the box minimum under doubling
    prev = v
    while bound < limit:
        bound = min(2 * bound, limit)
        v, w = enumerate_minimum(germ, a, delta, support, bound)
        if v is not None and v == prev and all(x <= Fraction(bound, 2) for x in w):
            return report(v, w, "stabilized")
        prev = v
    return report(v, w, "box_limit", ok=False)


def mld_value(germ, a=None, centre=None, delta=None):
    return mld(germ, a, centre, delta).value


def ext_ge(x: Fraction | None, y: Fraction | None) -> bool:
    """``x >= y`` on rationals extended by None = minus infinity."""
    if y is None:
        return True
    if x is None:
        return False
    return x >= y


# --------------------------------------------------------------------------
# singularity tests


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: ToricValuation | None = None
    value: Fraction | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.to_json(),
            "value": None if self.value is None else fmt(self.value),
        }


def _lc_like(germ, a, delta, strict: bool) -> Verdict:
    a = a if a is not None else MonomialRIdeal.trivial(germ.dim)
    mu, point = simplex_minimum(germ, a, delta)
    if mu > 0 or (mu == 0 and not strict):
        return Verdict(True)
    if mu < 0:
        w = negative_witness(germ, a, delta, tuple(i for i, x in enumerate(point) if x > 0), point)
    else:
        w = germ.primitive(tuple(x * lcm_all(y.denominator for y in point) * germ.index for x in point))
    return Verdict(False, ToricValuation(germ, w), a_log_discrepancy(germ, w, a, delta))


def is_lc(germ, a=None, delta=None) -> Verdict:
    return _lc_like(germ, a, delta, strict=False)


def is_klt(germ, a=None, delta=None) -> Verdict:
    return _lc_like(germ, a, delta, strict=True)


def exceptional_minimum(germ, a=None, delta=None) -> MldReport:
    """Smallest mld over all centres of codimension at least two."""
    best = None
    for k in range(2, germ.dim + 1):
        for s in combinations(range(germ.dim), k):
            rep = mld(germ, a, s, delta)
            if rep.value is None:
                return rep
            if best is None or rep.value < best.value or (
                rep.value == best.value and rep.witness.w < best.witness.w
            ):
                best = rep
    return best


def is_canonical(germ, a=None, delta=None) -> Verdict:
    rep = exceptional_minimum(germ, a, delta)
    if rep.value is not None and rep.value >= 1:
        return Verdict(True)
    return Verdict(False, rep.witness, rep.witness_value)


def is_terminal(germ, a=None, delta=None) -> Verdict:
    rep = exceptional_minimum(germ, a, delta)
    if rep.value is not None and rep.value > 1:
        return Verdict(True)
    return Verdict(False, rep.witness, rep.witness_value)


# --------------------------------------------------------------------------
# thresholds


def _require_lc(germ, base, delta):
    v = is_lc(germ, base, delta)
    if not v:
        raise NotLogCanonicalError(
            "base pair is not log canonical",
            witness=v.witness.to_json(),
            value=fmt(v.value),
        )


def lc_threshold(germ: ToricGerm, base: MonomialRIdeal | None, b: MonomialRIdeal, delta=None) -> Fraction | None:
    """Largest t with (germ, delta, base * b^t) lc; ``None`` means +infinity."""
    d = germ.dim
    base = base if base is not None else MonomialRIdeal.trivial(d)
    _require_lc(germ, base, delta)
    dl = _delta(germ, delta)
    obj, cons, k = _discrepancy_lp(d, dl, base)
    bf = b.active_factors()
    kb = len(bf)
    if kb == 0:
        return None
    n = d + k + kb
    pad = lambda row, at: tuple(row) + (Fraction(0),) * (n - len(row))  # noqa: E731
    cons = [Constraint(pad(c.coeffs, 0), c.sense, c.rhs) for c in cons]
    for j, (ideal, _) in enumerate(bf):
        for m in ideal.generators:
            row = [-Fraction(x) for x in m] + [Fraction(0)] * k + [Fraction(int(i == j)) for i in range(kb)]
            cons.append(Constraint(tuple(row), "<=", 0))
    cons.append(Constraint((Fraction(0),) * (d + k) + tuple(e for _, e in bf), ">=", 1))
    res = minimize(pad(obj, 0), cons, nonneg=(True,) * d + (False,) * (k + kb))
    if res.status == "infeasible":
        return None
    if res.status == "unbounded":
        raise NotLogCanonicalError("base pair is not log canonical")
    return res.value


def lc_threshold_newton(germ: ToricGerm, base: MonomialRIdeal | None, b: MonomialRIdeal, delta=None) -> Fraction | None:
    """Independent threshold computation by Newton-polyhedron dilation.

    The pair is lc exactly when the vector ``1 - delta`` lies in the Minkowski
    sum of the dilated Newton polyhedra of all factors; the threshold is the
    largest dilation of the ``b`` part for which that membership survives.
    """
    d = germ.dim
    base = base if base is not None else MonomialRIdeal.trivial(d)
    dl = _delta(germ, delta)
    bf = b.active_factors()
    af = base.active_factors()
    if not bf:
        return None
    cols = []  # (exponent-weighted generator vector, kind, factor index)
    for j, (ideal, e) in enumerate(af):
        for m in ideal.generators:
            cols.append((tuple(e * x for x in m), "a", j))
    for j, (ideal, e) in enumerate(bf):
        for m in ideal.generators:
            cols.append((tuple(e * x for x in m), "b", j))
    nv = len(cols) + 1  # last variable is t
    cons = []
    for i in range(d):
        row = tuple(c[0][i] for c in cols) + (Fraction(0),)
        cons.append(Constraint(row, "<=", 1 - dl[i]))
    for j in range(len(af)):
        row = tuple(Fraction(int(c[1] == "a" and c[2] == j)) for c in cols) + (Fraction(0),)
        cons.append(Constraint(row, "==", 1))
    for j in range(len(bf)):
        row = tuple(Fraction(int(c[1] == "b" and c[2] == j)) for c in cols) + (Fraction(-1),)
        cons.append(Constraint(row, "==", 0))
    obj = (Fraction(0),) * len(cols) + (Fraction(1),)
    res = maximize(obj, cons, nonneg=(True,) * nv)
    if res.status == "infeasible":
        raise NotLogCanonicalError("base pair is not log canonical")
    if res.status == "unbounded":
        return None
    return res.value


def a_lc_threshold(
    germ: ToricGerm,
    base: MonomialRIdeal | None,
    b: MonomialRIdeal,
    target,
    centre=None,
    delta=None,
    max_iter: int = 200,
) -> Fraction:
    """The t with mld(base * b^t) = target, by Newton steps on witness lines.

    mld(base * b^t) is a minimum of lines ``a_w(base) - t ord_w(b)``, hence
    concave and non-increasing in t.  Starting from a point where the value
    is at most the target, the root of the current witness line never
    undershoots the true root, so the iteration descends monotonically and
    stops on an exact hit.
    """
    d = germ.dim
    target = frac(target)
    base = base if base is not None else MonomialRIdeal.trivial(d)

    def at(t):
        return mld(germ, base * (b ** t), centre, delta)

    rep = at(Fraction(0))
    if rep.value is None or rep.value < target:
        raise NoSolutionError(
            "mld of the base pair is already below the target",
            mld="-inf" if rep.value is None else fmt(rep.value),
            target=fmt(target),
        )
    if rep.value == target:
        return Fraction(0)
    top = lc_threshold(germ, base, b, delta)

    def line_root(w):
        o = ord_along(w, b)
        if o == 0:
            return None
        return (a_log_discrepancy(germ, w, base, delta) - target) / o

    t = line_root(rep.witness)
    if t is None:
        t = top
    elif top is not None:
        t = min(t, top)
    if t is None:
        raise NoSolutionError("mld never reaches the target", target=fmt(target))
    for _ in range(max_iter):
        rep = at(t)
        if rep.value == target:
            return t
        if rep.value is not None and rep.value > target:
            raise NoSolutionError(
                "mld jumps past the target at the lc threshold",
                threshold=fmt(t),
                mld=fmt(rep.value),
                target=fmt(target),
            )
        nxt = line_root(rep.witness)
        if nxt is None or nxt >= t:
            raise NoSolutionError("threshold iteration stalled", t=fmt(t))
        t = nxt
    raise NoSolutionError("threshold iteration did not converge", t=fmt(t))


@dataclass(frozen=True)
class ThresholdReport:
    value: Fraction | None
    newton_value: Fraction | None = None
    agree: bool = True
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        enc = lambda x: "+inf" if x is None else fmt(x)  # noqa: E731
        return {"value": enc(self.value), "newton_value": enc(self.newton_value), "agree": self.agree, **self.extra}


def lct_report(germ, base, b, delta=None) -> ThresholdReport:
    v = lc_threshold(germ, base, b, delta)
    n = lc_threshold_newton(germ, base, b, delta)
    return ThresholdReport(v, n, v == n)


def computing_valuations(germ: ToricGerm, a: MonomialRIdeal, value, bound: int, centre=None, delta=None) -> list[tuple]:
    """All primitive lattice points in the box whose a-value equals ``value``, in lexicographic order."""
    value = frac(value)
    support = _check_centre(germ, centre)
    ev = _Evaluator(germ, a, _delta(germ, delta))
    target = value * ev.denom
    if target.denominator != 1:
        return []
    out = []
    for grid in _lattice_points(germ, support, bound):
        hits = grid[ev.values(grid) == int(target)]
        for u in hits:
            w = tuple(Fraction(int(x), germ.index) for x in u)
            if germ.primitive(w) == w:
                out.append(w)
    return sorted(out)
