"""Exact rational linear algebra, simplicial cones, lattices and a small LP solver.

Everything here works over :class:`fractions.Fraction`; there is no floating
point anywhere in the package's decision paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateConeError, ZeroVectorError

Vector = tuple  # tuple[Fraction, ...]


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def vec(xs: Iterable) -> tuple:
    return tuple(frac(x) for x in xs)


def fmt(x) -> str:
    """Serialise a rational as ``"p/q"`` (or ``"p"`` when integral)."""
    x = frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def lcm_all(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out


def gcd_all(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, x)
    return g


def common_denominator(xs: Iterable) -> int:
    return lcm_all(frac(x).denominator for x in xs)


def solve_square(rows: Sequence[Sequence], rhs: Sequence) -> tuple | None:
    """Solve ``M x = rhs`` exactly by Gauss-Jordan; ``None`` if singular."""
    n = len(rows)
    m = [[frac(a) for a in row] + [frac(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [a / p for a in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


def determinant(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    m = [[frac(a) for a in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det *= p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]


# --------------------------------------------------------------------------
# Simplicial cones


@dataclass(frozen=True)
class SimplicialCone:
    generators: tuple

    def __post_init__(self):
        gens = tuple(vec(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise DegenerateConeError("a cone needs at least one generator")
        d = len(gens[0])
        if any(len(g) != d for g in gens):
            raise DegenerateConeError("generators have mixed dimensions")
        if len(gens) != d or determinant(gens) == 0:
            raise DegenerateConeError(
                "generators are not linearly independent",
                generators=[[fmt(x) for x in g] for g in gens],
            )

    @property
    def dim(self) -> int:
        return len(self.generators)

    def coefficients(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in the generator basis."""
        cols = transpose(self.generators)
        sol = solve_square(cols, vec(v))
        assert sol is not None  # independence checked at construction
        return sol


@dataclass(frozen=True)
class Membership:
    kind: str  # "interior" | "boundary" | "outside"
    coefficients: tuple
    face: tuple = ()  # indices of generators with positive coefficient

    @property
    def inside(self) -> bool:
        return self.kind != "outside"


def cone_membership(cone: SimplicialCone, v: Sequence) -> Membership:
    coeffs = cone.coefficients(v)
    if any(c < 0 for c in coeffs):
        return Membership("outside", coeffs)
    face = tuple(i for i, c in enumerate(coeffs) if c > 0)
    kind = "interior" if len(face) == cone.dim else "boundary"
    return Membership(kind, coeffs, face)


# --------------------------------------------------------------------------
# Lattices N = Z^d + Z * a / r


def in_lattice(v: Sequence, r: int, weights: Sequence[int]) -> bool:
    """Membership of a rational vector in ``Z^d + Z * weights / r``."""
    v = vec(v)
    if any((x * r).denominator != 1 for x in v):
        return False
    u = [int(x * r) for x in v]
    for k in range(r):
        if all((ui - k * ai) % r == 0 for ui, ai in zip(u, weights)):
            return True
    return False


def primitive(v: Sequence, r: int = 1, weights: Sequence[int] | None = None) -> tuple:
    """Primitive generator of the ray through ``v`` in ``Z^d + Z * weights / r``."""
    v = vec(v)
    if all(x == 0 for x in v):
        raise ZeroVectorError("the zero vector spans no ray")
    if weights is None:
        weights = (0,) * len(v)
    denom = common_denominator(v)
    u = [int(x * denom) for x in v]
    g = gcd_all(abs(x) for x in u)
    step = tuple(Fraction(x // g, r) for x in u)  # generator of the ray in (1/r)Z^d
    for m in range(1, r + 1):
        cand = tuple(m * s for s in step)
        if in_lattice(cand, r, weights):
            return cand
    raise AssertionError("unreachable: r * step is integral")


def is_primitive(v: Sequence, r: int = 1, weights: Sequence[int] | None = None) -> bool:
    v = vec(v)
    return in_lattice(v, r, weights or (0,) * len(v)) and primitive(v, r, weights) == v


def quotient_group(basis: Sequence[Sequence], lattice_gens: Sequence[Sequence]) -> list[tuple]:
    """Elements of ``N / (Z basis)`` as fractional coordinates in ``basis``.

    ``lattice_gens`` generate ``N``; each element is reported as its
    coordinate vector modulo 1, so entries lie in ``[0, 1)``.
    """
    cone = SimplicialCone(tuple(basis))
    gens = []
    for g in lattice_gens:
        c = tuple(x - math.floor(x) for x in cone.coefficients(g))
        if any(c) and c not in gens:
            gens.append(c)
    zero = tuple(Fraction(0) for _ in basis)
    elems = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                s = tuple((a + b) - math.floor(a + b) for a, b in zip(e, g))
                if s not in elems:
                    elems.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(elems)


def element_order(c: Sequence[Fraction]) -> int:
    return lcm_all(x.denominator for x in c)


# --------------------------------------------------------------------------
# Linear programming


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    sense: str  # "<=", ">=", "=="
    rhs: Fraction

    def __post_init__(self):
        if self.sense not in ("<=", ">=", "=="):
            raise ValueError(f"bad constraint sense {self.sense!r}")
        object.__setattr__(self, "coeffs", vec(self.coeffs))
        object.__setattr__(self, "rhs", frac(self.rhs))

    def holds(self, x: Sequence) -> bool:
        lhs = dot(self.coeffs, x)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    objective: tuple
    constraints: tuple = ()
    sense: str = "min"
    nonneg: tuple = field(default=())  # per-variable x_i >= 0 flags; () = all free

    def __post_init__(self):
        object.__setattr__(self, "objective", vec(self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        n = len(self.objective)
        flags = tuple(self.nonneg) if self.nonneg else (False,) * n
        if len(flags) != n:
            raise ValueError("nonneg flags do not match the number of variables")
        object.__setattr__(self, "nonneg", flags)
        for c in self.constraints:
            if len(c.coeffs) != n:
                raise ValueError("constraint width does not match the objective")

    @property
    def nvars(self) -> int:
        return len(self.objective)

    def feasible(self, x: Sequence) -> bool:
        if any(f and xi < 0 for f, xi in zip(self.nonneg, x)):
            return False
        return all(c.holds(x) for c in self.constraints)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Fraction | None = None
    point: tuple | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _pivot(tab, basis, row, col):
    p = tab[row][col]
    tab[row] = [a / p for a in tab[row]]
    for r in range(len(tab)):
        if r != row:
            f = tab[r][col]
            if f:
                tab[r] = [a - f * b for a, b in zip(tab[r], tab[row])]
    basis[row] = col


def _simplex(tab, basis, cost, allowed):
    """Minimise ``cost . x`` over the tableau with Bland's rule.

    ``tab`` rows are ``[A | b]``; returns False when unbounded.
    """
    m = len(tab)
    ncols = len(tab[0]) - 1
    while True:
        # reduced costs: c_j - c_B B^{-1} A_j
        cb = [cost[basis[r]] for r in range(m)]
        entering = None
        for j in range(ncols):
            if not allowed[j] or j in basis:
                continue
            red = cost[j] - sum((cb[r] * tab[r][j] for r in range(m)), Fraction(0))
            if red < 0:
                entering = j
                break
        if entering is None:
            return True
        best = None
        for r in range(m):
            a = tab[r][entering]
            if a > 0:
                ratio = tab[r][-1] / a
                key = (ratio, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            return False
        _pivot(tab, basis, best[1], entering)


def solve_lp(lp: LinearProgram) -> LPResult:
    """Exact two-phase simplex (Bland's rule) over the rationals."""
    n = lp.nvars
    # column layout: for each original variable one column (nonneg) or two (free split)
    colmap = []  # list of (var, sign)
    for i, nn in enumerate(lp.nonneg):
        colmap.append((i, 1))
        if not nn:
            colmap.append((i, -1))
    nstruct = len(colmap)
    rows = []
    slack_count = sum(1 for c in lp.constraints if c.sense != "==")
    slack_idx = nstruct
    for c in lp.constraints:
        row = [c.coeffs[v] * s for v, s in colmap] + [Fraction(0)] * slack_count
        if c.sense == "<=":
            row[slack_idx] = Fraction(1)
            slack_idx += 1
        elif c.sense == ">=":
            row[slack_idx] = Fraction(-1)
            slack_idx += 1
        rhs = c.rhs
        if rhs < 0:
            row = [-a for a in row]
            rhs = -rhs
        rows.append(row + [rhs])
    m = len(rows)
    ncore = nstruct + slack_count
    tab = [r[:ncore] + [Fraction(int(k == i)) for k in range(m)] + [r[-1]] for i, r in enumerate(rows)]
    basis = [ncore + i for i in range(m)]
    total = ncore + m
    allowed = [True] * total
    phase1 = [Fraction(0)] * ncore + [Fraction(1)] * m
    if m:
        _simplex(tab, basis, phase1, allowed)
        infeas = sum((tab[r][-1] for r in range(m) if basis[r] >= ncore), Fraction(0))
        if infeas > 0:
            return LPResult("infeasible")
        # drive remaining artificials out of the basis; drop redundant rows
        r = 0
        while r < len(tab):
            if basis[r] >= ncore:
                col = next((j for j in range(ncore) if tab[r][j] != 0), None)
                if col is None:
                    del tab[r]
                    del basis[r]
                    continue
                _pivot(tab, basis, r, col)
            r += 1
    for j in range(ncore, total):
        allowed[j] = False
    sign = 1 if lp.sense == "min" else -1
    cost = [Fraction(0)] * total
    for k, (v, s) in enumerate(colmap):
        cost[k] = sign * s * lp.objective[v]
    if not _simplex(tab, basis, cost, allowed):
        return LPResult("unbounded")
    xcols = [Fraction(0)] * total
    for r, b in enumerate(basis):
        xcols[b] = tab[r][-1]
    x = [Fraction(0)] * n
    for k, (v, s) in enumerate(colmap):
        x[v] += s * xcols[k]
    x = tuple(x)
    return LPResult("optimal", dot(lp.objective, x), x)


def minimize(objective, constraints, nonneg=()) -> LPResult:
    return solve_lp(LinearProgram(tuple(objective), tuple(constraints), "min", tuple(nonneg)))


def maximize(objective, constraints, nonneg=()) -> LPResult:
    return solve_lp(LinearProgram(tuple(objective), tuple(constraints), "max", tuple(nonneg)))
