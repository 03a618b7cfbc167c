"""Surface engine: computing weighted blow-ups and the point-blow-up search."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import fmt, vec
from .blowup import pullback
from .errors import AmbiguousPointError, DimensionError, MathError
from .ideals import MonomialIdeal, MonomialRIdeal
from .valuations import MldReport, ToricGerm, a_log_discrepancy, lc_threshold, mld

SMOOTH2 = ToricGerm.smooth(2)


def _require_plane(a: MonomialRIdeal) -> None:
    if a.dim != 2:
        raise DimensionError("surface routines take ideals in two variables", dim=a.dim)


def computing_wblowup_search(a: MonomialRIdeal) -> tuple[tuple[int, int], MldReport]:
    """Weights of a weighted blow-up whose divisor computes the mld at the origin.

    For a non-lc ideal the weights of a divisor with negative log discrepancy
    are returned instead.
    """
    _require_plane(a)
    rep = mld(SMOOTH2, a)
    w = rep.witness.w
    return (int(w[0]), int(w[1])), rep


@dataclass(frozen=True)
class SequenceStep:
    valuation: tuple  # exceptional divisor in the original coordinates
    a_value: Fraction
    chart_mlds: tuple  # mld at the origin of each new chart (None = -inf)
    chosen: int | None  # 0-based chart kept for the next step

    def to_json(self) -> dict:
        enc = lambda x: "-inf" if x is None else fmt(x)  # noqa: E731
        return {
            "valuation": [int(x) for x in self.valuation],
            "a": fmt(self.a_value),
            "chart_mlds": [enc(x) for x in self.chart_mlds],
            "chart": None if self.chosen is None else self.chosen + 1,
        }


@dataclass(frozen=True)
class BlowupSequence:
    ideal: MonomialRIdeal
    rescale: Fraction
    target: Fraction
    steps: tuple

    @property
    def final(self) -> tuple:
        return self.steps[-1].valuation

    @property
    def valuations(self) -> list[tuple]:
        return [s.valuation for s in self.steps]

    def to_json(self) -> dict:
        return {
            "ideal": self.ideal.to_json(),
            "rescale": fmt(self.rescale),
            "mld": fmt(self.target),
            "final": [int(x) for x in self.final],
            "length": len(self.steps),
            "steps": [s.to_json() for s in self.steps],
        }


def _matvec(basis, c):
    return tuple(sum((ci * b[k] for ci, b in zip(c, basis)), Fraction(0)) for k in range(2))


def blowup_sequence(a: MonomialRIdeal, max_steps: int = 200) -> BlowupSequence:
    """Repeatedly blow up the torus-fixed point where the mld persists.

    A non-lc ideal is first rescaled by its lc threshold at the origin.
    Each step blows up the current chart origin; the procedure stops once the
    new exceptional divisor attains the mld, and otherwise moves to the
    unique chart origin whose crepant mld still equals it.
    """
    _require_plane(a)
    t = Fraction(1)
    if mld(SMOOTH2, a).value is None:
        t = lc_threshold(SMOOTH2, None, a)
        a = a ** t
    target = mld(SMOOTH2, a).value
    e = (Fraction(1), Fraction(0))
    f = (Fraction(0), Fraction(1))
    basis = (e, f)  # current chart cone in original coordinates
    germ = SMOOTH2
    ideal, delta = a, (Fraction(0), Fraction(0))
    steps = []
    for _ in range(max_steps):
        v_local = (Fraction(1), Fraction(1))
        v = _matvec(basis, v_local)
        av = a_log_discrepancy(germ, v_local, ideal, delta)
        if av == target:
            steps.append(SequenceStep(v, av, (), None))
            return BlowupSequence(a, t, target, tuple(steps))
        cones = [((v_local, f), 0), ((e, v_local), 1)]
        found = []
        vals = []
        for cone, pos in cones:
            tr = pullback(germ, ideal, cone, delta, pos)
            val = mld(tr.germ, tr.ideal, None, tr.delta).value
            vals.append(val)
            if val == target:
                found.append((cone, tr))
        if len(found) != 1:
            raise AmbiguousPointError(
                "expected exactly one torus-fixed point carrying the mld",
                valuation=[int(x) for x in v],
                chart_mlds=["-inf" if x is None else fmt(x) for x in vals],
            )
        cone, tr = found[0]
        chosen = 0 if cone[0] == v_local else 1
        steps.append(SequenceStep(v, av, tuple(vals), chosen))
        basis = tuple(_matvec(basis, g) for g in cone)
        ideal, delta = tr.ideal, tr.delta
    raise MathError("blow-up sequence did not terminate", steps=max_steps)


def tower_test_ideal(w1: int, w2: int) -> MonomialRIdeal:
    """An lc ideal whose only lc place at the origin is the (w1,w2) divisor."""
    return MonomialRIdeal.of([[w2, 0], [0, w1]], Fraction(w1 + w2, w1 * w2))


def transverse_ideal(a: MonomialRIdeal, coords) -> MonomialRIdeal:
    """Restrict a monomial R-ideal to the plane transverse to an invariant curve.

    Valuations centred at the generic point of the curve only see the
    exponents of ``coords``, so the other exponents are dropped.
    """
    coords = tuple(coords)
    if len(coords) != 2:
        raise MathError("the transverse plane needs two coordinates", coords=list(coords))
    fs = []
    for ideal, e in a.factors:
        gens = tuple(tuple(g[i] for i in coords) for g in ideal.generators)
        fs.append((MonomialIdeal(gens, 2), e))
    return MonomialRIdeal(tuple(fs))


def curve_generic_mld(a: MonomialRIdeal, coords) -> MldReport:
    """mld at the generic point of the invariant curve ``{x_i = 0, i in coords}`` of A^3."""
    if a.dim != 3:
        raise DimensionError("curve centres need a threefold ideal")
    return mld(SMOOTH2, transverse_ideal(a, coords))


def expand_witness(w2d, coords, d: int = 3) -> tuple:
    w = [Fraction(0)] * d
    for x, i in zip(vec(w2d), coords):
        w[i] = x
    return tuple(w)
