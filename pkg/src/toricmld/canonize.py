"""Construction of canonical pairs by crepant toric divisorial contractions.

Starting from ``(A^3, a^q)`` and a fixed divisor ``E`` computing its mld at
the origin, each step looks at the centre of ``E`` on the current model.  If
it is a point, the weak transform is examined there: the run stops when the
point is already good enough, and otherwise a weighted blow-up whose
exceptional divisor computes ``mld = 1`` at the threshold exponent ``q_i``
is performed.  All models are toric, so a model is just a fan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import fmt, frac, vec
from .blowup import Fan, chart_coordinates, crepancy_violations, pullback, weighted_blowup
from .errors import ContractionNotFoundError, MathError
from .ideals import MonomialIdeal, MonomialRIdeal
from .valuations import (
    ToricGerm,
    a_lc_threshold,
    a_log_discrepancy,
    box_limit,
    computing_valuations,
    log_discrepancy,
    mld,
    simplex_minimum,
)

SMOOTH3 = ToricGerm.smooth(3)
MAX_STEPS = 50


def _jv(v) -> list:
    return [int(x) if x.denominator == 1 else fmt(x) for x in v]


@dataclass(frozen=True)
class CanonizeStep:
    germ: ToricGerm
    basis: tuple
    index: int
    ideal: MonomialRIdeal  # weak transform of a on the chart
    mld_here: Fraction  # mld at P_i of (X_i, a_i^q)
    q_i: Fraction
    weight_chart: tuple  # F_i in chart coordinates
    weight: tuple  # F_i in the original coordinates
    a_F_q: Fraction  # a_{F_i}(X, a^q)
    a_F_qi: Fraction  # a_{F_i}(X, a^{q_i})
    a_F: Fraction  # a_{F_i}(X)
    a_F_chart: Fraction  # a_{F_i}(X_i)
    delta: tuple  # ((ray, coefficient), ...) for exceptional rays through P_i
    ord_E_S: Fraction
    smooth_point: bool

    def to_json(self) -> dict:
        return {
            "germ": str(self.germ),
            "basis": [_jv(b) for b in self.basis],
            "index": self.index,
            "ideal": self.ideal.to_json(),
            "mld_at_point": fmt(self.mld_here),
            "q_i": fmt(self.q_i),
            "weight_chart": _jv(self.weight_chart),
            "weight": _jv(self.weight),
            "a_F_q": fmt(self.a_F_q),
            "a_F_qi": fmt(self.a_F_qi),
            "a_F": fmt(self.a_F),
            "a_F_chart": fmt(self.a_F_chart),
            "delta": [{"ray": _jv(r), "coefficient": fmt(c)} for r, c in self.delta],
            "ord_E_S": fmt(self.ord_E_S),
            "smooth_point": self.smooth_point,
        }


@dataclass(frozen=True)
class Outcome:
    process: str  # "Process3", "Process5" or "Process7"
    germ: ToricGerm | None
    basis: tuple
    ideal: MonomialRIdeal | None
    delta: tuple
    mld_output: Fraction | None  # mld_Q(Y, a_Y^q)
    mld_crepant: Fraction | None  # mld_Q(Y, Delta, a_Y^q)

    def to_json(self) -> dict:
        enc = lambda x: None if x is None else fmt(x)  # noqa: E731
        return {
            "process": self.process,
            "germ": None if self.germ is None else str(self.germ),
            "basis": [_jv(b) for b in self.basis],
            "ideal": None if self.ideal is None else self.ideal.to_json(),
            "delta": [fmt(x) for x in self.delta],
            "mld_output": enc(self.mld_output),
            "mld_crepant": enc(self.mld_crepant),
        }


@dataclass(frozen=True)
class CanonizeTrace:
    ideal: MonomialRIdeal
    q: Fraction
    mld: Fraction
    divisor: tuple  # the fixed divisor E
    steps: tuple
    outcome: Outcome
    fan_rays: tuple = ()

    def to_json(self) -> dict:
        return {
            "ideal": self.ideal.to_json(),
            "q": fmt(self.q),
            "mld": fmt(self.mld),
            "divisor": _jv(self.divisor),
            "steps": [s.to_json() for s in self.steps],
            "termination": self.outcome.to_json(),
            "fan_rays": [_jv(r) for r in self.fan_rays],
        }


@dataclass(frozen=True)
class BoundLedger:
    epsilon: Fraction
    n: int
    r_bound: int
    c_sequence: tuple
    c_bound: int
    eta: Fraction | None
    l_bound: Fraction | None
    b_observed: Fraction
    empirical_gap: Fraction | None
    epsilon_consistent: bool
    r_ok: bool
    c_ok: bool
    tail_ok: bool
    notes: tuple = field(default=())

    def to_json(self) -> dict:
        enc = lambda x: None if x is None else fmt(x)  # noqa: E731
        return {
            "epsilon": fmt(self.epsilon),
            "n": self.n,
            "r_bound": self.r_bound,
            "c_sequence": list(self.c_sequence),
            "c_bound": self.c_bound,
            "eta": enc(self.eta),
            "l_bound": enc(self.l_bound),
            "b_observed": fmt(self.b_observed),
            "empirical_gap": enc(self.empirical_gap),
            "epsilon_consistent": self.epsilon_consistent,
            "r_ok": self.r_ok,
            "c_ok": self.c_ok,
            "tail_ok": self.tail_ok,
            "notes": list(self.notes),
        }


def _is_smooth_shape(u) -> bool:
    ints = [int(x) for x in u]
    if any(x <= 0 for x in ints) or 1 not in ints:
        return False
    rest = list(ints)
    rest.remove(1)
    return math.gcd(rest[0], rest[1]) == 1


def _terminal_blowup(germ: ToricGerm, u) -> bool:
    try:
        bl = weighted_blowup(germ, u)
    except MathError:
        return False
    return all(c.germ.is_terminal_germ() for c in bl.charts)


def choose_contraction(germ: ToricGerm, ideal: MonomialRIdeal, q_i: Fraction) -> tuple:
    """Weight of a terminal weighted blow-up whose divisor computes mld 1 at exponent ``q_i``."""
    a = ideal ** q_i
    rep = mld(germ, a)
    bound = rep.search_box_bound
    mu, _ = simplex_minimum(germ, a)
    if mu > 0:
        bound = max(bound, min(box_limit(), math.ceil(1 / mu)))
    cands = computing_valuations(germ, a, 1, bound)
    if germ.is_smooth:
        shaped = [u for u in cands if _is_smooth_shape(u)]
    else:
        shaped = [u for u in cands if log_discrepancy(germ, u) == 1 + Fraction(1, germ.index)]
    good = [u for u in shaped if _terminal_blowup(germ, u)]
    if not good:
        raise ContractionNotFoundError(
            "no toric divisor computing the mld gives a terminal weighted blow-up",
            germ=str(germ),
            exponent=fmt(q_i),
            computing=[_jv(u) for u in cands],
            shaped=[_jv(u) for u in shaped],
        )
    return good[0]


def _to_source(basis, c) -> tuple:
    return tuple(sum((ci * b[k] for ci, b in zip(c, basis)), Fraction(0)) for k in range(3))


def canonize(a, q, epsilon, max_steps: int = MAX_STEPS, audit: bool = False) -> tuple[CanonizeTrace, BoundLedger]:
    if isinstance(a, MonomialIdeal):
        a = MonomialRIdeal(((a, Fraction(1)),))
    if a.dim != 3:
        raise MathError("the construction runs on ideals in three variables", dim=a.dim)
    q, epsilon = frac(q), frac(epsilon)
    if q <= 0:
        raise MathError("q must be positive", q=fmt(q))
    if epsilon <= 0:
        raise MathError("epsilon must be positive", epsilon=fmt(epsilon))
    base = mld(SMOOTH3, a ** q)
    if base.value is None:
        raise MathError("the pair is not log canonical at the origin", witness=base.witness.to_json())
    E = base.witness.w
    fan = Fan(SMOOTH3)
    steps = []
    outcome = None
    for _ in range(max_steps + 1):
        cone, face, _ = fan.minimal_cone_containing(E)
        if len(face) < 3:
            outcome = Outcome("Process3", None, face, None, (), None, None)
            break
        tr = pullback(SMOOTH3, a, cone)
        trq = pullback(SMOOTH3, a ** q, cone)
        germ = tr.germ
        ideal = tr.ideal
        here = mld(germ, ideal ** q).value
        if here is None:
            raise MathError("weak transform is not lc at the centre", germ=str(germ))
        if germ.is_smooth and here >= 1 or not germ.is_smooth and here > 1:
            crep = mld(germ, ideal ** q, None, trq.delta).value
            outcome = Outcome("Process5" if germ.is_smooth else "Process7", germ, cone, ideal, trq.delta, here, crep)
            break
        if len(steps) >= max_steps:
            raise MathError("step limit reached", steps=max_steps)
        if audit:
            bad = crepancy_violations(trq, a ** q, bound=2)
            if bad:
                raise MathError("crepancy audit failed", violations=bad[:5])
        q_i = a_lc_threshold(germ, None, ideal, 1)
        u = choose_contraction(germ, ideal, q_i)
        u_orig = _to_source(cone, u)
        e_chart = chart_coordinates(cone, E)
        delta = tuple((g, c) for g, c, ex in zip(cone, trq.delta, trq.exceptional) if ex)
        ord_s = sum((x for x, ex in zip(e_chart, trq.exceptional) if ex), Fraction(0))
        steps.append(CanonizeStep(
            germ=germ,
            basis=cone,
            index=germ.index,
            ideal=ideal,
            mld_here=here,
            q_i=q_i,
            weight_chart=u,
            weight=u_orig,
            a_F_q=a_log_discrepancy(SMOOTH3, u_orig, a ** q),
            a_F_qi=a_log_discrepancy(SMOOTH3, u_orig, a ** q_i),
            a_F=log_discrepancy(SMOOTH3, u_orig),
            a_F_chart=log_discrepancy(germ, u),
            delta=delta,
            ord_E_S=ord_s,
            smooth_point=germ.is_smooth,
        ))
        fan.star_subdivide(u_orig)
    trace = CanonizeTrace(a, q, base.value, E, tuple(steps), outcome, tuple(fan.rays))
    return trace, bound_ledger(trace, epsilon)


def _eta(q: Fraction) -> Fraction | None:
    if q >= 1:
        return None
    a0 = math.ceil(1 / q) - 1
    return Fraction(1, a0) - q


def bound_ledger(trace: CanonizeTrace, epsilon) -> BoundLedger:
    """Constants controlling the run, recomputed from ``q`` and ``epsilon``, checked against the trace."""
    q = trace.q
    epsilon = frac(epsilon)
    n = q.denominator
    r_bound = max(1, math.ceil(q / epsilon - 2))
    c = [math.ceil(q / epsilon)]
    for _ in range(r_bound):
        c.append(2 + (c[-1] - 1) * n)
    smooth_qs = [s.q_i for s in trace.steps if s.smooth_point]
    gap = min((q - x for x in smooth_qs), default=None)
    last_smooth = max((i for i, s in enumerate(trace.steps) if s.smooth_point), default=-1)
    tail = len(trace.steps) - 1 - last_smooth
    b = min(trace.divisor)
    notes = ["l_bound needs the surface bound for exponent 1/n, which has no closed form; only its inputs are reported"]
    return BoundLedger(
        epsilon=epsilon,
        n=n,
        r_bound=r_bound,
        c_sequence=tuple(c),
        c_bound=c[-1],
        eta=_eta(q),
        l_bound=None,
        b_observed=b,
        empirical_gap=gap,
        epsilon_consistent=gap is None or epsilon <= gap,
        r_ok=all(s.index <= r_bound for s in trace.steps),
        c_ok=all(s.a_F <= c[-1] for s in trace.steps),
        tail_ok=tail <= r_bound,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class LemmaReport:
    checks: dict
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "violations": [list(v) for v in self.violations]}


def verify_algorithm_lemmas(trace: CanonizeTrace, recompute: bool = True) -> LemmaReport:
    """Check the four structural properties of a run on its recorded data.

    With ``recompute`` the recorded log discrepancies are also re-derived from
    the original ideal, so a tampered trace is caught as well.
    """
    q = trace.q
    viol = []
    for i in range(1, len(trace.steps)):
        if trace.steps[i].q_i < trace.steps[i - 1].q_i:
            viol.append(("q_nondecreasing", i, fmt(trace.steps[i - 1].q_i), fmt(trace.steps[i].q_i)))
    for i, s in enumerate(trace.steps):
        if recompute:
            real = (
                a_log_discrepancy(SMOOTH3, s.weight, trace.ideal ** s.q_i),
                a_log_discrepancy(SMOOTH3, s.weight, trace.ideal ** q),
                log_discrepancy(SMOOTH3, s.weight),
            )
            if real != (s.a_F_qi, s.a_F_q, s.a_F):
                viol.append(("recorded_values", i, [fmt(x) for x in real]))
        if s.a_F_qi > 1:
            viol.append(("a_F_at_qi_le_1", i, fmt(s.a_F_qi)))
        if s.a_F_q >= 1:
            viol.append(("a_F_at_q_lt_1", i, fmt(s.a_F_q)))
        if s.q_i != q and s.a_F > q / (q - s.q_i):
            viol.append(("a_F_bound", i, fmt(s.a_F), fmt(q / (q - s.q_i))))
    names = ["q_nondecreasing", "a_F_at_qi_le_1", "a_F_at_q_lt_1", "a_F_bound"]
    checks = {n: not any(v[0] == n for v in viol) for n in names}
    if recompute:
        checks["recorded_values"] = not any(v[0] == "recorded_values" for v in viol)
    return LemmaReport(checks, tuple(viol))


def verify_output(trace: CanonizeTrace) -> dict:
    """Independent re-check of the output contract after a Process5 stop."""
    out = trace.outcome
    if out.process != "Process5":
        return {"applicable": False}
    tr = pullback(SMOOTH3, trace.ideal ** trace.q, out.basis)
    crep = mld(tr.germ, tr.ideal, None, tr.delta).value
    plain = mld(tr.germ, tr.ideal).value
    return {
        "applicable": True,
        "crepant_equal": crep == trace.mld,
        "output_canonical": plain is not None and plain >= 1,
        "all_a_F_below_1": all(s.a_F_q < 1 for s in trace.steps),
    }
