"""Named invariant checks over seeded random corpora.

Every check takes a ``random.Random`` and a corpus size and returns a
``CheckResult``. ``run_suite`` runs a selection in a fixed order and builds
the machine-readable manifest printed by ``toricmld verify-suite``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import (
    Constraint,
    SimplicialCone,
    cone_membership,
    fmt,
    minimize,
    primitive,
)
from .blowup import (
    Fan,
    continued_fraction,
    crepancy_violations,
    different_on_exceptional,
    regular_tower,
    tower_discrepancy_profile,
    weak_transform,
    weighted_blowup,
)
from .canonize import bound_ledger, canonize, verify_algorithm_lemmas, verify_output
from .classify import (
    HYPERSURFACE,
    SATURATED,
    admissible_hypersurface_pairs,
    classify_curve,
    half_lemma_check,
    hypersurface_form,
    saturated_form,
    verify_saturated_lc,
)
from .errors import MathError, NoSolutionError, NormalFormError
from .ideals import (
    MonomialIdeal,
    MonomialRIdeal,
    WeightedHomPoly,
    all_monomials_of_degree,
    newton_polygon_lct,
    ord_along,
    substitute,
)
from .surface import (
    blowup_sequence,
    computing_wblowup_search,
    curve_generic_mld,
    tower_test_ideal,
    transverse_ideal,
)
from .valuations import (
    ToricGerm,
    a_log_discrepancy,
    a_lc_threshold,
    computing_valuations,
    ext_ge,
    lc_threshold,
    lc_threshold_newton,
    log_discrepancy,
    mld,
)

SMOOTH = {2: ToricGerm.smooth(2), 3: ToricGerm.smooth(3)}
M3 = MonomialRIdeal.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    violations: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations and self.cases > 0

    def fail(self, *item) -> None:
        self.violations.append([_plain(x) for x in item])

    def to_json(self, limit: int = 5) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "violations": len(self.violations),
            "examples": self.violations[:limit],
            "stats": {k: _plain(v) for k, v in sorted(self.stats.items())},
        }


def _plain(x):
    if isinstance(x, Fraction):
        return fmt(x)
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, MonomialRIdeal):
        return x.describe()
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return str(x)


# --------------------------------------------------------------------------
# corpora


def random_ideal(rng: random.Random, d: int) -> MonomialRIdeal:
    """Up to three factors, generator entries at most 6, exponent denominators at most 12."""
    fs = []
    for _ in range(rng.randint(1, 3)):
        gens = []
        for _ in range(rng.randint(1, 3)):
            g = [rng.randint(0, 6) for _ in range(d)]
            if not any(g):
                g[rng.randrange(d)] = 1
            gens.append(tuple(g))
        den = rng.randint(1, 12)
        fs.append((MonomialIdeal(tuple(gens), d), Fraction(rng.randint(1, max(1, den // 3)), den)))
    return MonomialRIdeal(tuple(fs))


def random_m_primary(rng: random.Random, d: int, top: int = 6, extra: int = 2) -> MonomialIdeal:
    gens = set()
    for i in range(d):
        gens.add(tuple(rng.randint(1, top) if j == i else 0 for j in range(d)))
    for _ in range(rng.randint(0, extra)):
        g = tuple(rng.randint(0, 4) for _ in range(d))
        if any(g):
            gens.add(g)
    return MonomialIdeal(tuple(sorted(gens)), d)


def corpus(rng: random.Random, count: int) -> list[MonomialRIdeal]:
    return [random_ideal(rng, rng.choice((2, 3))) for _ in range(count)]


def brute_force_min(a: MonomialRIdeal, bound: int) -> tuple[Fraction, tuple]:
    """Smallest log discrepancy over integer vectors in [1, bound]^d, plain Python."""
    d = a.dim
    best, arg = None, None
    facs = [(f.generators, e) for f, e in a.factors if e != 0]
    for w in itertools.product(range(1, bound + 1), repeat=d):
        v = Fraction(sum(w))
        for gens, e in facs:
            v -= e * min(sum(x * y for x, y in zip(g, w)) for g in gens)
        if best is None or v < best:
            best, arg = v, w
    return best, arg


def _mp(a: MonomialRIdeal, s) -> MonomialRIdeal:
    return a * (M3 ** s) if a.dim == 3 else a * (MonomialRIdeal.of([[1, 0], [0, 1]]) ** s)


def _embed(a2: MonomialRIdeal) -> MonomialRIdeal:
    """Pull a plane R-ideal back to A^3 along the projection forgetting x3."""
    return MonomialRIdeal(tuple(
        (MonomialIdeal(tuple(g + (0,) for g in f.generators), 3), e) for f, e in a2.factors
    ))


# --------------------------------------------------------------------------
# acceptance-level checks


def check_anchors(rng, count) -> CheckResult:
    res = CheckResult("anchors")
    res.cases += 1
    if mld(SMOOTH[3]).value != 3:
        res.fail("mld(A^3)", mld(SMOOTH[3]).value)
    for r in range(2, 8):
        for b in range(1, r):
            if math.gcd(b, r) != 1:
                continue
            germ = ToricGerm(3, r, (b, r - b, 1))
            w = (Fraction(b, r), Fraction(r - b, r), Fraction(1, r))
            res.cases += 1
            if log_discrepancy(germ, w) != 1 + Fraction(1, r):
                res.fail("kawamata", r, b, log_discrepancy(germ, w))
        for s in range(1, r):
            if math.gcd(r, s) != 1:
                continue
            diff = different_on_exceptional(weighted_blowup(SMOOTH[2], (r, s)))
            got = sorted(Fraction(p["coefficient"]) for p in diff["points"])
            res.cases += 1
            if got != sorted([1 - Fraction(1, r), 1 - Fraction(1, s)]):
                res.fail("different", r, s, got)
    return res


def check_oracle(rng, count) -> CheckResult:
    res = CheckResult("oracle")
    finite = 0
    for a in corpus(rng, count):
        rep = mld(SMOOTH[a.dim], a)
        res.cases += 1
        if rep.value is None:
            w = rep.witness.w
            bound = 2 * max(4, math.ceil(max(w)))
            val, _ = brute_force_min(a, bound)
            if not val < 0:
                res.fail("missed_negative", a, val)
            # homogeneity: scaling a negative witness keeps it negative and linear
            for k in (2, 3):
                kw = tuple(k * x for x in w)
                if a_log_discrepancy(SMOOTH[a.dim], kw, a) != k * rep.witness_value:
                    res.fail("homogeneity", a, k)
            continue
        finite += 1
        val, _ = brute_force_min(a, 2 * rep.search_box_bound)
        if val != rep.value or not rep.certified:
            res.fail("mismatch", a, rep.value, val, rep.certificate)
    res.stats["finite"] = finite
    return res


def check_thresholds(rng, count) -> CheckResult:
    res = CheckResult("thresholds")
    step = Fraction(1, 1000)
    for a in corpus(rng, count):
        d = a.dim
        germ = SMOOTH[d]
        t_a = lc_threshold(germ, None, a)
        base = a if t_a is None or t_a >= 1 else a ** (t_a * Fraction(rng.choice((1, 2)), 2))
        b = MonomialRIdeal(((random_m_primary(rng, d), Fraction(1)),))
        t = lc_threshold(germ, base, b)
        tn = lc_threshold_newton(germ, base, b)
        res.cases += 1
        if t != tn:
            res.fail("lp_vs_newton", base, b, t, tn)
            continue
        at = mld(germ, base * b ** t).value
        past = mld(germ, base * b ** (t + step)).value
        if at != 0 or past is not None:
            res.fail("boundary", base, b, t, at, past)
    return res


def _positive_primitive(rng, d) -> tuple:
    while True:
        w = tuple(rng.randint(1, 6) for _ in range(d))
        if math.gcd(*w) == 1:
            return tuple(Fraction(x) for x in w)


def check_tower_gates(rng, count) -> CheckResult:
    res = CheckResult("tower_gates")
    for a in corpus(rng, count):
        d = a.dim
        germ = SMOOTH[d]
        ones = tuple(Fraction(1) for _ in range(d))
        o = ord_along(ones, a)
        if o == 0:
            continue
        for c in (Fraction(1, 2), Fraction(1)):
            b = a ** (c / o)
            rep = mld(germ, b)
            res.cases += 1
            # the first blow-up computes the mld, uniquely when the order is below one
            if rep.value != d - c:
                res.fail("first_blowup", b, rep.value)
            if c < 1 and computing_valuations(germ, b, rep.value, 4) != [ones]:
                res.fail("unique_computing", b)
            for w in (rep.witness.w, _positive_primitive(rng, d)):
                if sum(1 for x in w if x > 0) < 2:
                    continue
                prof = tower_discrepancy_profile(germ, w, b)
                vals = [s.a_value for s in prof.steps]
                pairs = list(zip(vals, vals[1:]))
                if prof.monotone_gate is None:
                    res.fail("gate_missing", b, w)
                elif c < 1:
                    if any(x >= y for x, y in pairs) or any(v <= 1 for v in vals):
                        res.fail("strict", b, w, vals)
                elif any(x > y for x, y in pairs) or any(v < 1 for v in vals):
                    res.fail("monotone", b, w, vals)
    return res


def check_convexity(rng, count) -> CheckResult:
    res = CheckResult("convexity")
    pool = corpus(rng, count)
    shared = 0
    for a1 in pool:
        a2 = rng.choice([x for x in pool if x.dim == a1.dim])
        germ = SMOOTH[a1.dim]
        r1, r2 = mld(germ, a1), mld(germ, a2)
        for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            combo = mld(germ, a1 ** t * a2 ** (1 - t)).value
            res.cases += 1
            rhs = None if r1.value is None or r2.value is None else t * r1.value + (1 - t) * r2.value
            if not ext_ge(combo, rhs):
                res.fail("convexity", a1, a2, t, combo, rhs)
            if rhs is not None and a_log_discrepancy(germ, r1.witness.w, a2) == r2.value:
                shared += 1
                if combo != rhs:
                    res.fail("shared_witness", a1, a2, t, combo, rhs)
    res.stats["shared_witness_cases"] = shared
    return res


def canonize_corpus(rng: random.Random, count: int) -> list[tuple]:
    out = []
    while len(out) < count:
        ideal = random_m_primary(rng, 3, top=7, extra=3)
        a = MonomialRIdeal(((ideal, Fraction(1)),))
        lct = lc_threshold(SMOOTH[3], None, a)
        q = Fraction(round(lct * Fraction(rng.randint(1, 10), 10) * 12), 12)
        q = min(max(q, Fraction(1, 12)), lct)
        out.append((a, q))
    return out


def check_canonize(rng, count, epsilon=Fraction(1, 20), audit=False) -> CheckResult:
    res = CheckResult("canonize")
    processes = {}
    for a, q in canonize_corpus(rng, count):
        res.cases += 1
        try:
            trace, ledger = canonize(a, q, epsilon, audit=audit)
        except MathError as exc:
            res.fail("error", a, q, exc.code, exc.message)
            continue
        key = trace.outcome.process
        processes[key] = processes.get(key, 0) + 1
        rep = verify_algorithm_lemmas(trace)
        if not rep.ok:
            res.fail("lemmas", a, q, list(rep.violations))
        out = verify_output(trace)
        if out["applicable"] and not all(out.values()):
            res.fail("output", a, q, out)
        if ledger.empirical_gap is not None:
            ledger = bound_ledger(trace, min(epsilon, ledger.empirical_gap))
        if not (ledger.r_ok and ledger.c_ok and ledger.tail_ok):
            res.fail("ledger", a, q, ledger.r_bound, ledger.c_bound)
    res.stats["processes"] = processes
    return res


def dichotomy_instances(rng: random.Random, count: int) -> list[MonomialRIdeal]:
    """Ideals with mld one at the origin and the curve x1 = x2 = 0 as an lc centre.

    Random ideals vanishing along that curve are scaled by the lc threshold
    of their transverse restriction and kept when the mld at the origin is one.
    """
    out = []
    for w1 in range(1, 5):
        for w2 in range(1, w1 + 1):
            if math.gcd(w1, w2) == 1:
                out.append(_embed(tower_test_ideal(w1, w2)))
    seen = {a.describe() for a in out}
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        gens = {(rng.randint(1, 6), 0, 0), (0, rng.randint(1, 6), 0)}
        for _ in range(rng.randint(1, 3)):
            g = (rng.randint(0, 4), rng.randint(0, 4), rng.randint(1, 4))
            if g[0] + g[1] > 0:
                gens.add(g)
        a = MonomialRIdeal(((MonomialIdeal(tuple(sorted(gens)), 3), Fraction(1)),))
        c = lc_threshold(SMOOTH[2], None, transverse_ideal(a, (0, 1)))
        b = a ** c
        if b.describe() in seen:
            continue
        if mld(SMOOTH[3], b).value == 1 and curve_generic_mld(b, (0, 1)).value == 0:
            seen.add(b.describe())
            out.append(b)
    return out


def check_half(rng, count) -> CheckResult:
    res = CheckResult("half_dichotomy")
    branch = {"linear": 0, "positive": 0}
    for a in dichotomy_instances(rng, count):
        res.cases += 1
        vals = {s: mld(SMOOTH[3], _mp(a, s)).value for s in (Fraction(0), Fraction(1, 4), Fraction(1, 2))}
        linear = all(v == 1 - 2 * s for s, v in vals.items())
        positive = vals[Fraction(1, 2)] is not None and vals[Fraction(1, 2)] > 0
        if linear == positive:
            res.fail("dichotomy", a, vals)
        branch["linear" if linear else "positive"] += 1
    v = half_lemma_check(2, 1, Fraction(1, 2))
    res.cases += 1
    if v.forced_weights != (2, 1) or not v.chain_holds:
        res.fail("half_forces_2_1", v.to_json())
    for t in (Fraction(1, 3), Fraction(2, 5)):
        res.cases += 1
        if half_lemma_check(2, 1, t).feasible:
            res.fail("below_half_feasible", t)
    res.stats["branches"] = branch
    return res


def corollary_instances(rng: random.Random, count: int) -> list[tuple]:
    x12 = MonomialRIdeal.of([[1, 0, 0], [0, 1, 0]])
    out = [(x12, Fraction(2)), (x12 ** 2, Fraction(1)), (x12 ** 4, Fraction(1, 2))]
    tries = 0
    while len(out) < count and tries < 40 * count:
        tries += 1
        a = MonomialRIdeal(((random_m_primary(rng, 3, extra=3), Fraction(1)),))
        try:
            q = a_lc_threshold(SMOOTH[3], None, a, 1)
        except NoSolutionError:
            continue
        if q.denominator <= 4 and q > 0:
            out.append((a, q))
    return out


def check_corollary(rng, count) -> CheckResult:
    res = CheckResult("corollary")
    skipped = 0
    for a, q in corollary_instances(rng, count):
        base = mld(SMOOTH[3], a ** q)
        half = mld(SMOOTH[3], _mp(a ** q, Fraction(1, 2))).value
        if base.value != 1 or half is None or half <= 0:
            skipped += 1
            continue
        for n in (2, 3, 4):
            if (n * q).denominator != 1:
                continue
            res.cases += 1
            s = Fraction(1, n)
            got = mld(SMOOTH[3], _mp(a ** q, s)).value
            if got != 1 - s:
                res.fail("value", a, q, n, got)
            for t in (Fraction(0), s / 2, s):
                b = _mp(a ** q, t)
                if a_log_discrepancy(SMOOTH[3], base.witness.w, b) != mld(SMOOTH[3], b).value:
                    res.fail("witness", a, q, t)
    res.stats["skipped"] = skipped
    return res


def _disguise(rng, w1: int, w2: int, f: WeightedHomPoly) -> WeightedHomPoly:
    """Apply a random weight-preserving change of coordinates and a random scale."""
    def nz():
        return Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.choice((1, 2, 3)))

    def rand_poly(deg, allow_x1, allow_x2):
        p = {}
        for e in all_monomials_of_degree((w1, w2, 1), deg):
            if e[0] and not allow_x1 or e[1] and not allow_x2:
                continue
            if rng.random() < 0.5:
                p[e] = Fraction(rng.randint(-3, 3))
        return p

    x2 = rand_poly(w2, w1 == w2, False)
    x2[(0, 1, 0)] = nz()
    x1 = rand_poly(w1, False, True)
    x1[(1, 0, 0)] = nz()
    g = substitute(f, {0: x1, 1: x2})
    c = nz()
    return WeightedHomPoly(g.weights, tuple((e, v * c) for e, v in g.terms))


def check_classifier(rng, count) -> CheckResult:
    res = CheckResult("classifier")
    tags = {HYPERSURFACE: 0, SATURATED: 0}
    while res.cases < count:
        w1 = rng.randint(1, 7)
        w2 = rng.randint(1, w1)
        pq = admissible_hypersurface_pairs(w1, w2)
        if pq and rng.random() < 0.6:
            p, q = rng.choice(pq)
            f, want = hypersurface_form(w1, w2, p, q), HYPERSURFACE
        else:
            f, want = saturated_form(w1, w2), SATURATED
        if w1 == w2 == 1:
            want = SATURATED
        g = _disguise(rng, w1, w2, f)
        res.cases += 1
        try:
            case = classify_curve((w1, w2), g)
        except MathError as exc:
            res.fail("error", (w1, w2), str(g), exc.code, exc.message)
            continue
        tags[case.tag] += 1
        if case.tag != want or not case.constraint_holds():
            res.fail("case", (w1, w2), str(g), case.tag, case.p, case.q)
        again = classify_curve((w1, w2), case.normal_form)
        if again.substitutions or again.tag != case.tag or again.scale != 1:
            res.fail("idempotence", (w1, w2), str(case.normal_form))
    # degree bound: anything above w1 + w2 is rejected
    for w1, w2 in ((2, 1), (3, 2), (4, 4)):
        res.cases += 1
        f = WeightedHomPoly.make((w1, w2, 1), {(1, 0, w2 + 1): 1, (0, 0, w1 + w2 + 1): 1})
        try:
            classify_curve((w1, w2), f)
            res.fail("degree_bound", (w1, w2))
        except NormalFormError:
            pass
    for w1 in range(1, 9):
        for w2 in range(1, w1 + 1):
            if math.gcd(w1, w2) == 1:
                res.cases += 1
                if not verify_saturated_lc(w1, w2):
                    res.fail("saturated_lc", (w1, w2))
    res.stats["tags"] = tags
    return res


def check_tower_lengths(rng, count, top: int = 12) -> CheckResult:
    res = CheckResult("tower_lengths")
    if regular_tower(SMOOTH[2], (3, 2)).vectors != [(1, 1), (2, 1), (3, 2)]:
        res.fail("example_3_2")
    for w1 in range(1, top + 1):
        for w2 in range(1, top + 1):
            if math.gcd(w1, w2) != 1:
                continue
            res.cases += 1
            n = regular_tower(SMOOTH[2], (w1, w2)).length
            if n != sum(continued_fraction(w1, w2)):
                res.fail("length", (w1, w2), n)
    return res


# --------------------------------------------------------------------------
# module-level invariants


def check_algebra(rng, count) -> CheckResult:
    res = CheckResult("algebra")
    for _ in range(count):
        n = rng.randint(2, 4)
        cons = [Constraint(tuple(rng.randint(-3, 5) for _ in range(n)), rng.choice(("<=", ">=")), rng.randint(-5, 10))
                for _ in range(rng.randint(1, 4))]
        cons.append(Constraint((1,) * n, "<=", 20))
        obj = tuple(rng.randint(-4, 4) for _ in range(n))
        r = minimize(obj, cons, nonneg=(True,) * n)
        res.cases += 1
        if r.optimal:
            if not all(c.holds(r.point) for c in cons) or sum(o * x for o, x in zip(obj, r.point)) != r.value:
                res.fail("lp_resubstitution", obj)
        d = rng.randint(2, 3)
        gens = [tuple(rng.randint(0, 4) for _ in range(d)) for _ in range(d)]
        try:
            cone = SimplicialCone(gens)
        except MathError:
            continue
        v = tuple(rng.randint(0, 6) for _ in range(d))
        m = cone_membership(cone, v)
        rec = tuple(sum((c * g[i] for c, g in zip(m.coefficients, gens)), Fraction(0)) for i in range(d))
        if rec != tuple(Fraction(x) for x in v):
            res.fail("cone_membership", gens, v)
        if any(v):
            p = primitive(v)
            if any(primitive(tuple(k * x for x in v)) != p for k in range(1, 11)):
                res.fail("primitive_scaling", v)
    return res


def check_ideals(rng, count) -> CheckResult:
    res = CheckResult("ideals")
    for a in corpus(rng, count):
        d = a.dim
        b = random_ideal(rng, d)
        w = _positive_primitive(rng, d)
        res.cases += 1
        if any(ord_along(tuple(k * x for x in w), a) != k * ord_along(w, a) for k in (2, 3)):
            res.fail("homogeneity", a, w)
        if ord_along(w, a * b) != ord_along(w, a) + ord_along(w, b):
            res.fail("products", a, b)
        for f, _ in a.factors:
            if MonomialIdeal(f.generators, d).generators != f.generators:
                res.fail("minimal_generators", f.generators)
    for p in range(1, 7):
        for q in range(1, 7):
            res.cases += 1
            nl = newton_polygon_lct([(p, 0), (0, q)]).value
            want = min(Fraction(1), Fraction(1, p) + Fraction(1, q))
            box = lc_threshold(SMOOTH[2], None, MonomialRIdeal.of([[p, 0], [0, q]]))
            if nl != want or min(box, Fraction(1)) != want:
                res.fail("newton_diagonal", p, q, nl, box)
    return res


def check_blowup(rng, count) -> CheckResult:
    res = CheckResult("blowup")
    for a in corpus(rng, max(1, count // 4)):
        d = a.dim
        w = _positive_primitive(rng, d)
        bl = weighted_blowup(SMOOTH[d], w)
        for tr in weak_transform(bl, a):
            res.cases += 1
            bad = crepancy_violations(tr, a, bound=3)
            if bad:
                res.fail("crepancy", a, w, bad[:2])
        fan = Fan(SMOOTH[d])
        fan.star_subdivide(w)
        for k in (1, 2, 3):
            _, face, _ = fan.minimal_cone_containing(tuple(k * x for x in w))
            if face != (w,):
                res.fail("parallel_centre", w, k, face)
    return res


def check_surface(rng, count, top: int = 8) -> CheckResult:
    res = CheckResult("surface")
    for w1 in range(1, top + 1):
        for w2 in range(1, top + 1):
            if math.gcd(w1, w2) != 1:
                continue
            a = tower_test_ideal(w1, w2)
            seq = blowup_sequence(a)
            res.cases += 1
            if seq.valuations != regular_tower(SMOOTH[2], (w1, w2)).vectors:
                res.fail("chart_path", (w1, w2), seq.valuations)
            (u1, u2), rep = computing_wblowup_search(a)
            if a_log_discrepancy(SMOOTH[2], seq.final, seq.ideal) != rep.value:
                res.fail("equivalence", (w1, w2))
            if len(seq.steps) > u1 + u2 - 1:
                res.fail("step_bound", (w1, w2), len(seq.steps))
    return res


CHECKS: dict[str, Callable] = {
    "anchors": check_anchors,
    "oracle": check_oracle,
    "thresholds": check_thresholds,
    "tower_gates": check_tower_gates,
    "convexity": check_convexity,
    "canonize": check_canonize,
    "half_dichotomy": check_half,
    "corollary": check_corollary,
    "classifier": check_classifier,
    "tower_lengths": check_tower_lengths,
    "algebra": check_algebra,
    "ideals": check_ideals,
    "blowup": check_blowup,
    "surface": check_surface,
}


def run_check(name: str, seed: int, count: int) -> CheckResult:
    # each check gets its own stream so selections do not shift one another
    rng = random.Random(f"{seed}:{name}")
    return CHECKS[name](rng, count)


def run_suite(seed: int = 0, count: int = 50, only=None) -> dict:
    names = list(CHECKS) if not only else list(only)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(", ".join(unknown))
    results = [run_check(n, seed, count) for n in names]
    return {
        "seed": seed,
        "count": count,
        "checks": [r.to_json() for r in results],
        "violations": sum(len(r.violations) for r in results),
        "passed": all(r.passed for r in results),
    }
