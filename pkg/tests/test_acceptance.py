"""Acceptance criteria 1-10, each at its stated tolerance.

Every comparison is exact rational equality. A summary line per criterion
is printed at the end of the pytest run.
"""

import math
import random
import time
from fractions import Fraction

from oracle import brute

from toricmld.blowup import different_on_exceptional, regular_tower, weighted_blowup
from toricmld.canonize import canonize, verify_algorithm_lemmas, verify_output
from toricmld.classify import HYPERSURFACE, half_lemma_check, verify_saturated_lc
from toricmld.suite import canonize_corpus, corpus, run_check
from toricmld.valuations import ToricGerm, log_discrepancy, mld

SEED = 20261015
S2, S3 = ToricGerm.smooth(2), ToricGerm.smooth(3)
LEMMAS = ("q_nondecreasing", "a_F_at_qi_le_1", "a_F_at_q_lt_1", "a_F_bound")


def euclid_sum(a, b):
    total = 0
    while b:
        total += a // b
        a, b = b, a % b
    return total


def test_criterion_01_exact_anchors(criterion):
    start = time.perf_counter()
    assert mld(S3).value == 3
    n = 0
    for r in range(2, 8):
        for b in range(1, r):
            if math.gcd(b, r) != 1:
                continue
            germ = ToricGerm(3, r, (b, r - b, 1))
            w = (Fraction(b, r), Fraction(r - b, r), Fraction(1, r))
            assert log_discrepancy(germ, w) == 1 + Fraction(1, r)
            n += 1
        for s in range(1, r):
            if math.gcd(r, s) == 1:
                pts = different_on_exceptional(weighted_blowup(S2, (r, s)))["points"]
                assert sorted(Fraction(p["coefficient"]) for p in pts) == sorted([1 - Fraction(1, r), 1 - Fraction(1, s)])
                n += 1
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"{n} identities, {elapsed:.2f} s"
    assert elapsed < 1


def test_criterion_02_oracle_equivalence(criterion):
    start = time.perf_counter()
    finite = negative = 0
    for a in corpus(random.Random(SEED), 800):
        germ = S2 if a.dim == 2 else S3
        rep = mld(germ, a)
        if rep.value is None:
            bound = 2 * max(4, math.ceil(max(rep.witness.w)))
            assert brute(germ, a, bound) < 0, a.describe()
            negative += 1
        else:
            assert rep.certified
            assert brute(germ, a, 2 * rep.search_box_bound) == rep.value, a.describe()
            finite += 1
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"{finite} finite + {negative} non-lc ideals, {elapsed:.1f} s"
    assert finite >= 200
    assert elapsed < 60


def _suite(criterion, name, count, minimum=1):
    start = time.perf_counter()
    res = run_check(name, SEED, count)
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"{res.cases} cases, {len(res.violations)} violations, {elapsed:.1f} s"
    assert res.cases >= minimum
    assert res.passed, res.to_json()
    return res


def test_criterion_03_threshold_consistency(criterion):
    _suite(criterion, "thresholds", 200, 200)


def test_criterion_04_tower_monotonicity(criterion):
    _suite(criterion, "tower_gates", 200, 200)


def test_criterion_05_convexity(criterion):
    _suite(criterion, "convexity", 200, 600)


def test_criterion_06_canonize(criterion):
    start = time.perf_counter()
    processes = {}
    for a, q in canonize_corpus(random.Random(SEED), 50):
        trace, _ = canonize(a, q, Fraction(1, 20))
        processes[trace.outcome.process] = processes.get(trace.outcome.process, 0) + 1
        lemmas = verify_algorithm_lemmas(trace)
        assert lemmas.ok, lemmas.violations
        assert all(lemmas.checks[k] for k in LEMMAS)
        out = verify_output(trace)
        if trace.outcome.process == "Process5":
            assert out["crepant_equal"] and out["output_canonical"]
            o = trace.outcome
            pair = o.ideal ** trace.q
            plain = mld(o.germ, pair)
            assert brute(o.germ, pair, 2 * plain.search_box_bound) == plain.value == o.mld_output >= 1
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"50 runs {dict(sorted(processes.items()))}, {elapsed:.1f} s"
    assert elapsed < 300


def test_criterion_07_half_dichotomy(criterion):
    res = _suite(criterion, "half_dichotomy", 100, 100)
    v = half_lemma_check(2, 1, Fraction(1, 2))
    assert v.forced_weights == (2, 1) and v.chain_holds
    criterion["detail"] += f", branches {res.stats['branches']}"


def test_criterion_08_corollary(criterion):
    _suite(criterion, "corollary", 100, 100)


def test_criterion_09_classifier(criterion):
    res = _suite(criterion, "classifier", 250)
    assert res.stats["tags"][HYPERSURFACE] >= 100
    pairs = [(w1, w2) for w1 in range(1, 9) for w2 in range(1, w1 + 1) if math.gcd(w1, w2) == 1]
    assert all(verify_saturated_lc(w1, w2) for w1, w2 in pairs)
    criterion["detail"] += f", {res.stats['tags'][HYPERSURFACE]} hypersurface normal forms, {len(pairs)} saturated pairs lc"


def test_criterion_10_regular_tower(criterion):
    assert regular_tower(S2, (3, 2)).vectors == [(1, 1), (2, 1), (3, 2)]
    pairs = [(a, b) for a in range(1, 13) for b in range(1, 13) if math.gcd(a, b) == 1]
    for a, b in pairs:
        assert regular_tower(S2, (a, b)).length == euclid_sum(a, b)
    criterion["detail"] = f"{len(pairs)} coprime pairs"
