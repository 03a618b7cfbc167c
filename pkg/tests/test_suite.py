from fractions import Fraction

import pytest

from toricmld.suite import CHECKS, CheckResult, corpus, random_ideal, run_check, run_suite


@pytest.mark.parametrize("name", ["anchors", "algebra", "ideals", "blowup", "surface", "tower_lengths",
                                  "oracle", "thresholds", "tower_gates", "convexity", "classifier"])
def test_check_passes_at_small_count(name):
    res = run_check(name, 3, 6)
    assert res.passed, res.to_json()


def test_manifest_order_is_fixed():
    doc = run_suite(5, 2, ["tower_lengths", "anchors", "algebra"])
    assert [c["name"] for c in doc["checks"]] == ["tower_lengths", "anchors", "algebra"]
    assert doc["passed"] and doc["violations"] == 0
    assert list(CHECKS)[:3] == ["anchors", "oracle", "thresholds"]


def test_unknown_check():
    with pytest.raises(KeyError):
        run_suite(0, 1, ["anchors", "nope"])


def test_selection_does_not_shift_streams():
    alone = run_suite(9, 4, ["oracle"])["checks"][0]
    mixed = run_suite(9, 4, ["anchors", "oracle"])["checks"][1]
    assert alone == mixed


def test_check_result_contract():
    res = CheckResult("x")
    assert not res.passed  # no cases means no evidence
    res.cases = 1
    assert res.passed
    res.fail("bad", Fraction(1, 2), (Fraction(3), 4))
    doc = res.to_json()
    assert not doc["passed"] and doc["examples"] == [["bad", "1/2", ["3", 4]]]


def test_corpus_respects_generation_limits(rng):
    for a in corpus(rng, 60):
        assert a.dim in (2, 3) and len(a.factors) <= 3
        for f, e in a.factors:
            assert e.denominator <= 12
            assert all(0 <= x <= 6 for g in f.generators for x in g)
    assert random_ideal(rng, 2).dim == 2
