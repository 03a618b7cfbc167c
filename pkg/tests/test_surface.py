import math
from fractions import Fraction

import pytest

from toricmld.blowup import regular_tower
from toricmld.errors import DimensionError
from toricmld.ideals import MonomialRIdeal
from toricmld.surface import (
    blowup_sequence,
    computing_wblowup_search,
    curve_generic_mld,
    expand_witness,
    tower_test_ideal,
    transverse_ideal,
)
from toricmld.valuations import ToricGerm, a_log_discrepancy, log_discrepancy, mld

S2, S3 = ToricGerm.smooth(2), ToricGerm.smooth(3)
cusp = MonomialRIdeal.of([[2, 0], [0, 3]], "5/6")


def test_maximal_ideal():
    w, rep = computing_wblowup_search(MonomialRIdeal.of([[1, 0], [0, 1]]))
    assert w == (1, 1) and rep.value == 1
    seq = blowup_sequence(MonomialRIdeal.of([[1, 0], [0, 1]]))
    assert seq.valuations == [(1, 1)]


def test_cusp():
    w, rep = computing_wblowup_search(cusp)
    assert w == (3, 2) and rep.value == 0
    seq = blowup_sequence(cusp)
    assert seq.target == 0 and len(seq.steps) == 3
    assert [tuple(sorted(v)) for v in seq.valuations] == [tuple(sorted(v)) for v in regular_tower(S2, (3, 2)).vectors]


def test_small_order_is_computed_by_first_blowup():
    a = MonomialRIdeal.of([[1, 1], [0, 4]], "1/2")
    w, rep = computing_wblowup_search(a)
    assert w == (1, 1)
    assert len(blowup_sequence(a).steps) == 1


def test_non_lc_input_is_rescaled():
    seq = blowup_sequence(MonomialRIdeal.of([[1, 0]], 2))
    assert seq.rescale == Fraction(1, 2)
    assert seq.target == mld(S2, MonomialRIdeal.of([[1, 0]], 1)).value
    w, rep = computing_wblowup_search(MonomialRIdeal.of([[1, 0]], 2))
    assert rep.value is None and rep.witness_value < 0


@pytest.mark.parametrize("w1", range(1, 11))
def test_sequence_follows_regular_tower(w1):
    for w2 in range(1, 11):
        if math.gcd(w1, w2) != 1:
            continue
        a = tower_test_ideal(w1, w2)
        seq = blowup_sequence(a)
        tower = regular_tower(S2, (w1, w2)).vectors if (w1, w2) != (1, 1) else [(1, 1)]
        assert seq.valuations == [tuple(map(Fraction, v)) for v in tower]
        w, rep = computing_wblowup_search(a)
        assert a_log_discrepancy(S2, seq.final, seq.ideal) == rep.value
        assert len(seq.steps) <= log_discrepancy(S2, w) - 1


def test_curve_generic_point_uses_transverse_plane():
    a = MonomialRIdeal.of([[2, 0, 5], [0, 3, 1]], "5/6")
    t = transverse_ideal(a, (0, 1))
    assert t == cusp
    rep = curve_generic_mld(a, (0, 1))
    assert rep.value == 0
    assert expand_witness((3, 2), (0, 1)) == (3, 2, 0)
    assert mld(S3, a, centre=(0, 1)).value == rep.value


def test_plane_only():
    with pytest.raises(DimensionError):
        blowup_sequence(MonomialRIdeal.of([[1, 0, 0]]))
