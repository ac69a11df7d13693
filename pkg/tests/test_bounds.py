from collections import Counter
from fractions import Fraction
from math import ceil, comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ecaued.bounds import TRIVIAL, bvt_binary, gbt, gbt_plateau, gbt_value, lengths_add_up
from ecaued.core import ParameterError


def counting_bound(q, a, T):
    """Independent oracle: every ordered pair needs ``T`` positions where it goes down,
    and one column separates at most as many unordered pairs as a balanced column does."""
    counts = Counter(i % q for i in range(a))
    separated = comb(a, 2) - sum(comb(m, 2) for m in counts.values())
    return ceil(Fraction(a * (a - 1) * T, separated))


@given(st.integers(2, 12), st.integers(2, 60), st.integers(1, 30))
def test_matches_counting_oracle(q, a, T):
    assert gbt_value(q, a, T) == counting_bound(q, a, T)


@given(st.integers(2, 80), st.integers(1, 40))
def test_binary_bound_agrees(a, T):
    assert bvt_binary(a, T) == gbt_value(2, a, T)


@given(st.integers(2, 20), st.integers(1, 30), st.data())
def test_small_codes_are_trivial(q, T, data):
    a = data.draw(st.integers(2, q))
    rep = gbt(q, a, T)
    assert rep.value == 2 * T and rep.regime == TRIVIAL


def test_report_line_and_fraction():
    rep = gbt(3, 7, 8)
    assert rep.value == 21
    assert rep.line() == "GBT_3(7,8) = 21 [672/32]"
    assert rep.as_dict()["value"] == 21


def test_known_values():
    assert gbt_value(3, 10, 11) == 30
    assert [gbt_value(3, 12, T) for T in range(2, 9)] == [ceil(11 * T / 4) for T in range(2, 9)]
    for q in (2, 3, 4, 5, 7, 8, 9):
        assert gbt_value(q, q * q, q) == 2 * q + 2


def test_plateau():
    assert gbt_plateau(3, 25, 3) == 10
    assert gbt_plateau(3, 16, 2) == 7
    assert gbt_plateau(3, 12, 4) == 7
    assert gbt_plateau(3, 12, 5) == 7
    lo = gbt_plateau(3, 25, 3)
    assert all(gbt_value(3, a, 3) == 9 for a in range(lo, 26))
    assert gbt_value(3, lo - 1, 3) < 9


def test_lengths_add_up():
    assert lengths_add_up(3, 7, 8, 8)
    assert not lengths_add_up(3, 7, 1, 2)


@pytest.mark.parametrize("args", [(1, 3, 1), (3, 1, 1), (3, 3, 0)])
def test_rejects_bad_parameters(args):
    with pytest.raises(ParameterError):
        gbt(*args)


def test_monotone_in_size_and_distance():
    for q in (2, 3, 5):
        for T in range(1, 8):
            vals = [gbt_value(q, a, T) for a in range(2, 40)]
            assert vals == sorted(vals)
            assert all(gbt_value(q, a, T + 1) >= gbt_value(q, a, T) for a in range(2, 40))
