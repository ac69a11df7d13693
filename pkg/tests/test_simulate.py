import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecaued import catalog
from ecaued.construct import mds_mirror_code, near_factorization_code
from ecaued.core import Code, ParameterError, VerificationError, Word
from ecaued.simulate import (
    CORRECTED, DETECTED, DECREASING, INCREASING, SYMMETRIC, Decoder, ErrorPattern, decode, decode_batch,
    exhaustive_increasing_check, exhaustive_symmetric_check, inject, run_trials, symmetric_patterns,
)


def test_error_pattern_validation():
    with pytest.raises(ParameterError):
        ErrorPattern(INCREASING, {0: -1})
    with pytest.raises(ParameterError):
        ErrorPattern(DECREASING, {0: 1})
    with pytest.raises(ParameterError):
        ErrorPattern(SYMMETRIC, {0: 0})
    with pytest.raises(ParameterError):
        ErrorPattern("burst", {0: 1})


def test_inject():
    w = Word((0, 1, 2), 3)
    assert inject(w, ErrorPattern(INCREASING, {0: 2, 1: 1})) == Word((2, 2, 2), 3)
    with pytest.raises(ParameterError):
        inject(w, ErrorPattern(INCREASING, {2: 1}))
    with pytest.raises(ParameterError):
        inject((0, 1), ErrorPattern(INCREASING, {0: 1}))


def test_decode_single_words():
    c = near_factorization_code(4)  # corrects 2 errors
    w = c.array[3].astype(int)
    r = w.copy()
    r[[0, 5]] = (r[[0, 5]] + 1) % 4
    out = decode(c, 2, r)
    assert out.status == CORRECTED and out.index == 3
    far = np.zeros(7, dtype=int)
    assert decode(c, 0, far).status == DETECTED
    with pytest.raises(ParameterError):
        decode(c, 2, [0, 1])


def test_decoder_requires_a_valid_code():
    with pytest.raises(VerificationError):
        Decoder(near_factorization_code(4), 3)


def test_batch_matches_single():
    c = mds_mirror_code(3)
    rng = np.random.default_rng(5)
    received = rng.integers(0, 3, size=(300, c.n))
    got = decode_batch(c, 2, received)
    for r, g in zip(received, got):
        out = decode(c, 2, r)
        assert (g if g >= 0 else None) == out.index


def test_symmetric_patterns_enumerate_the_ball():
    w = np.array([0, 1, 2, 0])
    rows = np.vstack(list(symmetric_patterns(4, 3, w, 2)))
    assert len(rows) == 4 * 2 + 6 * 4
    assert len({tuple(r) for r in rows}) == len(rows)
    d = np.count_nonzero(rows != w, axis=1)
    assert set(d.tolist()) == {1, 2}


@pytest.mark.parametrize("name,t", [("ternary_12x11", 3), ("ternary_25x9", 2)])
def test_packed_path_agrees_with_arrays(name, t):
    c = catalog.load_code(name)
    fast = exhaustive_symmetric_check(c, t, [0, 4], packed=True)
    slow = exhaustive_symmetric_check(c, t, [0, 4], packed=False)
    assert fast.as_dict() == slow.as_dict()
    assert fast.miscorrected == 0 and fast.detected == 0


def test_exhaustive_increasing():
    c = near_factorization_code(3)
    stats = exhaustive_increasing_check(c, 1, 0, max_magnitude=2)
    assert stats.miscorrected == 0 and stats.trials > 0


def test_run_trials_deterministic_and_safe():
    c = catalog.load_code("ternary_12x14")
    a = run_trials(c, 4, 5000, seed=9)
    b = run_trials(c, 4, 5000, seed=9)
    assert a.as_dict() == b.as_dict()
    assert a.miscorrected == 0
    assert a.by_kind[SYMMETRIC][CORRECTED] == sum(a.by_kind[SYMMETRIC].values())
    assert run_trials(c, 4, 5000, seed=10).as_dict() != a.as_dict()
    assert "miscorrected" in a.table()
    with pytest.raises(ParameterError):
        run_trials(c, 4, 10, seed=0, mix=(0, 0))


def test_unreachable_error_counts_are_skipped():
    # length 2 cannot take 3 errors in either direction
    c = Code([[0, 2], [2, 0]], 3)
    stats = run_trials(c, 0, 200, seed=1, mix=(0, 1), uni_errors=(3, 3))
    assert stats.trials == 0 and stats.skipped == 200


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["ternary_16x6", "ternary_12x11", "ternary_12x14"]))
def test_unidirectional_errors_are_never_miscorrected(seed, name):
    c = catalog.load_code(name)
    t = catalog.manifest()[name]["T"] - 1
    stats = run_trials(c, t, 2000, seed=seed, mix=(0, 1))
    assert stats.miscorrected == 0
