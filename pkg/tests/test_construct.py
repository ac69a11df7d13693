from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecaued import catalog
from ecaued.construct import (
    complement, constant_weight_from_bibd, debruijn_code, debruijn_size, extended_rs_code, juxtapose,
    mds_mirror_code, mirror_concatenate, near_factor_array, near_factorization_code, repeat,
    shifted_near_factorization_code, trivial_code,
)
from ecaued.core import Code, ParameterError, asymmetric_distance, count_above, min_asymmetric_distance
from ecaued.designs import hadamard_design, near_one_factorization, quadratic_residue_design


@st.composite
def codes(draw, q=None, a=None):
    q = q or draw(st.integers(2, 5))
    n = draw(st.integers(1, 6))
    a = a or draw(st.integers(2, 6))
    rows = draw(st.lists(st.tuples(*[st.integers(0, q - 1)] * n), min_size=a, max_size=a, unique=True))
    return Code(rows, q)


def test_trivial_code():
    c = trivial_code(5, 4, 3)
    assert c.n == 6 and min_asymmetric_distance(c).min_asymmetric == 3
    with pytest.raises(ParameterError):
        trivial_code(3, 4, 1)


def test_near_factorization_matches_factor_labels():
    # entry (i, j) = x exactly when point i sits in the pair labelled x of the factor missing j
    for k in range(2, 9):
        A = near_factor_array(k)
        for j, factor in enumerate(near_one_factorization(k)):
            for x, pair in enumerate(factor, start=1):
                for i in pair:
                    assert A[i, j] == x
            assert A[j, j] == 0


def test_small_factorization_examples_match_assets():
    assert near_factorization_code(2) == catalog.load_code("near_factor_k2")
    assert near_factorization_code(3) == catalog.load_code("near_factor_k3")
    assert shifted_near_factorization_code(3) == catalog.load_code("shifted_near_factor_k3")


def test_shifted_needs_odd_k():
    with pytest.raises(ParameterError):
        shifted_near_factorization_code(4)
    c = shifted_near_factorization_code(5)
    assert np.all(c.array[0] == 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_extended_rs_is_mds(q):
    c = extended_rs_code(q)
    assert (c.size, c.n) == (q * q, q + 1)
    assert min_asymmetric_distance(c).min_hamming == q
    assert min_asymmetric_distance(mds_mirror_code(q)).min_asymmetric == q


@settings(max_examples=60)
@given(codes())
def test_mirror_turns_hamming_into_asymmetric(c):
    m = mirror_concatenate(c)
    for i, j in combinations(range(c.size), 2):
        dh = int(np.count_nonzero(c.array[i] != c.array[j]))
        assert count_above(m.array[i], m.array[j]) == dh
        assert asymmetric_distance(m.array[i], m.array[j]) == dh


@settings(max_examples=60)
@given(st.data())
def test_juxtaposition_adds_directed_counts(data):
    c1 = data.draw(codes())
    c2 = data.draw(codes(q=c1.q, a=c1.size))
    perm = data.draw(st.permutations(range(c2.size)))
    j = juxtapose(c1, c2, perm)
    for a, b in combinations(range(c1.size), 2):
        assert count_above(j.array[a], j.array[b]) == (
            count_above(c1.array[a], c1.array[b]) + count_above(c2.array[perm[a]], c2.array[perm[b]]))
    d = min_asymmetric_distance(j).min_asymmetric
    assert d >= min_asymmetric_distance(c1).min_asymmetric + min_asymmetric_distance(c2).min_asymmetric


def test_juxtapose_errors():
    c = near_factorization_code(3)
    with pytest.raises(ParameterError):
        juxtapose(c, near_factorization_code(4))
    with pytest.raises(ParameterError):
        juxtapose(c, c, [0, 0, 1, 2, 3])
    assert repeat(c, 3).n == 15


def test_complement_preserves_distance():
    c = near_factorization_code(4)
    assert min_asymmetric_distance(complement(c)).min_asymmetric == 3


def coefficient_oracle(n, q):
    poly = np.array([1], dtype=object)
    for _ in range(n):
        poly = np.convolve(poly, np.ones(q, dtype=object))
    return int(poly[-(-n * (q - 1) // 2)])


@pytest.mark.parametrize("n,q", [(1, 2), (3, 3), (4, 3), (5, 2), (6, 3), (4, 4), (3, 5), (7, 2)])
def test_debruijn_middle_layer(n, q):
    c = debruijn_code(n, q)
    assert c.size == debruijn_size(n, q) == coefficient_oracle(n, q)
    if c.size > 1:
        assert min_asymmetric_distance(c).min_asymmetric >= 1


def test_debruijn_size_large():
    for n, q in [(20, 3), (12, 5), (30, 2)]:
        assert debruijn_size(n, q) == coefficient_oracle(n, q)


def test_bibd_codes():
    c = constant_weight_from_bibd(quadratic_residue_design(11))
    assert set(c.array.sum(axis=1).tolist()) == {5}
    assert min_asymmetric_distance(c).min_asymmetric == 3
    h = constant_weight_from_bibd(hadamard_design(7))
    assert (h.size, h.n) == (8, 14)
    assert min_asymmetric_distance(h).min_asymmetric == 4
