import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecaued.core import (
    Code, ParameterError, Word, asymmetric_distance, count_above, format_code, hamming_distance,
    is_t_ec_aued, min_asymmetric_distance, min_hamming_distance, parse_code, read_code, write_code,
)


@st.composite
def word_pairs(draw, max_q=6, max_n=12):
    q = draw(st.integers(2, max_q))
    n = draw(st.integers(1, max_n))
    sym = st.lists(st.integers(0, q - 1), min_size=n, max_size=n)
    return q, draw(sym), draw(sym)


@st.composite
def codes(draw, max_q=5, max_n=7, max_a=8):
    q = draw(st.integers(2, max_q))
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.tuples(*[st.integers(0, q - 1)] * n), min_size=2, max_size=max_a, unique=True))
    return Code(rows, q)


def test_counts_by_hand():
    x, y = (2, 0, 1, 1), (0, 1, 1, 2)
    assert count_above(x, y) == 1
    assert count_above(y, x) == 2
    assert asymmetric_distance(x, y) == 1
    assert hamming_distance(x, y) == 3


@given(word_pairs())
def test_distance_identities(pair):
    q, x, y = pair
    nxy, nyx = count_above(x, y), count_above(y, x)
    naive_h = sum(a != b for a, b in zip(x, y))
    assert hamming_distance(x, y) == nxy + nyx == naive_h
    assert asymmetric_distance(x, y) == asymmetric_distance(y, x) == min(nxy, nyx)
    assert 2 * asymmetric_distance(x, y) <= hamming_distance(x, y)
    # complementing every symbol reverses the order in each position
    cx, cy = Word(tuple(x), q).complement(), Word(tuple(y), q).complement()
    assert count_above(cx, cy) == nyx


def test_word_validation():
    with pytest.raises(ParameterError):
        Word((0, 3), 3)
    with pytest.raises(ParameterError):
        asymmetric_distance(Word((0, 1), 2), Word((0, 1), 3))
    with pytest.raises(ParameterError):
        count_above((0, 1), (0, 1, 2))
    assert str(Word.of([0, 1, 2], 3)) == "012"


def test_code_rejects_duplicates_and_bad_symbols():
    with pytest.raises(ParameterError):
        Code([[0, 1], [0, 1]], 2)
    with pytest.raises(ParameterError):
        Code([[0, 2]], 2)
    with pytest.raises(ParameterError):
        Code([[0, 1], [1]], 2)


def test_code_is_read_only():
    c = Code([[0, 1], [1, 0]], 2)
    with pytest.raises(ValueError):
        c.array[0, 0] = 1
    assert [tuple(w) for w in c] == [(0, 1), (1, 0)]
    assert c[1] == Word((1, 0), 2)
    assert c.same_words(Code([[1, 0], [0, 1]], 2))


@settings(max_examples=60)
@given(codes())
def test_summary_matches_pairwise_loop(c):
    pairs = [(i, j) for i in range(c.size) for j in range(i + 1, c.size)]
    das = [asymmetric_distance(c.array[i], c.array[j]) for i, j in pairs]
    dh = [hamming_distance(c.array[i], c.array[j]) for i, j in pairs]
    s = min_asymmetric_distance(c)
    assert s.min_asymmetric == min(das)
    assert s.min_hamming == min(dh) == min_hamming_distance(c)
    assert s.arg_pair == pairs[das.index(min(das))]
    if s.min_asymmetric:
        assert is_t_ec_aued(c, s.min_asymmetric - 1)
    assert not is_t_ec_aued(c, s.min_asymmetric)


def test_singleton_and_errors():
    one = Code([[0, 1, 2]], 3)
    assert is_t_ec_aued(one, 5)
    with pytest.raises(ParameterError):
        min_asymmetric_distance(one)
    with pytest.raises(ParameterError):
        is_t_ec_aued(one, -1)


@settings(max_examples=40)
@given(codes(max_q=14))
def test_text_round_trip(c):
    assert parse_code(format_code(c, ["a comment"])) == c


def test_wide_alphabet_uses_spaces(tmp_path):
    c = Code([[0, 11], [12, 3]], 13)
    text = format_code(c)
    assert text.splitlines()[1] == "0 11"
    path = tmp_path / "c.code"
    write_code(c, path)
    assert read_code(path) == c


@pytest.mark.parametrize("text", ["", "3 2\n01\n", "3 2 2\n01\n", "3 2 1\n012\n", "2 2 1\n02\n"])
def test_parse_errors(text):
    with pytest.raises(ParameterError):
        parse_code(text)


def test_large_code_chunked_counts():
    rng = np.random.default_rng(0)
    rows = np.unique(rng.integers(0, 4, size=(600, 10)), axis=0)
    c = Code(rows, 4)
    d = c.directed_counts()
    i, j = 17, 402
    assert d[i, j] == count_above(rows[i], rows[j])
