import networkx as nx
import numpy as np
import pytest

from ecaued.construct import near_factorization_code
from ecaued.core import Code, ParameterError, VerificationError, min_asymmetric_distance
from ecaued.search import (
    OPTIMAL_BY_EXHAUSTION, OPTIMAL_MEETS_GBT, UPPER_BOUND_ONLY, SearchCapExceeded, SearchStats,
    all_words, certify, compatibility_graph, max_clique, max_code_size, min_length, shrink,
)


def nx_clique_number(q, n, T):
    W = all_words(q, n)
    G = nx.Graph()
    G.add_nodes_from(range(len(W)))
    for i in range(len(W)):
        for j in range(i + 1, len(W)):
            if min(int((W[i] > W[j]).sum()), int((W[j] > W[i]).sum())) >= T:
                G.add_edge(i, j)
    return len(nx.max_weight_clique(G, weight=None)[0])


@pytest.mark.parametrize("q,n,T", [(2, 4, 1), (2, 5, 2), (2, 6, 2), (3, 3, 1), (3, 4, 2), (4, 3, 1), (5, 2, 1)])
def test_matches_networkx(q, n, T):
    size, witness = max_code_size(q, n, T)
    assert size == nx_clique_number(q, n, T)
    assert witness.size == size and min_asymmetric_distance(witness).min_asymmetric >= T


@pytest.mark.parametrize("q,n,T", [(2, 6, 1), (3, 4, 1), (3, 5, 2), (4, 3, 1)])
def test_symmetry_breaking_keeps_the_maximum(q, n, T):
    assert max_code_size(q, n, T)[0] == max_code_size(q, n, T, symmetry=False)[0]


def test_known_sizes():
    assert max_code_size(3, 3, 1)[0] == 7
    assert max_code_size(3, 4, 1)[0] == 19
    assert max_code_size(3, 5, 1)[0] == 51
    assert max_code_size(2, 7, 1)[0] == 35


def test_graph_bits():
    W = all_words(2, 2)
    adj = compatibility_graph(W, 1)
    # 01 and 10 are the only pair with asymmetric distance 1
    assert adj[1] == 1 << 2 and adj[2] == 1 << 1 and adj[0] == 0


def test_plain_max_clique():
    # 5-cycle plus a chord: largest clique is a triangle
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]
    adj = [0] * 5
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    assert max_clique(adj) == [0, 1, 2]


def test_target_stops_early():
    stats_full, stats_target = SearchStats(), SearchStats()
    full, _ = max_code_size(3, 5, 1, stats=stats_full)
    hit, w = max_code_size(3, 5, 1, target=20, stats=stats_target)
    assert full == 51 and 20 <= hit <= 51
    assert stats_target.nodes <= stats_full.nodes


def test_cap(monkeypatch):
    with pytest.raises(SearchCapExceeded):
        max_code_size(3, 6, 1, cap=500)
    monkeypatch.setenv("ECAUED_SEARCH_CAP", "10")
    with pytest.raises(SearchCapExceeded):
        max_code_size(2, 4, 1)


def test_certify():
    c = near_factorization_code(4)
    cert = certify(c, 3)
    assert cert.verdict == OPTIMAL_MEETS_GBT and cert.lower_bound == 7
    assert "verdict: optimal_meets_gbt" in cert.text()
    assert cert.as_dict()["witness"] == c.array.tolist()
    with pytest.raises(VerificationError, match="words 0 and 1"):
        certify(c, 4)
    longer = Code(np.hstack([c.array, c.array[:, :1]]), 4)
    assert certify(longer, 3).verdict == UPPER_BOUND_ONLY


def test_min_length():
    cert = min_length(3, 4, 1)
    assert cert.n == 3 and cert.verdict == OPTIMAL_MEETS_GBT
    cert = min_length(3, 9, 1)
    assert cert.n == 4 and cert.verdict == OPTIMAL_BY_EXHAUSTION and cert.lower_bound == 3
    assert cert.witness.size == 9


def test_min_length_falls_back_to_constructions():
    cert = min_length(3, 7, 8, cap=3**5)
    assert cert.verdict == UPPER_BOUND_ONLY and cert.n == 21
    assert "budget" in cert.note


def test_shrink():
    c = near_factorization_code(4)
    assert shrink(c, 3).size == 3
    assert shrink(c, 2, rows=[6, 0]).array.tolist() == [c.array[6].tolist(), c.array[0].tolist()]
    with pytest.raises(ParameterError):
        shrink(c, 9)
    with pytest.raises(ParameterError):
        shrink(c, 2, rows=[1, 1])
