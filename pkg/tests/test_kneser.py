from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from kneserlab.chromatic import chromatic_number
from kneserlab.hypercore import CapExceeded, Hypergraph, mask_of, members
from kneserlab.kneser import (
    complete_k_subsets,
    find_monochromatic_ktt,
    is_stable,
    kneser_graph,
    kneser_power,
    schrijver_graph,
    stable_count,
    stable_subsets_hypergraph,
)

from oracles import disjoint_rsets


@pytest.mark.parametrize("n,k,m", [(4, 2, 6), (5, 2, 10), (6, 3, 20)])
def test_complete_k_subsets(n, k, m):
    H = complete_k_subsets(n, k)
    assert H.num_edges == m and H.is_uniform(k)


def test_stable_examples():
    H = stable_subsets_hypergraph(5, 2)
    assert H.edge_lists() == [[1, 3], [1, 4], [2, 4], [2, 5], [3, 5]]
    assert stable_subsets_hypergraph(6, 2).num_edges == 9 == 6 * 3 // 2
    assert stable_subsets_hypergraph(4, 2).edge_lists() == [[1, 3], [2, 4]]


@pytest.mark.parametrize("n,k", [(n, k) for n in range(3, 10) for k in (1, 2, 3) if n >= 2 * k])
def test_stable_filter_oracle(n, k):
    brute = [
        A for A in combinations(range(1, n + 1), k)
        if all(2 <= abs(i - j) <= n - 2 for i, j in combinations(A, 2))
    ]
    H = stable_subsets_hypergraph(n, k)
    assert sorted(map(tuple, H.edge_lists())) == sorted(brute)
    assert stable_count(n, k) == len(brute)
    assert all(is_stable(A, n) for A in brute)


def test_power_examples():
    P = kneser_graph(5, 2)
    assert P.num_vertices == 10 and len(P.edges) == 15
    S = schrijver_graph(5, 2)
    assert S.num_vertices == 5 and len(S.edges) == 5
    deg = [sum(1 for e in S.edges if e >> (v - 1) & 1) for v in range(1, 6)]
    assert deg == [2] * 5  # a 5-cycle
    assert len(kneser_power(complete_k_subsets(5, 2), 3).edges) == 0
    with pytest.raises(ValueError):
        kneser_power(complete_k_subsets(5, 2), 1)
    with pytest.raises(CapExceeded):
        kneser_power(complete_k_subsets(8, 2), 2, edge_cap=10)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(2, 3), st.data())
def test_power_matches_disjoint_rsets(n, r, data):
    masks = data.draw(st.sets(st.integers(1, (1 << n) - 1), max_size=9))
    H = Hypergraph(n, tuple(masks))
    K = kneser_power(H, r)
    expected = {mask_of([H.edges.index(b) + 1 for b in c]) for c in disjoint_rsets(H.edges, r)}
    assert set(K.edges) == expected
    assert K.hypergraph.is_uniform(r)


def test_ktt_examples():
    P = kneser_graph(5, 2)
    assert find_monochromatic_ktt(P, [1] * 10, 1) is not None
    col = chromatic_number(P.hypergraph).coloring
    assert find_monochromatic_ktt(P, col, 1) is None
    # t = 1 witness iff a monochromatic edge
    col2 = [1 + (i % 2) for i in range(10)]
    has_mono = any(len({col2[v - 1] for v in members(e)}) == 1 for e in P.edges)
    assert (find_monochromatic_ktt(P, col2, 1) is not None) == has_mono


def _ktt_brute(K, col, t):
    base, r = K.vertices, K.r
    N = K.num_vertices
    for s in set(col):
        vs = [i for i in range(N) if col[i] == s]
        groups = list(combinations(vs, t))

        def rec(chosen, start):
            if len(chosen) == r:
                return True
            for gi in range(start, len(groups)):
                g = groups[gi]
                if any(set(g) & set(c) for c in chosen):
                    continue
                if all(base[a] & base[b] == 0 for c in chosen for a in c for b in g):
                    if rec(chosen + [g], gi + 1):
                        return True
            return False

        if rec([], 0):
            return True
    return False


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2), st.data())
def test_ktt_matches_brute(t, data):
    K = kneser_graph(5, 2) if data.draw(st.booleans()) else kneser_graph(6, 2, 2)
    col = data.draw(st.lists(st.integers(1, 3), min_size=K.num_vertices, max_size=K.num_vertices))
    found = find_monochromatic_ktt(K, col, t)
    assert (found is not None) == _ktt_brute(K, col, t)
    if found:
        s, groups = found
        assert len(groups) == K.r and all(len(g) == t for g in groups)
        for g in groups:
            assert all(col[v - 1] == s for v in g)
        for g1, g2 in combinations(groups, 2):
            assert all(K.vertices[a - 1] & K.vertices[b - 1] == 0 for a in g1 for b in g2)


def test_stable_rejects_n_below_2k():
    with pytest.raises(ValueError):
        stable_subsets_hypergraph(5, 3)
