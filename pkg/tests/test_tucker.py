from __future__ import annotations

from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kneserlab.alternation import alt
from kneserlab.hypercore import CapExceeded, Hypergraph
from kneserlab.kneser import complete_k_subsets, stable_subsets_hypergraph
from kneserlab.tucker import (
    LemmaPreconditionError,
    TuckerMap,
    TupleWitness,
    WitnessError,
    build_lemmain_lambda,
    build_salt_lambda,
    check_properties,
    conclusion_holds,
    decode,
    encode,
    extract_tuple,
    find_tuple_bruteforce,
    popular_color,
    reduce_composite,
    solve_lemmain,
    solve_salt_lemma,
    validate_witness,
)


def _sign_map(X):
    nz = [x for x in X if x]
    return nz[0], 1


def _contained(A, B):
    return all(a == 0 or a == b for a, b in zip(A, B))


def _brute_chain(lam: TuckerMap) -> bool:
    vecs = [v for v in product(range(lam.p + 1), repeat=lam.n) if any(v)]
    if lam.p != 2:
        raise NotImplementedError
    for A in vecs:
        for B in vecs:
            if A != B and _contained(A, B):
                la, lb = lam(A), lam(B)
                if la[1] == lb[1] > lam.alpha and la[0] != lb[0]:
                    return True
    return False


def test_encode_roundtrip():
    for X in product(range(4), repeat=3):
        assert decode(encode(X, 3), 3, 3) == X


def test_minimal_instance():
    lam = TuckerMap.from_function(1, 2, 1, 0, _sign_map)
    rep = check_properties(lam)
    assert rep.equivariant and rep.monotone_low and rep.chain is None
    assert conclusion_holds(lam)


def test_conclusion_arithmetic():
    z = np.zeros(3 ** 5, dtype=np.int64)
    assert not conclusion_holds(TuckerMap(5, 2, 3, 1, z, z))
    z4 = np.zeros(4 ** 4, dtype=np.int64)
    assert conclusion_holds(TuckerMap(4, 3, 4, 4, z4, z4))


def test_non_equivariant_detected():
    lam = TuckerMap.from_function(2, 2, 1, 0, lambda X: (1, 1))
    rep = check_properties(lam, find_chain=False)
    assert not rep.equivariant and rep.equivariance_counterexample is not None


def test_check_caps():
    z = np.zeros(8 ** 1, dtype=np.int64)
    with pytest.raises(CapExceeded):
        check_properties(TuckerMap(1, 7, 1, 0, z, z))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.data())
def test_chain_search_matches_brute(n, data):
    # random equivariant maps for p = 2: choose values on one orbit representative
    m = data.draw(st.integers(1, 3))
    alpha = data.draw(st.integers(0, m))
    table = {}
    for X in product(range(3), repeat=n):
        if not any(X) or X in table:
            continue
        a = data.draw(st.integers(1, 2))
        b = data.draw(st.integers(1, m))
        neg = tuple(0 if x == 0 else 3 - x for x in X)
        table[X] = (a, b)
        table[neg] = (3 - a, b)
    lam = TuckerMap.from_function(n, 2, m, alpha, lambda X: table[X])
    rep = check_properties(lam)
    assert rep.equivariant
    assert (rep.chain is not None) == _brute_chain(lam)
    if rep.chain:
        A, B = rep.chain
        assert _contained(A, B) and lam(A)[1] == lam(B)[1] > alpha


def test_popular_color_ties_go_high():
    assert popular_color([1, 2, 2, 1]) == 2
    assert popular_color([3, 1, 1]) == 1


def test_lemmain_lambda_k42():
    H = complete_k_subsets(4, 2)
    lam = build_lemmain_lambda(H, None, [1] * 6, 2, 1, 2, 1)
    assert lam.lam1[1:].min() >= 1 and lam.lam2[1:].min() >= 1
    rep = check_properties(lam)
    assert rep.equivariant and rep.monotone_low and rep.chain is not None
    W = extract_tuple(lam, rep.chain)
    assert len(W.vertex_sets) == 2 and W.vertex_sets[0] & W.vertex_sets[1] == 0
    for X in product(range(3), repeat=4):
        if any(X) and alt(X) <= lam.alpha:
            assert lam(X)[1] == alt(X)


def test_lemmain_lambda_equivariance_sampled():
    H = complete_k_subsets(6, 2)
    rng = np.random.default_rng(1)
    col = [int(c) for c in rng.integers(1, 3, H.num_edges)]
    lam = build_lemmain_lambda(H, None, col, 2, 1, 6, 1)
    for _ in range(200):
        X = tuple(int(x) for x in rng.integers(0, 3, 6))
        if not any(X):
            continue
        neg = tuple(0 if x == 0 else 3 - x for x in X)
        a, b = lam(X), lam(neg)
        assert b[1] == a[1] and b[0] == 3 - a[0]


def test_precondition_rejected():
    H = complete_k_subsets(4, 2)
    with pytest.raises(LemmaPreconditionError):
        build_lemmain_lambda(H, None, [1, 2, 1, 2, 1, 2], 2, 1, 6, 1)


def test_extract_rejects_bad_chain():
    H = complete_k_subsets(4, 2)
    lam = build_lemmain_lambda(H, None, [1] * 6, 2, 1, 2, 1)
    chain = check_properties(lam).chain
    with pytest.raises(ValueError):
        extract_tuple(lam, (chain[0], chain[0]))


def test_petersen_all_two_colorings():
    H = complete_k_subsets(5, 2)
    for bits in range(1 << 10):
        col = [1 + (bits >> i & 1) for i in range(10)]
        if max(col) == 1:
            continue
        W = solve_lemmain(H, None, col, 2, 1, 3, 1)
        validate_witness(H, tuple(range(1, 6)), col, 2, 1, 1, W)


def test_validate_witness_negative():
    H = complete_k_subsets(4, 2)
    bad = TupleWitness((3, 6), (3, 6), 1, ((3,), (6,)))
    with pytest.raises(WitnessError):
        validate_witness(H, (1, 2, 3, 4), [1] * 6, 2, 1, 1, bad)


def test_salt_lambda_sg62():
    H = stable_subsets_hypergraph(6, 2)
    rng = np.random.default_rng(0)
    for _ in range(40):
        col = [int(c) for c in rng.integers(1, 4, H.num_edges)]
        W = solve_salt_lemma(H, None, col, 1, 4)
        validate_witness(H, tuple(range(1, 7)), col, 2, 1, 1, W)
        out = build_salt_lambda(H, None, col, 1, 4)
        if isinstance(out, TuckerMap):
            assert out.m == out.alpha + max(col) - 1


def test_reduce_composite_k82():
    H = complete_k_subsets(8, 2)
    W = reduce_composite(H, None, [1] * H.num_edges, 2, 2, 1, 7, 1)
    assert len(W.vertex_sets) == 4 and len(set(W.vertex_sets)) == 4
    union = 0
    for V in W.vertex_sets:
        assert union & V == 0
        union |= V
    with pytest.raises(ValueError):
        reduce_composite(H, None, [1] * H.num_edges, 1, 4, 1, 7, 1)


def test_bruteforce_agrees_with_construction():
    H = complete_k_subsets(6, 2)
    rng = np.random.default_rng(5)
    for _ in range(10):
        col = [int(c) for c in rng.integers(1, 3, H.num_edges)]
        assert find_tuple_bruteforce(H, None, col, 2, 1, 1) is not None
        solve_lemmain(H, None, col, 2, 1, 6, 1)


def test_bruteforce_none_when_impossible():
    H = Hypergraph.from_edges(3, [[1, 2], [2, 3]])
    assert find_tuple_bruteforce(H, None, [1, 2], 2, 1, 1) is None


def test_alpha_equals_m_has_no_high_levels():
    lam = TuckerMap.from_function(2, 2, 2, 2, lambda X: (next(x for x in X if x), alt(X)))
    rep = check_properties(lam)
    assert rep.equivariant and rep.monotone_low and rep.chain is None
    assert conclusion_holds(lam)
