"""Enumeration of small hypergraph families for exhaustive sweeps."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .hypercore import Hypergraph

__all__ = [
    "labeled_family_bits",
    "iso_class_representatives",
    "bits_to_hypergraph",
    "random_hypergraph",
]


def bits_to_hypergraph(n: int, bits: int) -> Hypergraph:
    """Inverse of :func:`kneserlab.alternation.hyperedge_bits`."""
    edges = []
    b = int(bits)
    while b:
        low = b & -b
        edges.append(low.bit_length())
        b ^= low
    return Hypergraph(n, tuple(edges))


def labeled_family_bits(n: int, max_edges: int) -> np.ndarray:
    """Every hypergraph on ``[n]`` with at most ``max_edges`` edges, encoded
    with one bit per nonempty subset (``n <= 6``)."""
    if n > 6:
        raise ValueError("encoding supports n <= 6")
    m = (1 << n) - 1
    out = []
    for size in range(max_edges + 1):
        for combo in combinations(range(m), size):
            b = 0
            for i in combo:
                b |= 1 << i
            out.append(b)
    return np.array(out, dtype=np.uint64)


@lru_cache(maxsize=None)
def _bit_permutations(n: int) -> np.ndarray:
    """``table[p, i]`` = image bit of subset bit ``i`` under vertex permutation p."""
    rows = []
    for perm in permutations(range(n)):
        row = []
        for M in range(1, 1 << n):
            img = 0
            for v in range(n):
                if (M >> v) & 1:
                    img |= 1 << perm[v]
            row.append(img - 1)
        rows.append(row)
    return np.array(rows, dtype=np.uint64)


def _permute_bits(bits: np.ndarray, target: np.ndarray) -> np.ndarray:
    out = np.zeros_like(bits)
    one = np.uint64(1)
    for i, t in enumerate(target):
        out |= ((bits >> np.uint64(i)) & one) << t
    return out


def iso_class_representatives(n: int, max_edges: int) -> list[Hypergraph]:
    """One hypergraph per isomorphism class on ``[n]`` with <= max_edges edges.

    The representative is the member with the smallest encoding.
    """
    bits = labeled_family_bits(n, max_edges)
    canon = bits.copy()
    for target in _bit_permutations(n):
        np.minimum(canon, _permute_bits(bits, target), out=canon)
    reps = np.unique(canon)
    return [bits_to_hypergraph(n, b) for b in reps]


def random_hypergraph(
    n: int, rng: np.random.Generator, max_edges: int | None = None, edge_prob: float = 0.3
) -> Hypergraph:
    """Edges drawn independently among nonempty subsets of size >= 2."""
    cand = [M for M in range(1, 1 << n) if M.bit_count() >= 2]
    keep = [M for M in cand if rng.random() < edge_prob]
    if max_edges is not None and len(keep) > max_edges:
        idx = rng.choice(len(keep), size=max_edges, replace=False)
        keep = [keep[i] for i in sorted(idx)]
    return Hypergraph(n, tuple(keep))
