"""Kneser powers KG^r(H), complete and stable k-subset systems, and K^r_{t..t} search."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from .hypercore import CapExceeded, Hypergraph, mask_of, members

__all__ = [
    "KneserPower",
    "complete_k_subsets",
    "stable_subsets_hypergraph",
    "is_stable",
    "stable_count",
    "kneser_power",
    "kneser_graph",
    "schrijver_graph",
    "find_monochromatic_ktt",
    "DEFAULT_EDGE_CAP",
]

DEFAULT_EDGE_CAP = 10**7


def complete_k_subsets(n: int, k: int) -> Hypergraph:
    """``K_n^k``: all k-subsets of ``[n]``."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return Hypergraph(n, tuple(mask_of(c) for c in combinations(range(1, n + 1), k)))


def is_stable(A: Sequence[int], n: int) -> bool:
    """Every pair i != j in A has 2 <= |i - j| <= n - 2."""
    return all(2 <= abs(i - j) <= n - 2 for i, j in combinations(A, 2))


def stable_count(n: int, k: int) -> int:
    """Closed form for the number of stable k-subsets of the n-cycle."""
    if k == 0:
        return 1
    return n * comb(n - k, k) // (n - k)


def stable_subsets_hypergraph(n: int, k: int) -> Hypergraph:
    if not n >= 2 * k >= 2:
        raise ValueError(f"need n >= 2k >= 2, got n={n}, k={k}")
    edges = tuple(
        mask_of(c) for c in combinations(range(1, n + 1), k) if is_stable(c, n)
    )
    return Hypergraph(n, edges)


@dataclass(frozen=True)
class KneserPower:
    """``KG^r(base)``.

    Vertex ``i`` (1-based) of :attr:`hypergraph` is ``base.edges[i - 1]``; the
    base edge tuple is already in canonical order so indices are stable.
    """

    base: Hypergraph
    r: int
    hypergraph: Hypergraph

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.base.edges

    @property
    def num_vertices(self) -> int:
        return self.hypergraph.n

    @property
    def edges(self) -> tuple[int, ...]:
        return self.hypergraph.edges

    def edge_members(self, e: int) -> tuple[int, ...]:
        """Power-vertex indices (1-based) of a power edge mask."""
        return members(e)

    def sidecar(self) -> dict:
        return {
            "r": self.r,
            "base": self.base.to_dict(),
            "vertices": [list(members(b)) for b in self.base.edges],
        }

    def to_json(self) -> str:
        d = self.hypergraph.to_dict()
        d["kneser"] = self.sidecar()
        return json.dumps(d)


def kneser_power(H: Hypergraph, r: int, edge_cap: int = DEFAULT_EDGE_CAP) -> KneserPower:
    """All r-sets of pairwise disjoint edges of ``H``."""
    if r < 2:
        raise ValueError("r must be at least 2")
    base = H.edges
    m = len(base)
    out: list[int] = []

    def extend(start: int, used: int, chosen: int, depth: int):
        if depth == r:
            out.append(chosen)
            if len(out) > edge_cap:
                raise CapExceeded(f"Kneser power exceeds {edge_cap} edges")
            return
        for j in range(start, m - (r - depth) + 1):
            if base[j] & used == 0:
                extend(j + 1, used | base[j], chosen | (1 << j), depth + 1)

    extend(0, 0, 0, 0)
    return KneserPower(H, r, Hypergraph(m, tuple(out)))


def kneser_graph(n: int, k: int, r: int = 2) -> KneserPower:
    """``KG^r_{n,k}``."""
    return kneser_power(complete_k_subsets(n, k), r)


def schrijver_graph(n: int, k: int) -> KneserPower:
    """``SG_{n,k}``: the Kneser graph on stable k-subsets."""
    return kneser_power(stable_subsets_hypergraph(n, k), 2)


def find_monochromatic_ktt(
    K: KneserPower, coloring: Sequence[int], t: int
) -> tuple[int, tuple[tuple[int, ...], ...]] | None:
    """Search for a monochromatic complete r-partite ``K^r_{t,...,t}`` in ``K``.

    Returns ``(color, (V_1, ..., V_r))`` with 1-based power-vertex indices, or
    ``None``.  Groups are pairwise "cross-disjoint": any two base edges taken
    from different groups are disjoint, so every transversal is a power edge.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if len(coloring) != K.num_vertices:
        raise ValueError("coloring must cover every power vertex")
    base = K.vertices
    r = K.r
    for s in sorted(set(coloring)):
        verts = [i for i, c in enumerate(coloring) if c == s]
        found = _ktt_in(verts, base, r, t)
        if found is not None:
            return s, tuple(tuple(v + 1 for v in g) for g in found)
    return None


def _ktt_in(verts: list[int], base: Sequence[int], r: int, t: int):
    if len(verts) < r * t:
        return None
    groups: list[tuple[int, ...]] = []

    def rec(cand: list[int], lo: int) -> bool:
        if len(groups) == r:
            return True
        need = (r - len(groups)) * t
        if len(cand) < need:
            return False
        # groups are unordered: the first vertex of each group increases
        for a, first in enumerate(cand):
            if first <= lo:
                continue
            rest = cand[a + 1 :]
            for tail in combinations(rest, t - 1):
                g = (first,) + tail
                union = 0
                for v in g:
                    union |= base[v]
                nxt = [u for u in cand if base[u] & union == 0]
                groups.append(g)
                if rec(nxt, first):
                    return True
                groups.pop()
        return False

    return list(groups) if rec(verts, -1) else None
