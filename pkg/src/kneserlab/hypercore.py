"""Hypergraphs on ``[n]`` stored as sorted tuples of vertex bitmasks.

Vertex ``v`` (1-based) is bit ``v - 1``.  Edge tuples are always kept in the
canonical set order: by cardinality, then by the integer value of the mask
(colex).  Every module orders subsets this way, so "the last q edges" means the
same thing everywhere.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "Hypergraph",
    "set_key",
    "mask_of",
    "members",
    "identity_ordering",
    "validate_ordering",
    "induced_sub",
    "cross_partite_sub",
    "is_proper",
    "find_proper_coloring",
    "is_r_colorable",
    "colorability_defect",
    "ColoringBudgetExceeded",
    "CapExceeded",
]


class CapExceeded(ValueError):
    """An input is larger than a configured enumeration or size cap."""


class ColoringBudgetExceeded(RuntimeError):
    """Raised when a backtracking search exhausts its node or time budget."""


def set_key(mask: int) -> tuple[int, int]:
    """Sort key of the canonical size-refining total order on subsets."""
    return (mask.bit_count(), mask)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        if v < 1:
            raise ValueError(f"vertex {v} is not a positive integer")
        m |= 1 << (v - 1)
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class Hypergraph:
    """A finite hypergraph on vertices ``1..n``.

    ``edges`` holds bitmasks; construction sorts them into canonical order and
    rejects empty, duplicate or out-of-range edges.
    """

    n: int
    edges: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        full = (1 << self.n) - 1
        edges = tuple(sorted(self.edges, key=set_key))
        for e in edges:
            if e <= 0:
                raise ValueError("edges must be nonempty")
            if e & ~full:
                raise ValueError(f"edge {members(e)} leaves [1..{self.n}]")
        if len(set(edges)) != len(edges):
            raise ValueError("duplicate edge")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        masks = []
        for e in edges:
            e = list(e)
            if any(v < 1 or v > n for v in e):
                raise ValueError(f"edge {e} leaves [1..{n}]")
            if len(set(e)) != len(e):
                raise ValueError(f"edge {e} repeats a vertex")
            masks.append(mask_of(e))
        return cls(n, tuple(masks))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edge_lists(self) -> list[list[int]]:
        return [list(members(e)) for e in self.edges]

    def uniformity(self) -> int | None:
        """Common edge size, or ``None`` for mixed or edgeless hypergraphs."""
        sizes = {e.bit_count() for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    def is_uniform(self, r: int) -> bool:
        return all(e.bit_count() == r for e in self.edges)

    def induced_count(self, mask: int) -> int:
        """Number of edges contained in the vertex set ``mask``."""
        return sum(1 for e in self.edges if e & ~mask == 0)

    def induced_edges(self, mask: int) -> list[int]:
        """Edges contained in ``mask``, in canonical order."""
        return [e for e in self.edges if e & ~mask == 0]

    # -- JSON interchange: {"n": int, "edges": [[...], ...]}, 1-based --------

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": self.edge_lists()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Hypergraph":
        if not isinstance(data, dict) or "n" not in data or "edges" not in data:
            raise ValueError('hypergraph JSON needs keys "n" and "edges"')
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValueError('"n" must be an integer')
        edges = data["edges"]
        for e in edges:
            if not isinstance(e, list) or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in e
            ):
                raise ValueError("each edge must be a list of integers")
        return cls.from_edges(n, edges)

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        return cls.from_dict(json.loads(text))

    def canonical_hash(self) -> str:
        payload = json.dumps([self.n, list(self.edges)]).encode()
        return hashlib.sha256(payload).hexdigest()


def identity_ordering(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def validate_ordering(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    """Check that ``sigma`` (position j -> vertex sigma[j-1]) is a bijection."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"ordering {sigma} is not a permutation of 1..{n}")
    return sigma


def _compress(mask: int, relabel: dict[int, int]) -> int:
    out = 0
    for v in members(mask):
        out |= 1 << (relabel[v] - 1)
    return out


def induced_sub(H: Hypergraph, S: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """Induced subhypergraph ``H[S]`` relabeled to ``1..|S|``.

    Returns the subhypergraph and the map old vertex -> new vertex.  Relabeling
    keeps the original increasing order.
    """
    verts = sorted(set(S))
    if verts and (verts[0] < 1 or verts[-1] > H.n):
        raise ValueError("S must be a subset of the vertex set")
    relabel = {v: i + 1 for i, v in enumerate(verts)}
    smask = mask_of(verts)
    edges = tuple(_compress(e, relabel) for e in H.edges if e & ~smask == 0)
    return Hypergraph(len(verts), edges), relabel


def cross_partite_sub(
    H: Hypergraph, parts: Sequence[Iterable[int]]
) -> tuple[Hypergraph, dict[int, int]]:
    """``H[V_1, ..., V_r]``: edges inside the union meeting every part once."""
    pmasks = [mask_of(p) for p in parts]
    seen = 0
    for p in pmasks:
        if p & seen:
            raise ValueError("parts must be pairwise disjoint")
        seen |= p
    if seen & ~H.full_mask:
        raise ValueError("parts must lie in the vertex set")
    verts = members(seen)
    relabel = {v: i + 1 for i, v in enumerate(verts)}
    keep = [
        e
        for e in H.edges
        if e & ~seen == 0 and all((e & p).bit_count() == 1 for p in pmasks)
    ]
    sub = Hypergraph(len(verts), tuple(_compress(e, relabel) for e in keep))
    return sub, relabel


def is_proper(H: Hypergraph, coloring: Sequence[int]) -> bool:
    """True iff no edge of ``H`` is monochromatic under ``coloring``.

    ``coloring[v - 1]`` is the color of vertex ``v``.  A singleton edge is
    always monochromatic.
    """
    if len(coloring) != H.n:
        raise ValueError("coloring must assign a color to every vertex")
    for e in H.edges:
        cols = {coloring[v - 1] for v in members(e)}
        if len(cols) == 1:
            return False
    return True


class _Search:
    """Backtracking k-coloring with DSATUR vertex choice.

    Colors are introduced in increasing order, which removes the k! color
    permutations (in particular the first vertex always gets color 1).
    Graphs get incremental per-vertex color counts; general hypergraphs test
    forbidden colors on demand.
    """

    def __init__(
        self,
        n: int,
        edges: Sequence[int],
        k: int,
        max_nodes: int | None = None,
        deadline: float | None = None,
    ):
        self.n = n
        self.k = k
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.nodes = 0
        self.graph = all(e.bit_count() == 2 for e in edges)
        self.partners: list[list[int]] = [[] for _ in range(n)]
        self.adj = [0] * n
        for e in edges:
            for v in members(e):
                rest = e & ~(1 << (v - 1))
                self.partners[v - 1].append(rest)
                self.adj[v - 1] |= rest
        self.nbrs = [[u - 1 for u in members(a)] for a in self.adj]
        self.deg = [len(p) for p in self.partners]

    def run(self) -> list[int] | None:
        n, k = self.n, self.k
        if n == 0:
            return []
        if k < 1:
            return None
        self.color = [0] * n
        self.cls = [0] * (k + 1)
        self.unc = set(range(n))
        if self.graph:
            self.cnt = [[0] * (k + 1) for _ in range(n)]
            self.sat = [0] * n
            ok = self._rec_graph(0)
        else:
            ok = self._rec_hyper(0)
        return list(self.color) if ok else None

    def _tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise ColoringBudgetExceeded(f"more than {self.max_nodes} search nodes")
        if self.deadline is not None and not self.nodes & 1023:
            if time.monotonic() > self.deadline:
                raise ColoringBudgetExceeded("time budget exhausted")

    def _rec_graph(self, used: int) -> bool:
        self._tick()
        if not self.unc:
            return True
        sat, deg = self.sat, self.deg
        v = max(self.unc, key=lambda u: (sat[u], deg[u], -u))
        if sat[v] >= self.k:
            return False
        cv = self.cnt[v]
        for s in range(1, min(used + 1, self.k) + 1):
            if cv[s]:
                continue
            self.color[v] = s
            self.unc.discard(v)
            for u in self.nbrs[v]:
                c = self.cnt[u]
                if c[s] == 0:
                    sat[u] += 1
                c[s] += 1
            if self._rec_graph(max(used, s)):
                return True
            for u in self.nbrs[v]:
                c = self.cnt[u]
                c[s] -= 1
                if c[s] == 0:
                    sat[u] -= 1
            self.color[v] = 0
            self.unc.add(v)
        return False

    def _allowed(self, v: int, used: int) -> list[int]:
        cls = self.cls
        out = []
        for s in range(1, min(used + 1, self.k) + 1):
            cs = cls[s]
            if not any(p & ~cs == 0 for p in self.partners[v]):
                out.append(s)
        return out

    def _rec_hyper(self, used: int) -> bool:
        self._tick()
        if not self.unc:
            return True
        best = None
        for u in sorted(self.unc):
            dom = self._allowed(u, used)
            key = (len(dom), -self.deg[u])
            if best is None or key < best[0]:
                best = (key, u, dom)
                if not dom:
                    return False
        _, v, dom = best
        bit = 1 << v
        for s in dom:
            self.color[v] = s
            self.cls[s] |= bit
            self.unc.discard(v)
            if self._rec_hyper(max(used, s)):
                return True
            self.cls[s] &= ~bit
            self.color[v] = 0
            self.unc.add(v)
        return False


def find_proper_coloring(
    H: Hypergraph,
    k: int,
    max_nodes: int | None = None,
    deadline: float | None = None,
) -> list[int] | None:
    """A proper coloring with colors ``1..k`` or ``None`` if none exists.

    Raises :class:`ColoringBudgetExceeded` when ``max_nodes`` search nodes or
    the ``time.monotonic()`` deadline are exceeded.
    """
    if any(e.bit_count() == 1 for e in H.edges):
        return None
    return _Search(H.n, H.edges, k, max_nodes, deadline).run()


def is_r_colorable(H: Hypergraph, r: int) -> bool:
    if r < 1:
        raise ValueError("r must be positive")
    return find_proper_coloring(H, r) is not None


def colorability_defect(H: Hypergraph, r: int) -> int:
    """Minimum number of vertices whose deletion leaves an r-colorable rest."""
    if r < 1:
        raise ValueError("r must be positive")
    verts = range(1, H.n + 1)
    for size in range(H.n + 1):
        for W in combinations(verts, size):
            wmask = mask_of(W)
            rest = [v for v in verts if not (wmask >> (v - 1)) & 1]
            sub, _ = induced_sub(H, rest)
            if is_r_colorable(sub, r):
                return size
    return H.n  # unreachable: the empty hypergraph is colorable
