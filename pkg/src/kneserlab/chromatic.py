"""Exact chromatic numbers and the lower bounds for Kneser-type hypergraphs."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .alternation import alt_r_q, alt_r_sigma_q, salt_q, salt_sigma_q
from .hypercore import (
    CapExceeded,
    ColoringBudgetExceeded,
    Hypergraph,
    colorability_defect,
    find_proper_coloring,
    identity_ordering,
    members,
)
from .kneser import KneserPower, _ktt_in

__all__ = [
    "ChromaticResult",
    "BoundReport",
    "chromatic_number",
    "afl_formula",
    "dolnikov_kriz_bound",
    "alt_bound",
    "salt_bound",
    "ktt_free_bound",
    "kneser_ktt_parameters",
    "ktt_free_chromatic_exact",
    "all_bounds",
]

DEFAULT_MAX_VERTICES = 64
KTT_MAX_VERTICES = 12


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class ChromaticResult:
    """Outcome of an exact coloring computation.

    ``value`` is ``None`` when the budget ran out; ``lower``/``upper`` then
    bracket the true value.
    """

    value: int | None
    lower: int
    upper: int
    coloring: tuple[int, ...] | None = None

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "coloring": list(self.coloring) if self.coloring is not None else None,
        }


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: int
    certificate: dict = field(default_factory=dict)
    exact: bool = True

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "certificate": self.certificate,
            "exact": self.exact,
        }


def _greedy_coloring(H: Hypergraph) -> list[int]:
    """Sequential greedy in decreasing degree order."""
    n = H.n
    deg = [0] * n
    partners: list[list[int]] = [[] for _ in range(n)]
    for e in H.edges:
        for v in members(e):
            deg[v - 1] += 1
            partners[v - 1].append(e & ~(1 << (v - 1)))
    color = [0] * n
    cls: dict[int, int] = {}
    for v in sorted(range(n), key=lambda u: (-deg[u], u)):
        s = 1
        while any(p & ~cls.get(s, 0) == 0 for p in partners[v]):
            s += 1
        color[v] = s
        cls[s] = cls.get(s, 0) | (1 << v)
    return color


def _greedy_clique(H: Hypergraph) -> int:
    """Size of a greedily grown clique (graphs only)."""
    n = H.n
    adj = [0] * n
    for e in H.edges:
        u, v = members(e)
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    best = 1 if n else 0
    for start in range(n):
        cand = adj[start]
        size = 1
        while cand:
            # pick the candidate with most neighbours inside cand
            v = max(members(cand), key=lambda u: ((adj[u - 1] & cand).bit_count(), -u))
            size += 1
            cand &= adj[v - 1]
        best = max(best, size)
    return best


def chromatic_number(
    H: Hypergraph,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    budget_ms: float | None = None,
    max_nodes: int | None = None,
) -> ChromaticResult:
    """Exact chromatic number (no monochromatic edge).

    Binary search between a lower bound (2 when an edge exists, the greedy
    clique size for graphs) and a greedy coloring, each probe decided by
    backtracking.  If the budget runs out the result carries ``value=None``
    with the current bracket.
    """
    if H.n > max_vertices:
        raise CapExceeded(f"{H.n} vertices exceed the cap of {max_vertices}")
    if any(e.bit_count() == 1 for e in H.edges):
        raise ValueError("a hypergraph with a singleton edge has no proper coloring")
    if H.n == 0:
        return ChromaticResult(0, 0, 0, ())
    if not H.edges:
        return ChromaticResult(1, 1, 1, (1,) * H.n)
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
    best = _greedy_coloring(H)
    hi = max(best)
    lo = 2
    if H.is_uniform(2):
        lo = max(lo, _greedy_clique(H))
    try:
        while lo < hi:
            mid = (lo + hi) // 2
            col = find_proper_coloring(H, mid, max_nodes=max_nodes, deadline=deadline)
            if col is None:
                lo = mid + 1
            else:
                best = col
                hi = max(col)
    except ColoringBudgetExceeded:
        return ChromaticResult(None, lo, hi, tuple(best))
    return ChromaticResult(hi, hi, hi, tuple(best))


def afl_formula(n: int, k: int, r: int) -> int:
    """Chromatic number of ``KG^r_{n,k}``: ``ceil((n - r(k-1)) / (r-1))``."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if n < r * k:
        raise ValueError(f"formula needs n >= rk, got n={n}, r={r}, k={k}")
    return _ceil_div(n - r * (k - 1), r - 1)


def dolnikov_kriz_bound(H: Hypergraph, r: int) -> BoundReport:
    if r < 2:
        raise ValueError("r must be at least 2")
    cd = colorability_defect(H, r)
    return BoundReport("dolnikov_kriz", _ceil_div(cd, r - 1), {"cd_r": cd, "r": r})


def _ordering_value(H, sigma_mode, exact_fn, sigma_fn, seed):
    """Resolve ``sigma_mode`` to ``(value, sigma, exact)``."""
    if sigma_mode in ("exact", "heuristic"):
        val, sigma = exact_fn(sigma_mode, seed)
        return val, sigma, sigma_mode == "exact"
    sigma = identity_ordering(H.n) if sigma_mode in (None, "identity") else tuple(sigma_mode)
    return sigma_fn(sigma), sigma, False


def alt_bound(
    H: Hypergraph, r: int, sigma_mode="exact", seed: int = 0
) -> BoundReport:
    """``ceil((n - alt_r(H, 1)) / (r - 1))``.

    ``sigma_mode`` is ``"exact"``, ``"heuristic"``, ``"identity"`` or an
    explicit ordering; every ordering certifies a valid bound.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    a, sigma, exact = _ordering_value(
        H,
        sigma_mode,
        lambda mode, sd: alt_r_q(H, r, 1, mode=mode, seed=sd),
        lambda s: alt_r_sigma_q(H, s, r, 1),
        seed,
    )
    return BoundReport(
        "alt", _ceil_div(H.n - a, r - 1), {"alt": a, "sigma": list(sigma), "r": r}, exact
    )


def salt_bound(H: Hypergraph, sigma_mode="exact", seed: int = 0) -> BoundReport:
    """``n - salt(H) + 1`` for ``KG(H)``."""
    a, sigma, exact = _ordering_value(
        H,
        sigma_mode,
        lambda mode, sd: salt_q(H, 1, mode=mode, seed=sd),
        lambda s: salt_sigma_q(H, s, 1),
        seed,
    )
    return BoundReport("salt", H.n - a + 1, {"salt": a, "sigma": list(sigma)}, exact)


def ktt_free_bound(
    H: Hypergraph, r: int, sigma: Sequence[int] | None, q: int, t: int, d: int
) -> BoundReport:
    """Colors needed to avoid a monochromatic ``K^r_{t..t}`` in ``KG^r(H)``:
    ``min(ceil((n - alt_r(H, sigma, q)) / (r-1)), d)``."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if q < (d - 1) * (t - 1) + 1:
        raise ValueError(f"need q >= (d-1)(t-1)+1 = {(d - 1) * (t - 1) + 1}, got q={q}")
    sigma = identity_ordering(H.n) if sigma is None else tuple(sigma)
    a = alt_r_sigma_q(H, sigma, r, q)
    value = min(_ceil_div(H.n - a, r - 1), d)
    cert = {"alt": a, "sigma": list(sigma), "r": r, "q": q, "t": t, "d": d}
    return BoundReport("ktt_free", value, cert, False)


def kneser_ktt_parameters(n: int, k: int, r: int, t: int) -> tuple[int, int, int]:
    """Smallest ``l >= 0`` with ``C(k+l, k) >= (d_l - 1)(t - 1) + 1`` where
    ``d_l = ceil((n - r(k+l-1)) / (r-1))``; returns ``(l, q, d)``."""
    l = 0
    while True:
        d = _ceil_div(n - r * (k + l - 1), r - 1)
        q = comb(k + l, k)
        if q >= (d - 1) * (t - 1) + 1:
            return l, q, d
        l += 1


def ktt_free_chromatic_exact(
    K: KneserPower, t: int, max_vertices: int = KTT_MAX_VERTICES
) -> int:
    """Fewest colors on ``V(K)`` with no monochromatic ``K^r_{t..t}``."""
    if t < 1:
        raise ValueError("t must be positive")
    N = K.num_vertices
    if N > max_vertices:
        raise CapExceeded(f"{N} power vertices exceed the cap of {max_vertices}")
    if N == 0:
        return 0
    base, r = K.vertices, K.r
    for C in range(1, N + 1):
        if _ktt_free_coloring(N, base, r, t, C) is not None:
            return C
    raise AssertionError("one vertex per color never holds a K^r_{t..t}")


def _ktt_free_coloring(N, base, r, t, C):
    color = [0] * N
    classes: list[list[int]] = [[] for _ in range(C + 1)]

    def rec(v: int, used: int) -> bool:
        if v == N:
            return True
        for s in range(1, min(used + 1, C) + 1):
            cls = classes[s]
            cls.append(v)
            if len(cls) < r * t or _ktt_in(cls, base, r, t) is None:
                color[v] = s
                if rec(v + 1, max(used, s)):
                    return True
            cls.pop()
        color[v] = 0
        return False

    return list(color) if rec(0, 0) else None


def all_bounds(
    H: Hypergraph,
    r: int,
    sigma_mode: str = "exact",
    exact_chi: bool = True,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    budget_ms: float | None = None,
) -> dict:
    """Every applicable lower bound for ``KG^r(H)`` plus, optionally, its
    exact chromatic number."""
    from .kneser import kneser_power

    out = {
        "dolnikov_kriz": dolnikov_kriz_bound(H, r).to_dict(),
        "alt": alt_bound(H, r, sigma_mode).to_dict(),
    }
    if r == 2:
        out["salt"] = salt_bound(H, sigma_mode).to_dict()
    if exact_chi:
        K = kneser_power(H, r)
        out["chi"] = chromatic_number(K.hypergraph, max_vertices, budget_ms).to_dict()
    return out
