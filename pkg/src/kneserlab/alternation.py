"""Alternation numbers of signed vectors and hypergraphs.

A signed vector over ``Z_r`` is a tuple with entries in ``{0, 1, ..., r}``;
entry ``i > 0`` stands for the group element ``omega^i``.  Part ``X^i`` is the
set of positions holding ``i``.

The exact maximisations below only enumerate *fully alternating* vectors (no
two consecutive nonzero entries equal).  This loses nothing: the positions of
a longest alternating subsequence of any feasible ``X`` form a fully
alternating sub-vector whose parts are subsets of the original parts, and
induced edge counts are monotone under inclusion.  Symbols are also
introduced in increasing order, since renaming symbols changes neither
``alt`` nor the per-part constraints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np

from .hypercore import CapExceeded, Hypergraph, identity_ordering, induced_sub, members, validate_ordering

__all__ = [
    "alt",
    "parts",
    "support_size",
    "exhaustive_cap",
    "alt_r_sigma_q",
    "alt_witness",
    "alt_r_q",
    "salt_sigma_q",
    "salt_witness",
    "salt_q",
    "restrict_ordering",
    "build_T",
    "verify_altT",
    "AltTReport",
    "hyperedge_bits",
    "alt_subsets_batch",
    "ExhaustiveCapExceeded",
]

ALT_MAX_N_R2 = 20
EXACT_MIN_MAX_N = 8
T_MAX_N = 12


class ExhaustiveCapExceeded(CapExceeded):
    """An exhaustive enumeration would exceed its configured size cap."""


def alt(X: Sequence[int]) -> int:
    """Length of the longest alternating subsequence of ``X``.

    Equal to the number of maximal runs of equal symbols once zeros are
    dropped.
    """
    count = 0
    last = 0
    for x in X:
        if x and x != last:
            count += 1
            last = x
    return count


def parts(X: Sequence[int], r: int) -> list[set[int]]:
    """``[X^1, ..., X^r]`` as sets of 1-based positions."""
    out = [set() for _ in range(r)]
    for j, x in enumerate(X, start=1):
        if x:
            if not 1 <= x <= r:
                raise ValueError(f"entry {x} outside 0..{r}")
            out[x - 1].add(j)
    return out


def support_size(X: Sequence[int]) -> int:
    return sum(1 for x in X if x)


def exhaustive_cap(r: int, base_n: int = ALT_MAX_N_R2) -> int:
    """Largest n with (r+1)^n <= 3^base_n."""
    return int(math.floor(base_n * math.log(3) / math.log(r + 1) + 1e-9))


def _check_cap(n: int, r: int, max_n: int | None):
    cap = exhaustive_cap(r) if max_n is None else max_n
    if n > cap:
        raise ExhaustiveCapExceeded(f"n={n} exceeds the exhaustive cap {cap} for r={r}")


@lru_cache(maxsize=1 << 16)
def _search(H: Hypergraph, sigma: tuple[int, ...], r: int, q: int, salt: bool, allowed: int):
    """Best fully alternating vector; returns ``(value, X)`` in position order."""
    n = H.n
    inc = [[] for _ in range(n + 1)]
    for e in H.edges:
        for v in members(e):
            inc[v].append(e)
    verts = sigma
    pos_ok = [bool((allowed >> j) & 1) for j in range(n)]
    # number of allowed positions at or after j
    remaining = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        remaining[j] = remaining[j + 1] + pos_ok[j]

    part = [0] * (r + 1)
    cnt = [0] * (r + 1)
    X = [0] * n
    best = [-1, None]
    lim = q - 1

    def rec(j: int, last: int, used: int, length: int):
        if length + remaining[j] <= best[0]:
            return
        if j == n:
            best[0] = length
            best[1] = tuple(X)
            return
        if pos_ok[j]:
            v = verts[j]
            vb = 1 << (v - 1)
            for s in range(1, min(used + 1, r) + 1):
                if s == last:
                    continue
                newp = part[s] | vb
                add = 0
                for e in inc[v]:
                    if e & ~newp == 0:
                        add += 1
                c = cnt[s] + add
                if salt:
                    other = cnt[3 - s]
                    if c > lim and other > lim:
                        continue
                elif c > lim:
                    continue
                part[s] = newp
                cnt[s] = c
                X[j] = s
                rec(j + 1, s, max(used, s), length + 1)
                X[j] = 0
                part[s] &= ~vb
                cnt[s] -= add
                if best[0] == length + remaining[j]:
                    return
        rec(j + 1, last, used, length)

    rec(0, 0, 0, 0)
    return best[0], best[1]


def _prep(H: Hypergraph, sigma, r: int, q: int):
    if r < 1:
        raise ValueError("r must be positive")
    if q < 1:
        raise ValueError("q must be positive")
    sigma = identity_ordering(H.n) if sigma is None else validate_ordering(sigma, H.n)
    return sigma


def alt_witness(
    H: Hypergraph, sigma: Sequence[int] | None, r: int, q: int, max_n: int | None = None
) -> tuple[int, tuple[int, ...]]:
    """``alt_r(H, sigma, q)`` together with a maximising signed vector.

    ``X[j-1]`` is the symbol placed on position ``j``, i.e. on vertex
    ``sigma[j-1]``.
    """
    sigma = _prep(H, sigma, r, q)
    _check_cap(H.n, r, max_n)
    return _search(H, sigma, r, q, False, (1 << H.n) - 1)


def alt_r_sigma_q(
    H: Hypergraph, sigma: Sequence[int] | None, r: int, q: int, max_n: int | None = None
) -> int:
    """Max ``alt(X)`` over ``X`` whose every part induces at most ``q-1`` edges."""
    return alt_witness(H, sigma, r, q, max_n)[0]


def salt_witness(
    H: Hypergraph, sigma: Sequence[int] | None, q: int, max_n: int | None = None
) -> tuple[int, tuple[int, ...]]:
    sigma = _prep(H, sigma, 2, q)
    _check_cap(H.n, 2, max_n)
    return _search(H, sigma, 2, q, True, (1 << H.n) - 1)


def salt_sigma_q(
    H: Hypergraph, sigma: Sequence[int] | None, q: int, max_n: int | None = None
) -> int:
    """Max ``alt(X)`` over ``X`` in {+,-,0}^n where at least one sign class
    induces at most ``q-1`` edges."""
    return salt_witness(H, sigma, q, max_n)[0]


def _min_over_orderings(H: Hypergraph, objective, mode: str, seed: int, restarts: int):
    n = H.n
    if mode == "exact":
        if n > EXACT_MIN_MAX_N:
            raise ExhaustiveCapExceeded(
                f"exact minimisation over orderings needs n <= {EXACT_MIN_MAX_N}, got {n}"
            )
        best = None
        for perm in permutations(range(1, n + 1)):
            # objective(sigma) == objective(reversed sigma)
            if n >= 2 and perm[0] > perm[-1]:
                continue
            val = objective(perm)
            if best is None or val < best[0]:
                best = (val, perm)
        if best is None:
            best = (objective(()), ())
        return best
    if mode == "heuristic":
        return _local_search(n, objective, seed, restarts)
    raise ValueError(f"unknown mode {mode!r}")


def _local_search(n: int, objective, seed: int, restarts: int):
    """Steepest descent over adjacent transpositions with random restarts."""
    rng = np.random.default_rng(seed)
    best = None
    for trial in range(restarts):
        if trial == 0:
            cur = list(range(1, n + 1))
        else:
            cur = [int(v) + 1 for v in rng.permutation(n)]
        val = objective(tuple(cur))
        while True:
            move = None
            for i in range(n - 1):
                cand = cur[:]
                cand[i], cand[i + 1] = cand[i + 1], cand[i]
                cv = objective(tuple(cand))
                if cv < val and (move is None or cv < move[0]):
                    move = (cv, cand)
            if move is None:
                break
            val, cur = move
        if best is None or val < best[0] or (val == best[0] and tuple(cur) < best[1]):
            best = (val, tuple(cur))
    return best


def alt_r_q(
    H: Hypergraph,
    r: int,
    q: int = 1,
    mode: str = "exact",
    seed: int = 0,
    restarts: int = 50,
) -> tuple[int, tuple[int, ...]]:
    """``min_sigma alt_r(H, sigma, q)`` with a minimising ordering.

    ``mode="heuristic"`` returns an upper bound certified by the returned
    ordering.
    """
    return _min_over_orderings(
        H, lambda s: alt_r_sigma_q(H, s, r, q), mode, seed, restarts
    )


def salt_q(
    H: Hypergraph, q: int = 1, mode: str = "exact", seed: int = 0, restarts: int = 50
) -> tuple[int, tuple[int, ...]]:
    return _min_over_orderings(H, lambda s: salt_sigma_q(H, s, q), mode, seed, restarts)


def restrict_ordering(
    sigma: Sequence[int], M: Sequence[int], relabel: dict[int, int]
) -> tuple[int, ...]:
    """``sigma_M`` expressed in the relabeled vertices of ``H[M]``.

    The positions of ``M`` under ``sigma`` are taken in increasing order.
    """
    Mset = set(M)
    return tuple(relabel[v] for v in sigma if v in Mset)


def build_T(
    H: Hypergraph,
    C: int,
    s: int,
    sigma: Sequence[int] | None = None,
    q: int = 1,
    max_n: int = T_MAX_N,
) -> Hypergraph:
    """Hypergraph on V(H) whose edges are the nonempty M with
    ``|M| - alt_s(H[M], sigma_M, q) > (s - 1) C``."""
    if C < 1 or s < 2 or q < 1:
        raise ValueError("need C >= 1, s >= 2, q >= 1")
    if H.n > max_n:
        raise ExhaustiveCapExceeded(f"build_T enumerates 2^n subsets; n={H.n} > {max_n}")
    sigma = identity_ordering(H.n) if sigma is None else validate_ordering(sigma, H.n)
    edges = []
    for M in range(1, 1 << H.n):
        verts = members(M)
        sub, relabel = induced_sub(H, verts)
        a = alt_r_sigma_q(sub, restrict_ordering(sigma, verts, relabel), s, q)
        if len(verts) - a > (s - 1) * C:
            edges.append(M)
    return Hypergraph(H.n, tuple(edges))


@dataclass(frozen=True)
class AltTReport:
    lhs: int
    rhs: int
    passed: bool
    T: Hypergraph


def verify_altT(
    H: Hypergraph, sigma: Sequence[int] | None, r: int, s: int, C: int, q: int
) -> AltTReport:
    """Evaluate both sides of ``alt_r(T, sigma, 1) <= r(s-1)C + alt_rs(H, sigma, q)``."""
    sigma = identity_ordering(H.n) if sigma is None else validate_ordering(sigma, H.n)
    T = build_T(H, C, s, sigma, q)
    lhs = alt_r_sigma_q(T, sigma, r, 1)
    rhs = r * (s - 1) * C + alt_r_sigma_q(H, sigma, r * s, q)
    return AltTReport(lhs, rhs, lhs <= rhs, T)


# -- vectorised evaluation over many hypergraphs (identity ordering) ---------


def hyperedge_bits(H: Hypergraph) -> int:
    """Encode the edge set as an integer with bit ``M - 1`` set for edge mask M."""
    out = 0
    for e in H.edges:
        out |= 1 << (e - 1)
    return out


@lru_cache(maxsize=None)
def _subset_bits(n: int) -> np.ndarray:
    """``sub[P]`` has bit ``M - 1`` for every nonempty ``M`` contained in ``P``."""
    sub = np.zeros(1 << n, dtype=np.uint64)
    for P in range(1 << n):
        acc = 0
        M = P
        while M:
            acc |= 1 << (M - 1)
            M = (M - 1) & P
        sub[P] = acc
    return sub


@lru_cache(maxsize=None)
def _alternating_patterns(n: int, r: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Canonical fully alternating vectors on [n] as (support, part masks)."""
    out = []
    partv = [0] * r

    def rec(j: int, last: int, used: int, supp: int):
        if j == n:
            out.append((supp, tuple(p for p in partv if p)))
            return
        bit = 1 << j
        for s in range(1, min(used + 1, r) + 1):
            if s == last:
                continue
            partv[s - 1] |= bit
            rec(j + 1, s, max(used, s), supp | bit)
            partv[s - 1] &= ~bit
        rec(j + 1, last, used, supp)

    rec(0, 0, 0, 0)
    return tuple(out)


def alt_subsets_batch(n: int, hbits: np.ndarray, r: int, q: int) -> np.ndarray:
    """``alt_r(H[M], I_M, q)`` for every hypergraph in ``hbits`` and every M.

    ``hbits`` holds :func:`hyperedge_bits` encodings (``n <= 6``).  Returns an
    int8 array of shape ``(len(hbits), 2**n)``; column ``M`` is the value for
    the induced subhypergraph on vertex mask ``M`` under the identity order.
    Column ``2**n - 1`` is ``alt_r(H, I, q)``.
    """
    if n > 6:
        raise ExhaustiveCapExceeded("batch evaluation supports n <= 6 (64-bit encodings)")
    hbits = np.asarray(hbits, dtype=np.uint64)
    sub = _subset_bits(n)
    counts = np.bitwise_count(hbits[:, None] & sub[None, :])
    feasible = counts <= q - 1
    size = 1 << n
    best = np.zeros((len(hbits), size), dtype=np.int8)
    by_support: dict[int, list[tuple[int, ...]]] = {}
    for supp, pm in _alternating_patterns(n, r):
        if supp:
            by_support.setdefault(supp, []).append(pm)
    for supp, plist in by_support.items():
        ok = np.zeros(len(hbits), dtype=bool)
        for pm in plist:
            cur = np.ones(len(hbits), dtype=bool)
            for p in pm:
                cur &= feasible[:, p]
            ok |= cur
        best[:, supp] = np.where(ok, supp.bit_count(), 0)
    # max over all supports contained in M
    for i in range(n):
        bit = 1 << i
        idx = np.array([M for M in range(size) if M & bit])
        best[:, idx] = np.maximum(best[:, idx], best[:, idx ^ bit])
    return best
