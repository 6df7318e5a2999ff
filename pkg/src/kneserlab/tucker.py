"""Z_p-Tucker maps, the lambda constructions, chain search and r-tuple witnesses.

Signed vectors over ``Z_p`` are encoded as integers in base ``p + 1``: position
``j`` (1-based) holds digit ``x_j`` in ``{0, ..., p}`` with weight
``(p+1)**(j-1)``.  ``omega^i`` is the digit ``i`` and the group acts by
``eps . x = ((x - 1 + eps) mod p) + 1`` on nonzero digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .alternation import alt_r_sigma_q, build_T, restrict_ordering, salt_sigma_q
from .hypercore import CapExceeded, Hypergraph, identity_ordering, induced_sub, members, validate_ordering

__all__ = [
    "TuckerMap",
    "TuckerReport",
    "TupleWitness",
    "WitnessError",
    "LemmaPreconditionError",
    "encode",
    "decode",
    "check_properties",
    "conclusion_holds",
    "LemmainSkeleton",
    "build_lemmain_lambda",
    "build_salt_lambda",
    "extract_tuple",
    "validate_witness",
    "popular_color",
    "last_q_edges",
    "solve_lemmain",
    "solve_salt_lemma",
    "reduce_composite",
    "find_tuple_bruteforce",
    "is_prime",
]

MAX_TABLE = 2_000_000
CHECK_MAX_N = 8
CHECK_PRIMES = (2, 3, 5)


class WitnessError(AssertionError):
    """A constructed witness violates the bookkeeping it should satisfy."""


class LemmaPreconditionError(ValueError):
    """The coloring uses too many colors for the lemma to apply."""


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def encode(X: Sequence[int], p: int) -> int:
    code = 0
    w = 1
    for x in X:
        code += x * w
        w *= p + 1
    return code


def decode(code: int, n: int, p: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        code, d = divmod(code, p + 1)
        out.append(d)
    return tuple(out)


@lru_cache(maxsize=32)
def _digits(n: int, p: int) -> np.ndarray:
    N = (p + 1) ** n
    if N > MAX_TABLE:
        raise CapExceeded(f"(p+1)^n = {N} exceeds the table cap {MAX_TABLE}")
    codes = np.arange(N, dtype=np.int64)
    out = np.empty((N, n), dtype=np.int8)
    for j in range(n):
        out[:, j] = codes % (p + 1)
        codes //= p + 1
    out.setflags(write=False)
    return out


def _powers(n: int, p: int) -> np.ndarray:
    return (p + 1) ** np.arange(n, dtype=np.int64)


def _alt_and_first(dig: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    N, n = dig.shape
    last = np.zeros(N, dtype=np.int8)
    cnt = np.zeros(N, dtype=np.int32)
    first = np.zeros(N, dtype=np.int8)
    for j in range(n):
        d = dig[:, j]
        nz = d > 0
        cnt += nz & (d != last)
        first = np.where((first == 0) & nz, d, first)
        last = np.where(nz, d, last)
    return cnt, first


def _act(dig: np.ndarray, eps: int, p: int) -> np.ndarray:
    return np.where(dig > 0, (dig.astype(np.int64) - 1 + eps) % p + 1, 0)


@dataclass
class TuckerMap:
    """A total map ``(Z_p + {0})^n minus 0 -> Z_p x [m]`` stored as tables.

    ``lam1[code]`` is in ``1..p`` and ``lam2[code]`` in ``1..m``; entry 0 (the
    zero vector) is unused.  ``context`` records how the map was built so a
    chain can be turned back into an r-tuple.
    """

    n: int
    p: int
    m: int
    alpha: int
    lam1: np.ndarray
    lam2: np.ndarray
    context: "LemmaContext | None" = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if not (self.m >= 1 and 0 <= self.alpha <= self.m):
            raise ValueError("need m >= 1 and 0 <= alpha <= m")
        N = (self.p + 1) ** self.n
        if self.lam1.shape != (N,) or self.lam2.shape != (N,):
            raise ValueError("tables must cover every signed vector")

    @classmethod
    def from_function(cls, n: int, p: int, m: int, alpha: int, fn) -> "TuckerMap":
        N = (p + 1) ** n
        lam1 = np.zeros(N, dtype=np.int64)
        lam2 = np.zeros(N, dtype=np.int64)
        for code in range(1, N):
            a, b = fn(decode(code, n, p))
            lam1[code], lam2[code] = a, b
        return cls(n, p, m, alpha, lam1, lam2)

    def __call__(self, X: Sequence[int]) -> tuple[int, int]:
        code = encode(X, self.p)
        if code == 0:
            raise ValueError("the zero vector is outside the domain")
        return int(self.lam1[code]), int(self.lam2[code])

    def conclusion_holds(self) -> bool:
        return conclusion_holds(self)


def conclusion_holds(lam: TuckerMap) -> bool:
    """``alpha + (m - alpha)(p - 1) >= n``."""
    return lam.alpha + (lam.m - lam.alpha) * (lam.p - 1) >= lam.n


@dataclass
class TuckerReport:
    equivariant: bool
    monotone_low: bool
    in_range: bool
    chain: tuple[tuple[int, ...], ...] | None
    equivariance_counterexample: tuple[int, ...] | None = None
    monotone_counterexample: tuple[int, ...] | None = None

    @property
    def property_iii(self) -> bool:
        return self.chain is None


def check_properties(
    lam: TuckerMap, find_chain: bool = True, max_n: int = CHECK_MAX_N
) -> TuckerReport:
    """Check equivariance (i), low-level monotonicity (ii) and search for a
    chain violating (iii)."""
    n, p = lam.n, lam.p
    if n > max_n or p not in CHECK_PRIMES:
        raise CapExceeded(f"checks cover n <= {max_n} and p in {CHECK_PRIMES}, got n={n}, p={p}")
    dig = _digits(n, p)
    pw = _powers(n, p)
    lam1, lam2 = lam.lam1, lam.lam2

    in_range = bool(
        np.all((lam1[1:] >= 1) & (lam1[1:] <= p) & (lam2[1:] >= 1) & (lam2[1:] <= lam.m))
    )

    eq_bad = None
    for eps in range(1, p):
        img = _act(dig, eps, p) @ pw
        want1 = (lam1 - 1 + eps) % p + 1
        bad = (lam1[img] != want1) | (lam2[img] != lam2)
        bad[0] = False
        if bad.any():
            eq_bad = decode(int(np.flatnonzero(bad)[0]), n, p)
            break

    mono_bad = _check_low_monotone(lam, dig, pw)
    chain = _find_chain(lam, dig, pw) if find_chain and in_range else None
    return TuckerReport(eq_bad is None, mono_bad is None, in_range, chain, eq_bad, mono_bad)


def _support_groups(dig: np.ndarray) -> list[np.ndarray]:
    supp = (dig > 0).sum(axis=1)
    return [np.flatnonzero(supp == s) for s in range(1, dig.shape[1] + 1)]


def _strict_union(R: np.ndarray, idx: np.ndarray, dig: np.ndarray, pw: np.ndarray) -> np.ndarray:
    """OR of ``R`` over the immediate sub-vectors (one coordinate zeroed)."""
    out = np.zeros((len(idx),) + R.shape[1:], dtype=R.dtype)
    for j in range(dig.shape[1]):
        dj = dig[idx, j].astype(np.int64)
        has = dj > 0
        if has.any():
            out[has] |= R[idx[has] - dj[has] * pw[j]]
    return out


def _check_low_monotone(lam: TuckerMap, dig, pw):
    """Property (ii): X1 subset X2 with equal lam2 <= alpha share lam1."""
    a = lam.alpha
    if a == 0:
        return None
    N = len(lam.lam1)
    R = np.zeros((N, a), dtype=np.int64)
    for idx in _support_groups(dig):
        Rs = _strict_union(R, idx, dig, pw)
        l2 = lam.lam2[idx]
        low = (l2 >= 1) & (l2 <= a)
        rows = np.flatnonzero(low)
        lev = l2[rows] - 1
        bit = np.left_shift(1, lam.lam1[idx[rows]] - 1)
        seen = Rs[rows, lev]
        bad = (seen & ~bit) != 0
        if bad.any():
            return decode(int(idx[rows[np.flatnonzero(bad)[0]]]), lam.n, lam.p)
        Rs[rows, lev] |= bit
        R[idx] = Rs
    return None


def _find_chain(lam: TuckerMap, dig, pw):
    """Search ``X_1 subset ... subset X_p`` on one level > alpha with all p
    values of lam1.

    Per vector and level we keep the set of lam1-value sets realised by chains
    ending inside the vector, as a bitset over the 2^p subsets of Z_p.
    """
    p, a, m = lam.p, lam.alpha, lam.m
    nl = m - a
    if nl <= 0:
        return None
    N = len(lam.lam1)
    full = (1 << p) - 1
    nobit = np.zeros(p, dtype=np.uint64)
    for b in range(p):
        nobit[b] = sum(1 << st for st in range(1 << p) if not (st >> b) & 1)
    one = np.uint64(1)
    R = np.zeros((N, nl), dtype=np.uint64)
    E = np.zeros((N, nl), dtype=np.uint64)
    hit = None
    for idx in _support_groups(dig):
        Rs = _strict_union(R, idx, dig, pw)
        l2 = lam.lam2[idx]
        rows = np.flatnonzero(l2 > a)
        lev = l2[rows] - a - 1
        b = lam.lam1[idx[rows]] - 1
        shift = np.left_shift(1, b).astype(np.uint64)
        S = Rs[rows, lev]
        newE = np.left_shift(S & nobit[b], shift) | np.left_shift(one, shift)
        E[idx[rows], lev] = newE
        Rs[rows, lev] |= newE
        R[idx] = Rs
        done = np.flatnonzero((newE >> np.uint64(full)) & one)
        if len(done):
            hit = (int(idx[rows[done[0]]]), int(lev[done[0]]))
            break
    if hit is None:
        return None
    return _rebuild_chain(lam, hit, R, E, dig, pw, full)


def _rebuild_chain(lam, hit, R, E, dig, pw, full):
    code, lev = hit
    chain = [code]
    state = full & ~(1 << (int(lam.lam1[code]) - 1))
    cur = code
    while state:
        # descend through immediate sub-vectors until a chain element appears
        nxt = None
        for j in range(lam.n):
            d = int(dig[cur, j])
            if d == 0:
                continue
            sub = cur - d * int(pw[j])
            if (int(R[sub, lev]) >> state) & 1:
                nxt = sub
                break
        if nxt is None:
            raise WitnessError("chain reconstruction lost its trail")
        cur = nxt
        if (int(E[cur, lev]) >> state) & 1:
            chain.append(cur)
            state &= ~(1 << (int(lam.lam1[cur]) - 1))
    chain.reverse()
    return tuple(decode(c, lam.n, lam.p) for c in chain)


# -- witnesses ------------------------------------------------------------------


@dataclass(frozen=True)
class TupleWitness:
    """An r-tuple ``(N_1, ..., N_r)`` of disjoint position sets.

    ``parts`` are position masks over ``[n]``; ``vertex_sets`` their images
    under sigma; ``edges[j]`` the t chosen edges (vertex masks) inside part j.
    """

    parts: tuple[int, ...]
    vertex_sets: tuple[int, ...]
    color: int
    edges: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {
            "parts": [list(members(P)) for P in self.parts],
            "vertex_sets": [list(members(V)) for V in self.vertex_sets],
            "color": self.color,
            "edges": [[list(members(e)) for e in es] for es in self.edges],
        }


def _image(sigma: Sequence[int], positions: int) -> int:
    out = 0
    for j in members(positions):
        out |= 1 << (sigma[j - 1] - 1)
    return out


def last_q_edges(H: Hypergraph, vmask: int, q: int) -> list[int]:
    """The q largest edges of ``H[vmask]`` under the canonical order."""
    inside = H.induced_edges(vmask)
    return inside[-q:] if q > 0 else []


def popular_color(colors: Sequence[int]) -> int:
    """Most frequent color, ties going to the largest color."""
    counts: dict[int, int] = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    return max(counts, key=lambda c: (counts[c], c))


def validate_witness(
    H: Hypergraph,
    sigma: Sequence[int],
    coloring: Sequence[int],
    r: int,
    q: int,
    t: int,
    W: TupleWitness,
) -> None:
    """Raise :class:`WitnessError` unless ``W`` has every required property."""
    index = {e: i for i, e in enumerate(H.edges)}
    if len(W.parts) != r or len(W.edges) != r:
        raise WitnessError(f"expected {r} parts, got {len(W.parts)}")
    seen = 0
    for P in W.parts:
        if P & seen:
            raise WitnessError("parts are not pairwise disjoint")
        seen |= P
    for P, V, es in zip(W.parts, W.vertex_sets, W.edges):
        if _image(sigma, P) != V:
            raise WitnessError("vertex set is not the image of its positions")
        if H.induced_count(V) < q:
            raise WitnessError(f"part {members(V)} induces fewer than q={q} edges")
        top = set(last_q_edges(H, V, q))
        if len(set(es)) != t or len(es) != t:
            raise WitnessError(f"need {t} distinct edges per part")
        for e in es:
            if e not in top:
                raise WitnessError(f"edge {members(e)} is not among the last q of its part")
            if coloring[index[e]] != W.color:
                raise WitnessError("edge colors disagree with the witness color")


def _pick_edges(H, coloring, vmask, q, t, color):
    index = {e: i for i, e in enumerate(H.edges)}
    chosen = [e for e in last_q_edges(H, vmask, q) if coloring[index[e]] == color]
    return tuple(chosen[:t])


@dataclass
class LemmaContext:
    H: Hypergraph
    sigma: tuple[int, ...]
    coloring: tuple[int, ...]
    q: int
    t: int
    color_offset: int  # witness color = lam2 - alpha + color_offset


# -- the lambda map of the prime case -------------------------------------------


def _induced_count_table(H: Hypergraph) -> np.ndarray:
    """Number of edges inside every vertex mask (zeta transform)."""
    size = 1 << H.n
    cnt = np.zeros(size, dtype=np.int64)
    for e in H.edges:
        cnt[e] += 1
    for i in range(H.n):
        bit = 1 << i
        idx = np.array([M for M in range(size) if M & bit], dtype=np.int64)
        cnt[idx] += cnt[idx ^ bit]
    return cnt


class LemmainSkeleton:
    """Coloring-independent part of the lambda map for prime ``p``.

    For vectors with ``alt(X) <= alpha`` lambda is fixed.  Otherwise it picks
    the largest part (under the canonical order of the vertex images) that
    induces at least q edges; only the color of that part's last q edges
    depends on the coloring.
    """

    def __init__(self, H: Hypergraph, sigma: Sequence[int] | None, p: int, q: int):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        self.H = H
        self.sigma = identity_ordering(H.n) if sigma is None else validate_ordering(sigma, H.n)
        self.p, self.q, self.n = p, q, H.n
        self.alpha = alt_r_sigma_q(H, self.sigma, p, q)
        dig = _digits(H.n, p)
        self.alt, self.first = _alt_and_first(dig)
        vb = np.array([1 << (v - 1) for v in self.sigma], dtype=np.int64)
        pm = np.stack([(dig == i).astype(np.int64) @ vb for i in range(1, p + 1)], axis=1)
        cnt = _induced_count_table(H)
        heavy = cnt[pm] >= q
        key = np.where(heavy, np.bitwise_count(pm).astype(np.int64) * (1 << H.n) + pm, -1)
        sel = np.argmax(key, axis=1)
        self.high = self.alt > self.alpha
        self.high[0] = False
        if np.any(~heavy[self.high].any(axis=1)):
            raise WitnessError("a high-alternation vector has no heavy part")
        self.part_index = (sel + 1).astype(np.int64)
        self.part_mask = pm[np.arange(len(pm)), sel]
        self.selected = np.unique(self.part_mask[self.high])
        self._last = {int(S): last_q_edges(H, int(S), q) for S in self.selected}
        idx = {e: i for i, e in enumerate(H.edges)}
        self.last_index = {S: [idx[e] for e in es] for S, es in self._last.items()}

    def pop_colors(self, coloring: Sequence[int]) -> dict[int, int]:
        return {S: popular_color([coloring[i] for i in ix]) for S, ix in self.last_index.items()}

    def tables(self, coloring: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
        lam1 = self.first.astype(np.int64).copy()
        lam2 = self.alt.astype(np.int64).copy()
        pop = self.pop_colors(coloring)
        sel = np.array(list(pop.keys()), dtype=np.int64)
        val = np.array([pop[int(S)] for S in sel], dtype=np.int64)
        order = np.argsort(sel)
        h = np.flatnonzero(self.high)
        pos = np.searchsorted(sel[order], self.part_mask[h])
        lam1[h] = self.part_index[h]
        lam2[h] = self.alpha + val[order][pos]
        lam1[0] = lam2[0] = 0
        return lam1, lam2

    def structural_check(self) -> tuple[bool, bool]:
        """Equivariance and property (ii) for *every* coloring at once.

        lambda_2 on high vectors is a function of the selected part mask, so
        (i) holds for all colorings iff the group action permutes the part
        index and fixes the part mask; (ii) only involves low vectors.
        """
        dig = _digits(self.n, self.p)
        pw = _powers(self.n, self.p)
        ok_eq = True
        h = self.high
        for eps in range(1, self.p):
            img = _act(dig, eps, self.p) @ pw
            if not np.array_equal(self.high[img], h):
                ok_eq = False
                break
            low = ~h
            low[0] = False
            want_first = (self.first.astype(np.int64) - 1 + eps) % self.p + 1
            if np.any(self.first[img][low] != want_first[low]) or np.any(
                self.alt[img][low] != self.alt[low]
            ):
                ok_eq = False
                break
            want_idx = (self.part_index - 1 + eps) % self.p + 1
            if np.any(self.part_index[img][h] != want_idx[h]) or np.any(
                self.part_mask[img][h] != self.part_mask[h]
            ):
                ok_eq = False
                break
        lam1 = self.first.astype(np.int64)
        lam2 = np.where(h, self.alpha + 1, self.alt).astype(np.int64)
        probe = TuckerMap(self.n, self.p, max(self.alpha + 1, 1), self.alpha, lam1, lam2)
        ok_mono = _check_low_monotone(probe, dig, pw) is None
        return ok_eq, ok_mono

    def comparable_pairs(self) -> np.ndarray:
        """Distinct (S_a, S_b) for high ``X_a subset X_b`` with different part
        indices (p = 2).  A chain exists iff some pair gets equal colors."""
        if self.p != 2:
            raise ValueError("pair reduction is for p = 2")
        dig = _digits(self.n, self.p)
        pw = _powers(self.n, self.p)
        N = len(self.alt)
        # every high sub-vector of X, propagated through immediate sub-vectors
        pairs: set[tuple[int, int]] = set()
        below: list[set[tuple[int, int]]] = [set() for _ in range(N)]
        for idx in _support_groups(dig):
            for code in idx.tolist():
                acc: set[tuple[int, int]] = set()
                for j in range(self.n):
                    d = int(dig[code, j])
                    if d:
                        acc |= below[code - d * int(pw[j])]
                if self.high[code]:
                    me = (int(self.part_index[code]), int(self.part_mask[code]))
                    for (i, S) in acc:
                        if i != me[0]:
                            pairs.add((S, me[1]) if S <= me[1] else (me[1], S))
                    acc = acc | {me}
                below[code] = acc
        return np.array(sorted(pairs), dtype=np.int64).reshape(-1, 2)


@lru_cache(maxsize=256)
def _skeleton(H: Hypergraph, sigma, p: int, q: int) -> LemmainSkeleton:
    # the skeleton only depends on (H, sigma, p, q); sweeps reuse it
    return LemmainSkeleton(H, sigma, p, q)


@lru_cache(maxsize=64)
def _cached_T(H: Hypergraph, C: int, s: int, sigma: tuple[int, ...], q: int) -> Hypergraph:
    return build_T(H, C, s, sigma, q)


def build_lemmain_lambda(
    H: Hypergraph,
    sigma: Sequence[int] | None,
    coloring: Sequence[int],
    p: int,
    q: int,
    d: int,
    t: int,
    skeleton: LemmainSkeleton | None = None,
) -> TuckerMap:
    """The lambda map of the prime case for a coloring of ``E(H)``.

    ``coloring[i]`` colors ``H.edges[i]`` with a value in ``1..C``.
    """
    if len(coloring) != H.num_edges:
        raise ValueError("coloring must cover every edge of H")
    if q < (d - 1) * (t - 1) + 1:
        raise ValueError("need q >= (d-1)(t-1)+1")
    sk = skeleton or _skeleton(H, tuple(sigma) if sigma is not None else None, p, q)
    C = max(coloring) if coloring else 0
    if not (1 <= C and C * (p - 1) < H.n - sk.alpha and C < d):
        raise LemmaPreconditionError(
            f"C={C} is not below min((n - alt)/(p-1), d) with n={H.n}, alt={sk.alpha}, d={d}"
        )
    lam1, lam2 = sk.tables(coloring)
    ctx = LemmaContext(H, sk.sigma, tuple(coloring), q, t, 0)
    return TuckerMap(H.n, p, sk.alpha + C, sk.alpha, lam1, lam2, ctx)


def build_salt_lambda(
    H: Hypergraph,
    sigma: Sequence[int] | None,
    coloring: Sequence[int],
    q: int,
    d: int,
    t: int = 1,
) -> TuckerMap | TupleWitness:
    """Two-signed variant (p = 2, alpha = salt, m = alpha + C - 1).

    Returns a witness directly if some high vector has ``g(X^+) = g(X^-)``.
    """
    sigma = identity_ordering(H.n) if sigma is None else validate_ordering(sigma, H.n)
    if len(coloring) != H.num_edges:
        raise ValueError("coloring must cover every edge of H")
    if q < (d - 1) * (t - 1) + 1:
        raise ValueError("need q >= (d-1)(t-1)+1")
    alpha = salt_sigma_q(H, sigma, q)
    C = max(coloring) if coloring else 0
    if not (1 <= C and C < H.n - alpha + 1 and C < d):
        raise LemmaPreconditionError(
            f"C={C} is not below min(n - salt + 1, d) with n={H.n}, salt={alpha}, d={d}"
        )
    dig = _digits(H.n, 2)
    altv, first = _alt_and_first(dig)
    vb = np.array([1 << (v - 1) for v in sigma], dtype=np.int64)
    plus = (dig == 1).astype(np.int64) @ vb
    minus = (dig == 2).astype(np.int64) @ vb
    idx = {e: i for i, e in enumerate(H.edges)}
    g_cache: dict[int, int] = {}

    def g(S: int) -> int:
        if S not in g_cache:
            g_cache[S] = popular_color([coloring[idx[e]] for e in last_q_edges(H, S, q)])
        return g_cache[S]

    lam1 = first.astype(np.int64)
    lam2 = altv.astype(np.int64)
    for code in np.flatnonzero(altv > alpha).tolist():
        Sp, Sm = int(plus[code]), int(minus[code])
        if H.induced_count(Sp) < q or H.induced_count(Sm) < q:
            raise WitnessError("high vector with a light side contradicts salt")
        gp, gm = g(Sp), g(Sm)
        if gp == gm:
            X = decode(code, H.n, 2)
            pos_plus = sum(1 << j for j, x in enumerate(X) if x == 1)
            pos_minus = sum(1 << j for j, x in enumerate(X) if x == 2)
            W = TupleWitness(
                (pos_plus, pos_minus),
                (Sp, Sm),
                gp,
                (_pick_edges(H, coloring, Sp, q, t, gp), _pick_edges(H, coloring, Sm, q, t, gm)),
            )
            validate_witness(H, sigma, coloring, 2, q, t, W)
            return W
        lam1[code] = 1 if gp > gm else 2
        lam2[code] = alpha + max(gp, gm) - 1
    lam1[0] = lam2[0] = 0
    ctx = LemmaContext(H, sigma, tuple(coloring), q, t, 1)
    return TuckerMap(H.n, 2, alpha + C - 1, alpha, lam1, lam2, ctx)


def extract_tuple(lam: TuckerMap, chain: Sequence[Sequence[int]]) -> TupleWitness:
    """Turn a (iii)-violating chain into the r-tuple ``N_j = X_j^{pi(j)}``."""
    ctx = lam.context
    if ctx is None:
        raise ValueError("this map carries no construction context")
    if len(chain) != lam.p:
        raise ValueError(f"a chain has exactly p={lam.p} vectors")
    vals = [lam(X) for X in chain]
    levels = {v[1] for v in vals}
    if len(levels) != 1 or min(levels) <= lam.alpha:
        raise ValueError("chain vectors must share one level above alpha")
    if len({v[0] for v in vals}) != lam.p:
        raise ValueError("chain lam1 values are not pairwise distinct")
    for A, B in zip(chain, chain[1:]):
        if any(a and a != b for a, b in zip(A, B)):
            raise ValueError("chain is not increasing")
    level = vals[0][1]
    color = level - lam.alpha + ctx.color_offset
    parts, vsets, edges = [], [], []
    for X, (l1, _) in zip(chain, vals):
        P = sum(1 << j for j, x in enumerate(X) if x == l1)
        V = _image(ctx.sigma, P)
        parts.append(P)
        vsets.append(V)
        edges.append(_pick_edges(ctx.H, ctx.coloring, V, ctx.q, ctx.t, color))
    W = TupleWitness(tuple(parts), tuple(vsets), color, tuple(edges))
    validate_witness(ctx.H, ctx.sigma, ctx.coloring, lam.p, ctx.q, ctx.t, W)
    return W


# -- solving the lemma constructively ---------------------------------------------


def _smallest_prime_factor(r: int) -> int:
    for f in range(2, r + 1):
        if r % f == 0:
            return f
    raise ValueError("r must be at least 2")


def solve_lemmain(
    H: Hypergraph,
    sigma: Sequence[int] | None,
    coloring: Sequence[int],
    r: int,
    q: int,
    d: int,
    t: int,
) -> TupleWitness:
    """Follow the proof: lambda map and chain for prime r, the composite
    reduction otherwise."""
    sigma = identity_ordering(H.n) if sigma is None else validate_ordering(sigma, H.n)
    if is_prime(r):
        lam = build_lemmain_lambda(H, sigma, coloring, r, q, d, t)
        rep = check_properties(lam)
        if not (rep.equivariant and rep.monotone_low and rep.in_range):
            raise WitnessError("constructed map fails property (i) or (ii)")
        if rep.chain is None:
            raise WitnessError("no chain although alpha + (m-alpha)(p-1) < n")
        return extract_tuple(lam, rep.chain)
    r1 = _smallest_prime_factor(r)
    return reduce_composite(H, sigma, coloring, r1, r // r1, q, d, t)


def solve_salt_lemma(
    H: Hypergraph,
    sigma: Sequence[int] | None,
    coloring: Sequence[int],
    q: int,
    d: int,
    t: int = 1,
) -> TupleWitness:
    sigma = identity_ordering(H.n) if sigma is None else validate_ordering(sigma, H.n)
    out = build_salt_lambda(H, sigma, coloring, q, d, t)
    if isinstance(out, TupleWitness):
        return out
    rep = check_properties(out)
    if not (rep.equivariant and rep.monotone_low and rep.in_range):
        raise WitnessError("two-signed map fails property (i) or (ii)")
    if rep.chain is None:
        raise WitnessError("no chain although the two-signed map is below the bound")
    return extract_tuple(out, rep.chain)


def reduce_composite(
    H: Hypergraph,
    sigma: Sequence[int] | None,
    coloring: Sequence[int],
    r1: int,
    r2: int,
    q: int,
    d: int,
    t: int,
) -> TupleWitness:
    """The ``r1 * r2`` case from the ``r2`` case on each ``H[M]`` and the
    ``r1`` case (t = q = 1) on ``T = T_{H, C, r2, sigma}``."""
    if r1 < 2 or r2 < 2:
        raise ValueError("both factors must be at least 2")
    sigma = identity_ordering(H.n) if sigma is None else validate_ordering(sigma, H.n)
    r = r1 * r2
    C = max(coloring) if coloring else 0
    a = alt_r_sigma_q(H, sigma, r, q)
    if not (1 <= C and C * (r - 1) < H.n - a and C < d):
        raise LemmaPreconditionError(
            f"C={C} is not below min((n - alt_{r})/(r-1), d) with n={H.n}, alt={a}, d={d}"
        )
    T = _cached_T(H, C, r2, sigma, q)
    eindex = {e: i for i, e in enumerate(H.edges)}
    pos_of = {v: j + 1 for j, v in enumerate(sigma)}
    sub_witness: dict[int, TupleWitness] = {}

    def solve_on(M: int) -> TupleWitness:
        if M not in sub_witness:
            verts = members(M)
            sub, relabel = induced_sub(H, verts)
            back = {new: old for old, new in relabel.items()}
            sig_M = restrict_ordering(sigma, verts, relabel)
            sub_col = [coloring[eindex[_expand(e, back)]] for e in sub.edges]
            Wm = solve_lemmain(sub, sig_M, sub_col, r2, q, d, t)
            # positions of sigma_M are the sigma-positions of M in increasing order
            mpos = sorted(pos_of[v] for v in verts)
            parts = tuple(
                sum(1 << (mpos[j - 1] - 1) for j in members(P)) for P in Wm.parts
            )
            vsets = tuple(_expand(V, back) for V in Wm.vertex_sets)
            edges = tuple(tuple(_expand(e, back) for e in es) for es in Wm.edges)
            sub_witness[M] = TupleWitness(parts, vsets, Wm.color, edges)
        return sub_witness[M]

    f = [solve_on(M).color for M in T.edges]
    aT = alt_r_sigma_q(T, sigma, r1, 1)
    if not (C * (r1 - 1) < T.n - aT):
        raise WitnessError("T violates the inequality guaranteed by the alternation lemma")
    top = solve_lemmain(T, sigma, f, r1, 1, d, 1)
    parts, vsets, edges = [], [], []
    for es in top.edges:
        Wm = sub_witness[es[0]]
        parts.extend(Wm.parts)
        vsets.extend(Wm.vertex_sets)
        edges.extend(Wm.edges)
    W = TupleWitness(tuple(parts), tuple(vsets), top.color, tuple(edges))
    validate_witness(H, sigma, coloring, r, q, t, W)
    return W


def _expand(mask: int, back: dict[int, int]) -> int:
    out = 0
    for v in members(mask):
        out |= 1 << (back[v] - 1)
    return out


def find_tuple_bruteforce(
    H: Hypergraph,
    sigma: Sequence[int] | None,
    coloring: Sequence[int],
    r: int,
    q: int,
    t: int,
) -> TupleWitness | None:
    """Exhaustive search for an r-tuple witness (independent of any lambda)."""
    sigma = identity_ordering(H.n) if sigma is None else validate_ordering(sigma, H.n)
    n = H.n
    eindex = {e: i for i, e in enumerate(H.edges)}
    for color in sorted(set(coloring)):
        good = []
        for P in range(1, 1 << n):
            V = _image(sigma, P)
            top = last_q_edges(H, V, q)
            if len(top) < q:
                continue
            hits = [e for e in top if coloring[eindex[e]] == color]
            if len(hits) >= t:
                good.append((P, V, tuple(hits[:t])))
        chosen: list = []

        def rec(start: int, used: int) -> bool:
            if len(chosen) == r:
                return True
            for i in range(start, len(good)):
                if good[i][0] & used == 0:
                    chosen.append(good[i])
                    if rec(i + 1, used | good[i][0]):
                        return True
                    chosen.pop()
            return False

        if rec(0, 0):
            return TupleWitness(
                tuple(c[0] for c in chosen),
                tuple(c[1] for c in chosen),
                color,
                tuple(c[2] for c in chosen),
            )
    return None
