"""Random Kneser subhypergraphs, Monte Carlo tails and the analytic event-A bounds.

Randomness is counter based: trial ``i`` of a run with seed ``s`` draws from a
Philox stream keyed by ``s`` whose counter starts at ``(0, i, 0, 0)``, and edge
``j`` uses the ``j``-th uniform of that stream.  A trial's sample therefore
depends only on ``(seed, trial, edge index)``, never on scheduling.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

import numpy as np

from .alternation import alt_r_sigma_q
from .chromatic import chromatic_number
from .hypercore import (
    CapExceeded,
    Hypergraph,
    find_proper_coloring,
    identity_ordering,
    validate_ordering,
)
from .kneser import KneserPower

__all__ = [
    "RandomModelParams",
    "DerivedParams",
    "derived_params",
    "trial_uniforms",
    "retained_matrix",
    "sample",
    "TailEstimate",
    "mc_tail",
    "LogBound",
    "event_a_bound_general",
    "event_a_bound_kneser",
    "PowerLaw",
    "margin_value",
    "margin_sweep",
    "margin_csv",
    "EventAResult",
    "event_a_family",
    "mc_event_a",
    "MAX_EVENT_A_VECTORS",
]

MAX_EVENT_A_VECTORS = 200_000
_SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class RandomModelParams:
    rho: float
    seed: int = 0
    trials: int = 1000

    def __post_init__(self):
        if not (0.0 < self.rho <= 1.0):
            raise ValueError(f"rho must lie in (0, 1], got {self.rho}")
        if not (0 <= self.seed < _SEED_LIMIT):
            raise ValueError("seed must be a 64-bit unsigned value")
        if self.trials < 1:
            raise ValueError("trials must be positive")


@dataclass(frozen=True)
class DerivedParams:
    n: int
    k: int
    r: int
    l: int
    d: int
    q: int
    t: int


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def derived_params(n: int, k: int, r: int, l: int) -> DerivedParams:
    """``d = ceil((n - r(k+l-1))/(r-1))``, ``q = C(k+l, k)``, ``t = ceil(q/(d-1))``."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if k < 1 or l < 0:
        raise ValueError("need k >= 1 and l >= 0")
    d = _ceil_div(n - r * (k + l - 1), r - 1)
    if d < 2:
        raise ValueError(f"d = {d} < 2 for (n, k, r, l) = {(n, k, r, l)}")
    q = math.comb(k + l, k)
    t = _ceil_div(q, d - 1)
    if not ((d - 1) * (t - 1) + 1 <= q <= (d - 1) * t):
        raise AssertionError("bracket (d-1)(t-1)+1 <= q <= (d-1)t fails")
    return DerivedParams(n, k, r, l, d, q, t)


# -- sampling -------------------------------------------------------------------


def trial_uniforms(seed: int, trial: int, count: int) -> np.ndarray:
    """The first ``count`` uniforms of the stream for ``(seed, trial)``."""
    bitgen = np.random.Philox(
        key=np.array([seed, 0], dtype=np.uint64),
        counter=np.array([0, trial, 0, 0], dtype=np.uint64),
    )
    return np.random.Generator(bitgen).random(count)


def retained_matrix(num_edges: int, params: RandomModelParams, trials: Iterable[int] | None = None) -> np.ndarray:
    """Boolean ``(trials, num_edges)`` matrix of retained edges."""
    idx = range(params.trials) if trials is None else trials
    rows = [trial_uniforms(params.seed, i, num_edges) < params.rho for i in idx]
    if not rows:
        return np.zeros((0, num_edges), dtype=bool)
    return np.vstack(rows)


def sample(K: KneserPower | Hypergraph, params: RandomModelParams, trial: int = 0) -> Hypergraph:
    """Spanning subhypergraph keeping each edge independently with prob. rho."""
    G = K.hypergraph if isinstance(K, KneserPower) else K
    keep = trial_uniforms(params.seed, trial, G.num_edges) < params.rho
    return Hypergraph(G.n, tuple(e for e, k in zip(G.edges, keep) if k))


def _map_trials(fn, trials: int, threads: int) -> list:
    """Evaluate ``fn`` on every trial index; results come back in index order."""
    if threads <= 1:
        return [fn(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, range(trials)))


# -- Monte Carlo tail of the chromatic number --------------------------------------


@dataclass(frozen=True)
class TailEstimate:
    estimate: float | None
    stderr: float | None
    hits: int
    resolved: int
    unknown: int
    trials: int
    # per trial: (trial, chi lower, chi upper, 1 hit / 0 miss / -1 unknown)
    records: tuple = field(default=(), repr=False, compare=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("records")
        return d


def _binomial(hits: int, resolved: int) -> tuple[float | None, float | None]:
    if resolved == 0:
        return None, None
    p = hits / resolved
    return p, math.sqrt(p * (1 - p) / resolved)


def mc_tail(
    K: KneserPower | Hypergraph,
    params: RandomModelParams,
    d: int,
    budget_ms: float | None = None,
    max_vertices: int = 256,
    threads: int = 1,
) -> TailEstimate:
    """Estimate ``Pr(chi(sample) >= d)``.

    A trial whose exact chromatic number is not resolved within the budget
    still counts when its bracket decides the event; otherwise it is reported
    as unknown and left out of the estimate.
    """
    G = K.hypergraph if isinstance(K, KneserPower) else K

    def one(i: int) -> tuple[int, int, int, int]:
        S = sample(G, params, i)
        res = chromatic_number(S, max_vertices=max_vertices, budget_ms=budget_ms)
        hit = 1 if res.lower >= d else (0 if res.upper < d else -1)
        return i, res.lower, res.upper, hit

    out = _map_trials(one, params.trials, threads)
    hits = sum(1 for x in out if x[3] == 1)
    unknown = sum(1 for x in out if x[3] == -1)
    resolved = params.trials - unknown
    est, se = _binomial(hits, resolved)
    return TailEstimate(est, se, hits, resolved, unknown, params.trials, tuple(out))


# -- analytic bounds ------------------------------------------------------------


@dataclass(frozen=True)
class LogBound:
    """Natural log ``L`` of a probability bound, and ``e^L`` when ``L <= 0``."""

    log_bound: float
    bound: float | None

    @property
    def vacuous(self) -> bool:
        return self.bound is None

    def to_dict(self) -> dict:
        return {"log_bound": self.log_bound, "bound": self.bound, "vacuous": self.vacuous}


def _log_bound(L: float) -> LogBound:
    return LogBound(L, math.exp(L) if L <= 0 else None)


def _check(r, t, d, rho):
    if r < 2 or t < 1 or d < 2:
        raise ValueError("need r >= 2, t >= 1, d >= 2")
    if not 0 < rho <= 1:
        raise ValueError("rho must lie in (0, 1]")


def event_a_bound_general(n: int, r: int, t: int, d: int, rho: float) -> LogBound:
    """``L = -rho t^r + n ln(r+1) + r t (1 + ln(d-1))``."""
    _check(r, t, d, rho)
    return _log_bound(-rho * t**r + n * math.log(r + 1) + r * t * (1 + math.log(d - 1)))


def event_a_bound_kneser(n: int, k: int, l: int, r: int, t: int, d: int, rho: float) -> LogBound:
    """``L = -rho t^r + r(k+l)(ln n + 1) + r t (1 + ln(d-1))``."""
    _check(r, t, d, rho)
    return _log_bound(
        -rho * t**r + r * (k + l) * (math.log(n) + 1) + r * t * (1 + math.log(d - 1))
    )


# -- finite-n margins of the asymptotic conditions ------------------------------------


@dataclass(frozen=True)
class PowerLaw:
    """``sum_i c_i n^{a_i} (ln n)^{b_i}``; a single term covers the usual regimes."""

    terms: tuple[tuple[float, float, float], ...]

    @classmethod
    def const(cls, c: float) -> "PowerLaw":
        return cls(((c, 0.0, 0.0),))

    @classmethod
    def term(cls, c: float, a: float = 0.0, b: float = 0.0) -> "PowerLaw":
        return cls(((c, a, b),))

    @classmethod
    def parse(cls, text: str) -> "PowerLaw":
        """``"c"`` or ``"c,a,b"`` terms joined by ``+``, e.g. ``"0.5,1,0+-0.5,0.3,0"``."""
        terms = []
        for chunk in text.split("+"):
            vals = [float(x) for x in chunk.split(",")]
            if len(vals) == 1:
                vals += [0.0, 0.0]
            if len(vals) != 3:
                raise ValueError(f"bad term {chunk!r}")
            terms.append(tuple(vals))
        return cls(tuple(terms))

    def __call__(self, n: float) -> float:
        ln = math.log(n)
        return sum(c * n**a * ln**b for c, a, b in self.terms)

    def integer(self, n: int) -> int:
        # small tolerance so exact integers survive float noise
        return int(math.floor(self(n) + 1e-9))


CONDITIONS = ("I", "II", "SG")


def margin_value(condition: str, n: int, k: int, l: int, r: int, rho: float) -> dict:
    """Left side of condition (I), (II) or the Schrijver condition at one n."""
    if condition not in CONDITIONS:
        raise ValueError(f"condition must be one of {CONDITIONS}")
    if condition == "SG":
        r = 2
        d = n - 2 * k - 2 * l + 2
    else:
        d = _ceil_div(n - r * (k + l - 1), r - 1)
    if d < 2:
        return {"n": n, "k": k, "l": l, "r": r, "d": d, "error": "d < 2"}
    q = math.comb(k + l, k)
    t = _ceil_div(q, d - 1)
    # t^r can be astronomically large; work in floats of logs where needed
    tr = float(t) ** r
    tail = r * t * (1 + math.log(d - 1))
    if condition == "I":
        M = n * math.log(r + 1) + tail - rho * tr
    else:
        M = r * (k + l) * (math.log(n) + 1) + tail - rho * tr
    return {"n": n, "k": k, "l": l, "r": r, "d": d, "q": q, "t": t, "M": M}


def _ratios(n: int, k: int, r: int) -> dict:
    ln = math.log(n)
    return {
        "ratio_kneser_k": k / (n ** (r / (2 * r - 1)) * ln ** (1 / (2 * r - 1))),
        "ratio_sg_k": k / (n ** (2 / 3) * ln ** (1 / 3)),
        "ratio_gap": (r * n - r * r * k) / n ** ((r - 1) / r),
    }


MARGIN_COLUMNS = (
    "n", "k", "l", "r", "rho", "d", "q", "t", "M",
    "ratio_kneser_k", "ratio_sg_k", "ratio_gap", "M_trend", "error",
)


def margin_sweep(
    condition: str,
    k_fn: PowerLaw | Callable[[int], float],
    l_fn: PowerLaw | Callable[[int], float],
    r_fn: PowerLaw | Callable[[int], float],
    rho_fn: PowerLaw | Callable[[int], float],
    grid: Sequence[int],
) -> list[dict]:
    """Finite-n diagnostic of an asymptotic condition over an n-grid.

    This is a table of margins and ratios with a trend flag per row
    (``down``/``up``/``flat`` relative to the previous row); it does not
    decide a limit.
    """

    def as_int(fn, n):
        return fn.integer(n) if isinstance(fn, PowerLaw) else int(fn(n))

    rows = []
    prev = None
    for n in grid:
        k, l, r = as_int(k_fn, n), as_int(l_fn, n), as_int(r_fn, n)
        rho = float(rho_fn(n))
        row = margin_value(condition, n, k, l, r, rho)
        row["rho"] = rho
        row.update(_ratios(n, k, row["r"]))
        if "M" in row and prev is not None:
            row["M_trend"] = "down" if row["M"] < prev else ("up" if row["M"] > prev else "flat")
        else:
            row["M_trend"] = ""
        prev = row.get("M", prev)
        row.setdefault("error", "")
        rows.append(row)
    return rows


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def margin_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(MARGIN_COLUMNS)
    for row in rows:
        w.writerow([_fmt(row.get(c, "")) for c in MARGIN_COLUMNS])
    return buf.getvalue()


# -- Monte Carlo of the event A from the proof ------------------------------------


def event_a_family(
    H: Hypergraph, sigma: Sequence[int] | None, r: int, q: int, t: int, K: KneserPower
) -> np.ndarray:
    """Edge-index sets for every choice ``(P, V_1, ..., V_r)``.

    Returns an int array ``(choices, t**r)``: row ``c`` lists the power-edge
    indices of ``K`` between ``V_1, ..., V_r``.  ``A(P)`` happens for a choice
    when all of them were removed.  Choices are deduplicated; P ranges over
    r-tuples of disjoint position sets each inducing >= q edges.
    """
    sigma = identity_ordering(H.n) if sigma is None else validate_ordering(sigma, H.n)
    n = H.n
    if (r + 1) ** n > MAX_EVENT_A_VECTORS:
        raise CapExceeded(f"(r+1)^n = {(r + 1) ** n} exceeds {MAX_EVENT_A_VECTORS}")
    if K.base != H or K.r != r:
        raise ValueError("K must be KG^r(H) for the same H and r")
    vindex = {e: i for i, e in enumerate(H.edges)}
    eindex = {e: i for i, e in enumerate(K.edges)}
    heavy: dict[int, tuple[int, ...] | None] = {}

    def top_of(vmask: int):
        if vmask not in heavy:
            inside = H.induced_edges(vmask)
            heavy[vmask] = tuple(vindex[e] for e in inside[-q:]) if len(inside) >= q else None
        return heavy[vmask]

    utuples: set[tuple[tuple[int, ...], ...]] = set()
    for X in product(range(r + 1), repeat=n):
        vm = [0] * r
        for j, x in enumerate(X):
            if x:
                vm[x - 1] |= 1 << (sigma[j] - 1)
        if not all(vm):
            continue
        tops = [top_of(v) for v in vm]
        if any(u is None for u in tops):
            continue
        utuples.add(tuple(sorted(tops)))

    rows: set[tuple[int, ...]] = set()
    for U in sorted(utuples):
        for Vs in product(*(combinations(u, t) for u in U)):
            cross = []
            for tup in product(*Vs):
                mask = 0
                for v in tup:
                    mask |= 1 << v
                cross.append(eindex[mask])
            rows.add(tuple(sorted(cross)))
    if not rows:
        return np.zeros((0, t**r), dtype=np.int64)
    return np.array(sorted(rows), dtype=np.int64)


@dataclass(frozen=True)
class EventAResult:
    estimate: float
    stderr: float
    occurrences: int
    trials: int
    bound: LogBound
    e_occurrences: int
    containment_failures: int
    choices: int
    threshold: int
    within_bound: bool | None
    # per trial: (trial, A occurred, E occurred)
    records: tuple = field(default=(), repr=False, compare=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("records")
        d["bound"] = self.bound.to_dict()
        return d


def mc_event_a(
    K: KneserPower,
    params: RandomModelParams,
    q: int,
    t: int,
    d: int,
    sigma: Sequence[int] | None = None,
    threads: int = 1,
    check_e: bool = True,
) -> EventAResult:
    """Estimate ``Pr(A)`` and check ``E subset A`` trial by trial.

    ``E`` is the event that the sample has a proper C-coloring with
    ``1 <= C < min((n - alt_r(H, sigma, q))/(r-1), d)``; it is decided by one
    coloring search with the largest admissible C.
    """
    H, r = K.base, K.r
    if q < (d - 1) * (t - 1) + 1:
        raise ValueError("need q >= (d-1)(t-1)+1")
    sigma = identity_ordering(H.n) if sigma is None else validate_ordering(sigma, H.n)
    fam = event_a_family(H, sigma, r, q, t, K)
    a = alt_r_sigma_q(H, sigma, r, q)
    # largest integer C with C < (n - a)/(r - 1) and C < d
    cmax = min(_ceil_div(H.n - a, r - 1) - 1, d - 1)
    bound = event_a_bound_general(H.n, r, t, d, params.rho)
    G = K.hypergraph

    def one(i: int) -> tuple[int, bool, bool]:
        keep = trial_uniforms(params.seed, i, G.num_edges) < params.rho
        occ = bool(len(fam)) and bool((~keep[fam]).all(axis=1).any())
        e_occ = False
        if check_e and cmax >= 1:
            S = Hypergraph(G.n, tuple(e for e, k in zip(G.edges, keep) if k))
            e_occ = find_proper_coloring(S, cmax) is not None
        return i, occ, e_occ

    out = _map_trials(one, params.trials, threads)
    occ = sum(1 for _, a_, _ in out if a_)
    e_occ = sum(1 for _, _, e in out if e)
    bad = sum(1 for _, a_, e in out if e and not a_)
    est = occ / params.trials
    se = math.sqrt(est * (1 - est) / params.trials)
    within = None if bound.vacuous else est <= bound.bound + 3 * se
    return EventAResult(
        est, se, occ, params.trials, bound, e_occ, bad, len(fam), cmax, within, tuple(out)
    )
