"""Batch command line front-end: ``kneserlab <verb> [options]``.

Every verb writes its result (JSON, or CSV for the per-trial verbs) to stdout
or ``--out``, and exactly one run manifest to stderr or ``--manifest``.
Progress, when any, also goes to stderr.

Exit codes: 0 success, 1 usage or input error, 2 cap or budget exceeded,
3 a property verification failed.

Default caps can be overridden with ``KNESERLAB_MAX_VERTICES`` (exact
chromatic numbers), ``KNESERLAB_BUDGET_MS`` and ``KNESERLAB_MAX_N`` (altT
sweep size).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import platform
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .alternation import alt_r_q, alt_r_sigma_q, salt_q
from .chromatic import (
    DEFAULT_MAX_VERTICES,
    all_bounds,
    chromatic_number,
    kneser_ktt_parameters,
    ktt_free_bound,
    ktt_free_chromatic_exact,
)
from .families import random_hypergraph
from .hypercore import CapExceeded, Hypergraph, colorability_defect
from .kneser import (
    KneserPower,
    complete_k_subsets,
    kneser_power,
    stable_subsets_hypergraph,
)
from .randmc import (
    PowerLaw,
    RandomModelParams,
    margin_csv,
    margin_sweep,
    mc_event_a,
    mc_tail,
    sample,
)
from .verify import (
    verify_altT_sweep,
    verify_lemmain,
    verify_lemmainken,
    verify_reduction,
    verify_sglemma,
    verify_zptucker,
)

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3
MC_MAX_VERTICES = 256

SAMPLE_HEADER = ("trial", "retained_edges", "edges_sha256")
TAIL_HEADER = ("trial", "chi_lower", "chi_upper", "hit")
EVENTA_HEADER = ("trial", "event_a", "event_e")


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    verb: str
    parameters: dict
    seed: int | None
    caps: dict
    tool_version: str = __version__
    python: str = field(default_factory=platform.python_version)
    numpy: str = np.__version__
    wall_time_s: float = 0.0
    exit_code: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _env_int(name: str, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")


def _caps(args) -> dict:
    return {
        "max_vertices": args.max_vertices,
        "budget_ms": args.budget_ms,
        "max_n": args.max_n,
    }


# -- input / output -------------------------------------------------------------


def _read_json(path: str | None) -> dict:
    if path is None:
        raise UsageError("this verb needs --in")
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON in {path}: {exc}")


def _load(path: str | None) -> tuple[Hypergraph, KneserPower | None]:
    """A plain hypergraph, or a Kneser power (hypergraph plus ``kneser`` sidecar).

    For a Kneser power the returned hypergraph is its base.
    """
    data = _read_json(path)
    try:
        G = Hypergraph.from_dict(data)
        side = data.get("kneser")
        if side is None:
            return G, None
        base = Hypergraph.from_dict(side["base"])
        K = kneser_power(base, int(side["r"]))
        if K.hypergraph != G:
            raise UsageError("kneser sidecar does not match the stored hypergraph")
        return base, K
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed input: {exc}")


def _power_from_input(args) -> KneserPower:
    H, K = _load(args.input)
    if K is not None:
        return K
    if args.r is None:
        raise UsageError("input is a plain hypergraph: pass --r to form KG^r(H)")
    return kneser_power(H, args.r)


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2, sort_keys=True))


def _emit_csv(args, header, rows) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    target = args.csv or args.out
    if target:
        Path(target).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _sigma_mode(args):
    if args.sigma:
        return [int(x) for x in args.sigma.split(",")]
    return args.sigma_mode


# -- verbs ------------------------------------------------------------------------


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "kneser":
        obj = json.loads(kneser_power(complete_k_subsets(args.n, args.k), args.r or 2).to_json())
    elif kind == "schrijver":
        obj = json.loads(kneser_power(stable_subsets_hypergraph(args.n, args.k), 2).to_json())
    elif kind == "complete":
        obj = complete_k_subsets(args.n, args.k).to_dict()
    elif kind == "stable":
        obj = stable_subsets_hypergraph(args.n, args.k).to_dict()
    elif kind == "random":
        rng = np.random.default_rng(args.seed)
        obj = random_hypergraph(args.n, rng, args.max_edges, args.edge_prob).to_dict()
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    _emit(args, json.dumps(obj))
    return EXIT_OK


def cmd_invariants(args) -> int:
    H, K = _load(args.input)
    r = args.r or (K.r if K else 2)
    mode = _sigma_mode(args)
    out = {"n": H.n, "edges": H.num_edges, "hash": H.canonical_hash(), "r": r, "q": args.q}
    if isinstance(mode, list):
        out["alt_r"] = alt_r_sigma_q(H, mode, r, args.q)
        out["sigma"] = mode
    else:
        val, sigma = alt_r_q(H, r, args.q, mode=mode, seed=args.seed)
        out["alt_r"], out["sigma"] = val, list(sigma)
        out["alt_r_exact"] = mode == "exact"
        sval, ssig = salt_q(H, args.q, mode=mode, seed=args.seed)
        out["salt"], out["salt_sigma"] = sval, list(ssig)
    out["cd_r"] = colorability_defect(H, r)
    _emit_json(args, out)
    return EXIT_OK


def cmd_chi(args) -> int:
    data = _read_json(args.input)
    try:
        G = Hypergraph.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed input: {exc}")
    res = chromatic_number(G, args.max_vertices or DEFAULT_MAX_VERTICES, args.budget_ms)
    out = res.to_dict()
    out["hash"] = G.canonical_hash()
    _emit_json(args, out)
    return EXIT_OK if res.exact else EXIT_CAP


def cmd_bounds(args) -> int:
    H, K = _load(args.input)
    r = args.r or (K.r if K else 2)
    out = all_bounds(H, r, _sigma_mode(args), exact_chi=not args.no_chi,
                     max_vertices=args.max_vertices or DEFAULT_MAX_VERTICES,
                     budget_ms=args.budget_ms)
    if args.csv:
        rows = []
        for name, rec in out.items():
            rows.append((name, rec["value"], rec["exact"]))
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("bound", "value", "exact"))
        w.writerows(rows)
        Path(args.csv).write_text(buf.getvalue())
    _emit_json(args, out)
    chi = out.get("chi")
    return EXIT_CAP if chi is not None and not chi["exact"] else EXIT_OK


def cmd_ktt(args) -> int:
    H, K = _load(args.input)
    r = args.r or (K.r if K else 2)
    q, d = args.q, args.d
    if args.k is not None:
        l, q2, d2 = kneser_ktt_parameters(H.n, args.k, r, args.t)
        q = q if q is not None else q2
        d = d if d is not None else d2
        extra = {"l": l}
    else:
        extra = {}
    if q is None or d is None:
        raise UsageError("pass --q and --d, or --k for a complete k-subset base")
    sigma = [int(x) for x in args.sigma.split(",")] if args.sigma else None
    rep = ktt_free_bound(H, r, sigma, q, args.t, d).to_dict()
    rep.update(extra)
    if args.exact:
        K = K or kneser_power(H, r)
        rep["exact"] = ktt_free_chromatic_exact(K, args.t)
    _emit_json(args, rep)
    return EXIT_OK


def cmd_verify(args) -> int:
    target = args.target
    mode = "sampled" if args.sampled else "exhaustive"
    if target == "zptucker":
        rep = verify_zptucker(args.n or 4, args.p, args.m, args.alpha, args.trials, args.seed)
    elif target == "lemmain":
        if args.input:
            H, _ = _load(args.input)
        else:
            H = complete_k_subsets(args.n or 4, args.k or 2)
        rep = verify_lemmain(H, args.r or 2, args.q, args.t, args.d, None, args.max_colors,
                             mode, args.trials, args.seed)
    elif target == "lemmainken":
        rep = verify_lemmainken(args.n or 6, args.k or 2, args.r or 2, args.l, mode,
                                args.trials, args.seed, args.max_colors)
    elif target == "sglemma":
        rep = verify_sglemma(args.n or 6, args.k or 2, args.l, mode, args.trials, args.seed,
                             args.max_colors)
    elif target == "altT":
        rep = verify_altT_sweep(max_n=args.max_n, max_edges=args.max_edges, seed=args.seed)
    elif target == "reduction":
        rep = verify_reduction(seed=args.seed)
    else:  # pragma: no cover
        raise UsageError(target)
    _emit_json(args, rep.to_dict())
    return EXIT_OK if rep.ok else EXIT_VERIFY


def _params(args) -> RandomModelParams:
    try:
        return RandomModelParams(args.rho, args.seed, args.trials)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_sample(args) -> int:
    K = _power_from_input(args)
    params = _params(args)
    rows = []
    for i in range(params.trials):
        S = sample(K, params, i)
        digest = hashlib.sha256(json.dumps(list(S.edges)).encode()).hexdigest()
        rows.append((i, S.num_edges, digest))
    _emit_csv(args, SAMPLE_HEADER, rows)
    return EXIT_OK


def cmd_mc(args) -> int:
    K = _power_from_input(args)
    params = _params(args)
    if args.kind == "tail":
        if args.d is None:
            raise UsageError("mc tail needs --d")
        res = mc_tail(K, params, args.d, args.budget_ms, args.max_vertices or MC_MAX_VERTICES,
                      args.threads)
        rows = res.records
        header = TAIL_HEADER
        code = EXIT_OK
    else:
        if args.d is None or args.q is None:
            raise UsageError("mc eventa needs --q and --d")
        res = mc_event_a(K, params, args.q, args.t, args.d, None, args.threads)
        rows = [(i, int(a), int(e)) for i, a, e in res.records]
        header = EVENTA_HEADER
        code = EXIT_VERIFY if res.containment_failures or res.within_bound is False else EXIT_OK
    _emit_csv(args, header, rows)
    summary = json.dumps(res.to_dict(), sort_keys=True)
    if args.summary:
        Path(args.summary).write_text(summary + "\n")
    else:
        print(summary, file=sys.stderr)
    return code


def cmd_margins(args) -> int:
    grid = [int(float(x)) for x in args.grid.split(",")]
    try:
        fns = [PowerLaw.parse(x) for x in (args.k, args.l, args.r_fn, args.rho)]
    except ValueError as exc:
        raise UsageError(str(exc))
    rows = margin_sweep(args.condition, *fns, grid)
    text = margin_csv(rows)
    target = args.csv or args.out
    if target:
        Path(target).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", help="input JSON file ('-' for stdin)")
    common.add_argument("--out", help="write the main output here instead of stdout")
    common.add_argument("--csv", help="CSV output path (verbs with tabular output)")
    common.add_argument("--manifest", help="write the run manifest here instead of stderr")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--max-n", type=int, default=None)
    common.add_argument("--budget-ms", type=float, default=None)
    common.add_argument("--max-vertices", type=int, default=None)

    p = _Parser(prog="kneserlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate a hypergraph as JSON")
    g.add_argument("kind", choices=["kneser", "schrijver", "complete", "stable", "random"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--r", type=int, default=None)
    g.add_argument("--max-edges", type=int, default=None)
    g.add_argument("--edge-prob", type=float, default=0.3)
    g.set_defaults(func=cmd_gen)

    for name, fn, hlp in [
        ("invariants", cmd_invariants, "alt_r, salt and cd_r of a hypergraph"),
        ("bounds", cmd_bounds, "lower bounds and exact chromatic number of KG^r(H)"),
    ]:
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--r", type=int, default=None)
        s.add_argument("--q", type=int, default=1)
        s.add_argument("--sigma-mode", choices=["exact", "heuristic", "identity"], default="exact")
        s.add_argument("--sigma", help="explicit ordering, comma separated")
        if name == "bounds":
            s.add_argument("--no-chi", action="store_true", help="skip the exact chromatic number")
        s.set_defaults(func=fn)

    c = sub.add_parser("chi", parents=[common], help="exact chromatic number of a hypergraph")
    c.set_defaults(func=cmd_chi)

    k = sub.add_parser("ktt", parents=[common], help="colors needed to avoid K^r_{t..t}")
    k.add_argument("--r", type=int, default=None)
    k.add_argument("--t", type=int, default=1)
    k.add_argument("--q", type=int, default=None)
    k.add_argument("--d", type=int, default=None)
    k.add_argument("--k", type=int, default=None, help="base is K_n^k: derive l, q and d")
    k.add_argument("--sigma")
    k.add_argument("--exact", action="store_true", help="also solve exactly (small inputs)")
    k.set_defaults(func=cmd_ktt)

    v = sub.add_parser("verify", parents=[common], help="lemma verification sweeps")
    v.add_argument("target", choices=["zptucker", "lemmain", "lemmainken", "sglemma", "altT", "reduction"])
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--k", type=int, default=None)
    v.add_argument("--r", type=int, default=None)
    v.add_argument("--l", type=int, default=0)
    v.add_argument("--q", type=int, default=1)
    v.add_argument("--t", type=int, default=1)
    v.add_argument("--d", type=int, default=None)
    v.add_argument("--p", type=int, default=2)
    v.add_argument("--m", type=int, default=3)
    v.add_argument("--alpha", type=int, default=1)
    v.add_argument("--max-colors", type=int, default=None)
    v.add_argument("--max-edges", type=int, default=6)
    v.add_argument("--sampled", action="store_true", help="sample colorings instead of all")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sample", parents=[common], help="random subhypergraphs of KG^r(H)")
    s.add_argument("--r", type=int, default=None)
    s.add_argument("--rho", type=float, required=True)
    s.set_defaults(func=cmd_sample)

    m = sub.add_parser("mc", parents=[common], help="Monte Carlo over random subhypergraphs")
    m.add_argument("kind", choices=["tail", "eventa"])
    m.add_argument("--r", type=int, default=None)
    m.add_argument("--rho", type=float, required=True)
    m.add_argument("--d", type=int, default=None)
    m.add_argument("--q", type=int, default=None)
    m.add_argument("--t", type=int, default=1)
    m.add_argument("--summary", help="write the JSON summary here instead of stderr")
    m.set_defaults(func=cmd_mc)

    g = sub.add_parser("margins", parents=[common], help="finite-n margins of asymptotic conditions")
    g.add_argument("--condition", choices=["I", "II", "SG"], required=True)
    g.add_argument("--k", required=True, help="k(n) as 'c,a,b' terms joined by '+'")
    g.add_argument("--l", default="0")
    g.add_argument("--r", dest="r_fn", default="2")
    g.add_argument("--rho", default="1")
    g.add_argument("--grid", default="100,1000,10000,100000,1000000")
    g.set_defaults(func=cmd_margins)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.monotonic()
    try:
        args.max_vertices = args.max_vertices or _env_int("KNESERLAB_MAX_VERTICES", None)
        if args.budget_ms is None:
            args.budget_ms = _env_int("KNESERLAB_BUDGET_MS", None)
        args.max_n = args.max_n or _env_int("KNESERLAB_MAX_N", 5)
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        code = args.func(args)
    except UsageError as exc:
        print(f"kneserlab: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except CapExceeded as exc:
        print(f"kneserlab: cap exceeded: {exc}", file=sys.stderr)
        code = EXIT_CAP
    except (ValueError, OSError) as exc:
        print(f"kneserlab: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest")}
    manifest = RunManifest(
        args.verb, params, getattr(args, "seed", None), _caps(args),
        wall_time_s=round(time.monotonic() - start, 6), exit_code=code,
    )
    if args.manifest:
        Path(args.manifest).write_text(manifest.to_json() + "\n")
    else:
        print(manifest.to_json(), file=sys.stderr)
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()
