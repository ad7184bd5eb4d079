"""Command-line front end.

Eight subcommands over the library: record computation, span scanning,
block-determinant checks, Schmidt-Summerer graphs, exponent estimation,
closed-form bound tables, the inequality audit, and height-product
scans.  Outputs are deterministic for a fixed configuration and seed:
floats are printed with 12 significant digits, exact quantities as
rational strings, and JSON objects with sorted keys.  Progress messages
go to standard error only, so the data channels stay machine-clean.

Exit codes: 0 success, 1 usage or precision problems, 2 certified
invariant violation (an exact contradiction in quantities the library
guarantees, which means a bug rather than interesting data).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import multiprocessing
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import SCHEMA, __version__
from .bestapprox import (
    DEFAULT_CAP,
    DEFAULT_VALUE_BITS,
    BestApproxSequence,
    best_approx_sequence,
)
from .errors import PolyApproxError
from .exponents import audit, bounds_table, estimate_exponents
from .numbers import NumberDescriptor, descriptor_from_dict
from .pgn import (
    DEFAULT_POOL_BUDGET,
    minkowski_check,
    ss_graph,
    sum_bound_constant,
)
from .polynomials import gelfond_scan, poly_gcd
from .presets import STOCK_NAMES, preset
from .spanconds import (
    phi,
    psi_estimate,
    span_rank,
    triple_from_records,
    triple_span_check,
)

CACHE_ENV = "POLYAPPROX_CACHE_DIR"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2


class UsageError(ValueError):
    """Bad flag combination or value; maps to exit code 1."""


@dataclass(frozen=True)
class RunConfig:
    """Validated numeric knobs shared by the subcommands."""

    subcommand: str
    n: Optional[int] = None
    m: Optional[int] = None
    h_max: Optional[int] = None
    h_pool: Optional[int] = None
    steps: Optional[int] = None
    cap: int = DEFAULT_CAP
    bits: int = DEFAULT_VALUE_BITS
    k0: int = 1
    threshold: int = 3
    jobs: int = 1
    seed: int = 0
    budget: Optional[int] = None

    def validate(self) -> "RunConfig":
        for name in ("n", "m", "h_max", "h_pool", "steps", "cap", "bits",
                     "k0", "threshold", "jobs", "budget"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise UsageError(f"--{name.replace('_', '')} must be >= 1")
        if self.seed < 0:
            raise UsageError("--seed must be >= 0")
        if self.m is not None and self.n is not None:
            if not self.n <= self.m <= 2 * self.n - 1:
                raise UsageError(
                    f"m = {self.m} outside [{self.n}, {2 * self.n - 1}]"
                )
        return self


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract reserves 2 for
    certified violations, so remap to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    """12 significant digits, locale-independent."""
    return format(float(x), ".12g")


def _jline(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _jdoc(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _progress(args, message: str) -> None:
    if not getattr(args, "quiet", False):
        print(message, file=sys.stderr, flush=True)


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    out = getattr(args, "out", None)
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _parse_int_list(text: str, flag: str) -> list:
    """Accepts '4', '2..10', and comma-separated mixtures."""
    values = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            a, _, b = part.partition("..")
            try:
                lo, hi = int(a), int(b)
            except ValueError:
                raise UsageError(f"{flag}: cannot parse range {part!r}")
            if lo > hi:
                raise UsageError(f"{flag}: empty range {part!r}")
            values.update(range(lo, hi + 1))
        else:
            try:
                values.add(int(part))
            except ValueError:
                raise UsageError(f"{flag}: cannot parse {part!r}")
    if not values:
        raise UsageError(f"{flag}: no values given")
    return sorted(values)


def _parse_window(text: str) -> tuple:
    """'3..K' style window; the upper end K means 'last usable index'."""
    a, sep, b = text.partition("..")
    if not sep:
        raise UsageError(f"--window: expected LO..HI, got {text!r}")
    try:
        lo = int(a)
    except ValueError:
        raise UsageError(f"--window: bad lower end {a!r}")
    if b.strip().upper() in ("K", "END", ""):
        return lo, None
    try:
        return lo, int(b)
    except ValueError:
        raise UsageError(f"--window: bad upper end {b!r}")


def _parse_fraction(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: cannot parse rational {text!r}")


def _load_descriptor(args) -> NumberDescriptor:
    if getattr(args, "preset", None):
        return preset(args.preset)
    path = getattr(args, "number", None)
    if path is None:
        raise UsageError("one of --preset or --number is required")
    with open(path) as fh:
        return descriptor_from_dict(json.load(fh))


def _sequence(args, desc: NumberDescriptor, n: int, h_max: int,
              cap: int, bits: int) -> BestApproxSequence:
    """Compute the record chain, with an optional on-disk cache keyed by
    the full configuration (set CACHE_ENV to a directory to enable)."""
    cache_dir = os.environ.get(CACHE_ENV)
    path = None
    if cache_dir:
        key = _jline({
            "schema": SCHEMA,
            "descriptor": desc.to_dict(),
            "n": n,
            "h_max": h_max,
            "cap": cap,
            "value_bits": bits,
        })
        digest = hashlib.sha256(key.encode()).hexdigest()[:32]
        path = os.path.join(cache_dir, f"seq-{digest}.json")
        if os.path.exists(path):
            try:
                with open(path) as fh:
                    return BestApproxSequence.from_dict(json.load(fh))
            except (ValueError, KeyError, TypeError) as exc:
                _progress(args, f"cache entry unusable ({exc}); recomputing")
    _progress(args, f"records: n={n} H<={h_max} cap={cap}")
    seq = best_approx_sequence(desc, n, h_max, cap=cap, value_bits=bits)
    if path is not None:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = f"{path}.{os.getpid()}.tmp"
        with open(tmp, "w") as fh:
            json.dump(seq.to_dict(), fh)
        os.replace(tmp, path)
    return seq


def _interval_fields(iv) -> dict:
    return {"lo": str(iv.lo), "hi": str(iv.hi), "float": _fmt(iv.mid)}


# ---------------------------------------------------------------- bounds


def cmd_bounds(args) -> int:
    ns = _parse_int_list(args.n, "--n")
    RunConfig("bounds", n=max(ns)).validate()
    if args.t.strip().lower() == "auto":
        ts = None
    else:
        ts = [_parse_fraction(p, "--t") for p in args.t.split(",") if p.strip()]
    header = "n,t,theta,sigma,w_root,maxroot_cap,d_bound,e_bound"
    lines = [header]
    for n in ns:
        table = bounds_table(n, ts)
        d_at = dict(table.dbound_at)
        e_at = dict(table.ebound_at)
        t_keys = [k for k, _ in table.dbound_at] or [""]
        w_cell = "" if table.w_of_n != table.w_of_n else _fmt(table.w_of_n)
        cap_cell = (
            "" if table.maxroot_cap != table.maxroot_cap
            else _fmt(table.maxroot_cap)
        )
        for t in t_keys:
            lines.append(",".join([
                str(n),
                t,
                _fmt(table.theta),
                _fmt(table.sigma),
                w_cell,
                cap_cell,
                _fmt(d_at[t]) if t in d_at else "",
                _fmt(e_at[t]) if t in e_at else "",
            ]))
    _emit(args, "\n".join(lines))
    return EXIT_OK


# ----------------------------------------------------------- best-approx


def cmd_best_approx(args) -> int:
    cfg = RunConfig("best-approx", n=args.n, h_max=args.hmax,
                    cap=args.cap, bits=args.bits).validate()
    desc = _load_descriptor(args)
    seq = _sequence(args, desc, cfg.n, cfg.h_max, cfg.cap, cfg.bits)
    lines = [_jline({
        "schema": SCHEMA,
        "op": "best-approx",
        "descriptor": desc.to_dict(),
        "n": seq.n,
        "h_max": seq.h_max,
        "cap": seq.cap,
        "value_bits": seq.value_bits,
        "records": len(seq),
        "warnings": list(seq.warnings),
        "ties": list(seq.ties),
    })]
    for rec in seq.records:
        lines.append(_jline({
            "k": rec.k,
            "poly": str(rec.poly),
            "coeffs": list(rec.poly.coeffs),
            "height": rec.height,
            "value_lo": str(rec.value.lo),
            "value_hi": str(rec.value.hi),
            "value": _fmt(rec.value.mid),
        }))
    _emit(args, "\n".join(lines))
    return EXIT_OK


# ------------------------------------------------------------- span-scan


def _span_row(seq: BestApproxSequence, k: int) -> tuple:
    """Everything the scan needs at one record index."""
    n = seq.n
    m_lo = -(-3 * n // 2) - 1
    m_hi = 2 * n - 1
    coprime = poly_gcd(seq.record(k - 1).poly, seq.record(k).poly).degree == 0
    ranks = tuple(span_rank(seq, k, m) for m in range(m_lo, m_hi + 1))
    phi_val = phi(triple_from_records(seq, k)) if n % 2 == 0 else None
    return k, coprime, ranks, phi_val


_WORKER_SEQ: Optional[BestApproxSequence] = None


def _span_worker_init(seq_data: dict) -> None:
    global _WORKER_SEQ
    _WORKER_SEQ = BestApproxSequence.from_dict(seq_data)


def _span_worker(k: int) -> tuple:
    return _span_row(_WORKER_SEQ, k)


def cmd_span_scan(args) -> int:
    cfg = RunConfig("span-scan", n=args.n, h_max=args.hmax, cap=args.cap,
                    bits=args.bits, threshold=args.threshold,
                    jobs=args.jobs).validate()
    desc = _load_descriptor(args)
    seq = _sequence(args, desc, cfg.n, cfg.h_max, cfg.cap, cfg.bits)
    lo, hi = _parse_window(args.window)
    if hi is None:
        hi = len(seq) - 1
    lo = max(lo, 2)
    hi = min(hi, len(seq) - 1)
    if lo > hi:
        raise UsageError(
            f"window [{lo}, {hi}] is empty for a chain of {len(seq)} records"
        )
    ks = list(range(lo, hi + 1))
    n = seq.n
    m_lo = -(-3 * n // 2) - 1
    m_hi = 2 * n - 1

    _progress(args, f"span scan: k in [{lo}, {hi}], jobs={cfg.jobs}")
    if cfg.jobs > 1:
        with multiprocessing.Pool(
            cfg.jobs, initializer=_span_worker_init, initargs=(seq.to_dict(),)
        ) as pool:
            rows = pool.map(_span_worker, ks)
    else:
        rows = [_span_row(seq, k) for k in ks]
    rows.sort(key=lambda r: r[0])

    per_m = {m: [] for m in range(m_lo, m_hi + 1)}
    per_m_coprime = {m: [] for m in range(m_lo, m_hi + 1)}
    for k, coprime, ranks, _ in rows:
        for m, rank in zip(range(m_lo, m_hi + 1), ranks):
            if rank == m + 1:
                per_m[m].append(k)
                if coprime:
                    per_m_coprime[m].append(k)

    def least(table: dict) -> Optional[int]:
        for m in range(m_lo, m_hi + 1):
            if len(table[m]) >= cfg.threshold:
                return m
        return None

    summary = {
        "schema": SCHEMA,
        "op": "span-scan",
        "descriptor": desc.to_dict(),
        "n": n,
        "h_max": seq.h_max,
        "window": [lo, hi],
        "threshold": cfg.threshold,
        "per_m": {str(m): ks_ for m, ks_ in per_m.items()},
        "per_m_coprime": {str(m): ks_ for m, ks_ in per_m_coprime.items()},
        "psi_hat": least(per_m),
        "psi_tilde_hat": least(per_m_coprime),
        "finite_window": True,
    }
    _emit(args, _jdoc(summary))

    if args.csv:
        lines = ["k,m,rank,full,coprime,phi"]
        for k, coprime, ranks, phi_val in rows:
            for m, rank in zip(range(m_lo, m_hi + 1), ranks):
                phi_cell = str(phi_val) if phi_val is not None and m == m_lo else ""
                lines.append(",".join([
                    str(k), str(m), str(rank),
                    str(int(rank == m + 1)), str(int(coprime)), phi_cell,
                ]))
        with open(args.csv, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    return EXIT_OK


# ------------------------------------------------------------ lambda-det


def cmd_lambda_det(args) -> int:
    cfg = RunConfig("lambda-det", n=args.n, h_max=args.hmax,
                    cap=args.cap, bits=args.bits).validate()
    if cfg.n % 2 != 0:
        raise UsageError(f"block determinant needs even n, got {cfg.n}")
    desc = _load_descriptor(args)
    seq = _sequence(args, desc, cfg.n, cfg.h_max, cfg.cap, cfg.bits)
    if args.k.strip().lower() == "all":
        ks = list(range(2, len(seq)))
    else:
        ks = _parse_int_list(args.k, "--k")
    lines = [_jline({
        "schema": SCHEMA,
        "op": "lambda-det",
        "descriptor": desc.to_dict(),
        "n": seq.n,
        "h_max": seq.h_max,
        "indices": ks,
    })]
    disagreement = False
    for k in ks:
        triple = triple_from_records(seq, k)
        check = triple_span_check(triple)
        answers = (check["phi_nonzero"], check["span_full"],
                   check["kernel_trivial"])
        agree = len(set(answers)) == 1
        disagreement = disagreement or not agree
        witness = check["witness"]
        lines.append(_jline({
            "k": k,
            "heights": [seq.record(k + d).height for d in (-1, 0, 1)],
            "phi": str(check["phi"]),
            "phi_nonzero": check["phi_nonzero"],
            "span_full": check["span_full"],
            "kernel_trivial": check["kernel_trivial"],
            "agree": agree,
            "witness": (
                [list(p.coeffs) for p in witness] if witness else None
            ),
        }))
    _emit(args, "\n".join(lines))
    if disagreement:
        # The three routes are provably equivalent; disagreement is a bug.
        print("error: span-condition routes disagree", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


# -------------------------------------------------------------- ss-graph


def cmd_ss_graph(args) -> int:
    cfg = RunConfig("ss-graph", m=args.m, n=args.m, h_pool=args.hpool,
                    steps=args.steps, cap=args.cap, bits=args.bits,
                    budget=args.budget).validate()
    desc = _load_descriptor(args)
    q_min = _parse_fraction(args.qmin, "--qmin")
    q_max = _parse_fraction(args.qmax, "--qmax")
    _progress(
        args,
        f"graph: m={cfg.m} H_pool<={cfg.h_pool} q in [{q_min}, {q_max}] "
        f"({cfg.steps} steps)",
    )
    graph = ss_graph(cfg.m, desc, q_min, q_max, cfg.steps, cfg.h_pool,
                     bits=cfg.bits, cap=cfg.cap, budget=cfg.budget)
    manifest = {
        "schema": SCHEMA,
        "op": "ss-graph",
        "descriptor": desc.to_dict(),
        "m": cfg.m,
        "h_pool": cfg.h_pool,
        "q_min": str(q_min),
        "q_max": str(q_max),
        "steps": cfg.steps,
        "sum_bound_constant": _fmt(sum_bound_constant(cfg.m, desc, cfg.bits)),
        "certified_samples": len(graph.certified_samples()),
    }
    if graph.certified_samples():
        mk = minkowski_check(graph)
        manifest["minkowski"] = {
            "sup_abs_sum": _fmt(mk["sup_abs_sum"]),
            "min_residual": _fmt(mk["min_residual"]),
            "certified_count": mk["certified_count"],
        }
    header = ["q"]
    header += [f"L{j}" for j in range(1, cfg.m + 2)]
    header += ["certified"]
    header += [f"witness_{j}" for j in range(1, cfg.m + 2)]
    lines = [_jline(manifest), ",".join(header)]
    for sample in graph.samples:
        cells = [_fmt(sample.q)]
        cells += [_fmt(v.mid) for v in sample.values]
        cells += [str(int(sample.certified))]
        cells += [f"\"{p}\"" for p in sample.witnesses]
        lines.append(",".join(cells))
    _emit(args, "\n".join(lines))
    return EXIT_OK


# ------------------------------------------------------------- exponents


def cmd_exponents(args) -> int:
    cfg = RunConfig("exponents", n=args.n, h_max=args.hmax, cap=args.cap,
                    bits=args.bits, k0=args.k0).validate()
    desc = _load_descriptor(args)
    seq = _sequence(args, desc, cfg.n, cfg.h_max, cfg.cap, cfg.bits)
    est = estimate_exponents(seq, k0=cfg.k0)
    doc = {
        "schema": SCHEMA,
        "op": "exponents",
        "descriptor": desc.to_dict(),
        "estimate": est.to_dict(),
        "w_lower_interval": _interval_fields(est.w_lower_interval),
        "what_proxy_interval": _interval_fields(est.what_proxy_interval),
        "w_rows": [
            {"k": r.k, "height": r.height, "ratio": _interval_fields(r.ratio)}
            for r in est.w_rows
        ],
        "u_rows": [
            {
                "k": r.k,
                "height": r.height,
                "next_height": r.next_height,
                "ratio": _interval_fields(r.ratio),
            }
            for r in est.u_rows
        ],
    }
    _emit(args, _jdoc(doc))
    return EXIT_OK


# ----------------------------------------------------------------- audit


def cmd_audit(args) -> int:
    cfg = RunConfig("audit", n=args.n, h_max=args.hmax, cap=args.cap,
                    bits=args.bits, k0=args.k0,
                    threshold=args.threshold).validate()
    desc = _load_descriptor(args)
    seq = _sequence(args, desc, cfg.n, cfg.h_max, cfg.cap, cfg.bits)
    est = estimate_exponents(seq, k0=cfg.k0)

    span = None
    if args.with_span:
        try:
            span = psi_estimate(seq, threshold=cfg.threshold)
        except PolyApproxError as exc:
            _progress(args, f"span scan skipped: {exc}")

    est_prev = None
    if args.with_prev:
        if cfg.n < 2:
            raise UsageError("--with-prev needs n >= 2")
        prev_seq = _sequence(args, desc, cfg.n - 1, cfg.h_max, cfg.cap,
                             cfg.bits)
        est_prev = estimate_exponents(prev_seq, k0=cfg.k0)

    algebraic_degree = args.algebraic_degree
    if algebraic_degree is None:
        d = desc.to_dict()
        if d.get("kind") == "algebraic":
            algebraic_degree = len(d["minpoly"]) - 1

    report = audit(est, span=span, est_prev=est_prev,
                   algebraic_degree=algebraic_degree)
    if args.json:
        _emit(args, _jdoc({
            "schema": SCHEMA,
            "op": "audit",
            "descriptor": desc.to_dict(),
            "report": report.to_dict(),
        }))
    else:
        _emit(args, report.to_text())
    if report.has_violation:
        print("error: certified invariant violation", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


# --------------------------------------------------------------- gelfond


def cmd_gelfond(args) -> int:
    cfg = RunConfig("gelfond", n=args.n, h_max=args.hmax,
                    seed=args.seed).validate()
    samples = None if args.samples == 0 else args.samples
    if samples is not None and samples < 1:
        raise UsageError("--samples must be >= 0 (0 means exhaustive)")
    mode = "exhaustive" if samples is None else f"{samples} random pairs"
    _progress(args, f"height products: n={cfg.n} H<={cfg.h_max} ({mode})")
    scan = gelfond_scan(cfg.n, cfg.h_max, sample_count=samples,
                        rng_seed=cfg.seed)
    _emit(args, _jdoc({
        "schema": SCHEMA,
        "op": "gelfond",
        "n": scan.n,
        "h_max": scan.h_max,
        "pairs": scan.count,
        "seed": cfg.seed if samples is not None else None,
        "min_ratio": str(scan.min_ratio),
        "min_ratio_float": _fmt(scan.min_ratio),
        "max_ratio": str(scan.max_ratio),
        "max_ratio_float": _fmt(scan.max_ratio),
        "min_witness": [str(p) for p in scan.min_witness],
        "max_witness": [str(p) for p in scan.max_witness],
    }))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_number_flags(p) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=STOCK_NAMES,
                       help="stock number by name")
    group.add_argument("--number", metavar="FILE",
                       help="JSON number descriptor")


def _add_sequence_flags(p, n_required: bool = True) -> None:
    p.add_argument("--n", type=int, required=n_required,
                   help="degree bound")
    p.add_argument("--hmax", type=int, required=True, help="height bound")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="refinement precision cap in bits")
    p.add_argument("--bits", type=int, default=DEFAULT_VALUE_BITS,
                   help="certified value width in bits")


def _add_common_flags(p) -> None:
    p.add_argument("--out", metavar="FILE",
                   help="output path (default: stdout)")
    p.add_argument("--quiet", action="store_true",
                   help="suppress progress messages")


def build_parser() -> _Parser:
    parser = _Parser(prog="polyapprox",
                     description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__} ({SCHEMA})")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("best-approx",
                       help="certified best-approximation record chain")
    _add_number_flags(p)
    _add_sequence_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_best_approx)

    p = sub.add_parser("span-scan",
                       help="full-span witnesses over a window of records")
    _add_number_flags(p)
    _add_sequence_flags(p)
    p.add_argument("--window", default="2..K",
                   help="record index window LO..HI (K = last usable)")
    p.add_argument("--threshold", type=int, default=3,
                   help="witness count that settles psi_hat")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for the rank computations")
    p.add_argument("--csv", metavar="FILE",
                   help="also write the per-(k, m) rank table")
    _add_common_flags(p)
    p.set_defaults(func=cmd_span_scan)

    p = sub.add_parser("lambda-det",
                       help="block-determinant span certificates")
    _add_number_flags(p)
    _add_sequence_flags(p)
    p.add_argument("--k", default="all",
                   help="record indices ('all' or list like 3,4 or 3..9)")
    _add_common_flags(p)
    p.set_defaults(func=cmd_lambda_det)

    p = sub.add_parser("ss-graph",
                       help="successive-minima graph over a q grid")
    _add_number_flags(p)
    p.add_argument("--m", type=int, required=True, help="dimension bound")
    p.add_argument("--qmin", required=True, help="grid start (rational)")
    p.add_argument("--qmax", required=True, help="grid end (rational)")
    p.add_argument("--steps", type=int, default=16, help="grid intervals")
    p.add_argument("--hpool", type=int, required=True,
                   help="candidate pool height bound")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--bits", type=int, default=64)
    p.add_argument("--budget", type=int, default=DEFAULT_POOL_BUDGET,
                   help="candidate evaluation budget")
    _add_common_flags(p)
    p.set_defaults(func=cmd_ss_graph)

    p = sub.add_parser("exponents",
                       help="finite-horizon exponent estimates")
    _add_number_flags(p)
    _add_sequence_flags(p)
    p.add_argument("--k0", type=int, default=1,
                   help="first index of the uniform-proxy window")
    _add_common_flags(p)
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("bounds", help="closed-form bound table (CSV)")
    p.add_argument("--n", required=True,
                   help="degrees ('4', '2..10', or comma list)")
    p.add_argument("--t", default="auto",
                   help="'auto' or comma-separated rational t values")
    _add_common_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("audit",
                       help="hold the data against the known inequalities")
    _add_number_flags(p)
    _add_sequence_flags(p)
    p.add_argument("--k0", type=int, default=1)
    p.add_argument("--with-span", action="store_true",
                   help="also run the span scan and gate the span rows")
    p.add_argument("--with-prev", action="store_true",
                   help="also estimate at n-1 for the growth-gated rows")
    p.add_argument("--threshold", type=int, default=3)
    p.add_argument("--algebraic-degree", type=int, default=None,
                   help="override the descriptor's algebraic degree")
    p.add_argument("--json", action="store_true",
                   help="emit JSON instead of the text report")
    _add_common_flags(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("gelfond",
                       help="height-product ratio extremes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--hmax", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000,
                   help="random pair count (0 = exhaustive)")
    p.add_argument("--seed", type=int, default=0)
    _add_common_flags(p)
    p.set_defaults(func=cmd_gelfond)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolyApproxError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
