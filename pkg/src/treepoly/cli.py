"""Command-line entry point.

Subcommands:

    enumerate   build/resume the store up to --max-n
    poly        canonical code, coefficients, and predicates of one tree
    canon       canonical code only
    verify      audit a sealed store (flags, invariants, brute-force oracle)
    analyze     write reports (histogram | duplicates | special | all)

Exit codes are a stable scripting contract: 0 success, 1 verification
failure (including count mismatches and overflow), 2 usage or input error,
3 store/IO error. The store path may come from --store or the
TREEPOLY_STORE environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import analysis, poly
from .canon import decode, free_code, rooted_code
from .enumeration import expected_total, run
from .errors import (
    CoefficientOverflowError,
    CountMismatchError,
    EdgeListParseError,
    InvalidCodeError,
    StoreCorruptionError,
    TreepolyError,
    UnsealedLevelError,
)
from .indpoly import brute_force_polynomial, independence_polynomial
from .store import Store
from .tree import degree_sequence, parse_edge_list

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_STORE = 3

# Dedup memory grows with level size; the cap stops accidental week-long
# runs. 30 is the absolute ceiling where codes still fit 64-bit lanes.
DEFAULT_HARD_CAP = 22
ABSOLUTE_CAP = 30


@dataclass
class RunConfig:
    max_n: int = 20
    store_path: str = ""
    workers: int = 0  # 0 = available parallelism
    resume: bool = True
    oracle_max_n: int = 12
    hard_cap: int = DEFAULT_HARD_CAP


def _store_path(args) -> Path:
    path = args.store or os.environ.get("TREEPOLY_STORE", "")
    if not path:
        raise EdgeListParseError("no store path: pass --store or set TREEPOLY_STORE")
    return Path(path)


def cmd_enumerate(config: RunConfig) -> int:
    if config.hard_cap > ABSOLUTE_CAP:
        print(f"error: hard cap {config.hard_cap} exceeds ceiling {ABSOLUTE_CAP}", file=sys.stderr)
        return EXIT_USAGE
    if not (0 <= config.max_n <= config.hard_cap):
        print(
            f"error: max-n {config.max_n} outside 0..{config.hard_cap} "
            "(raise --hard-cap to go further)",
            file=sys.stderr,
        )
        return EXIT_USAGE
    store = Store(config.store_path)
    if not config.resume and store.max_sealed() >= 0:
        print(
            "error: store already holds sealed levels; --no-resume requires a fresh directory",
            file=sys.stderr,
        )
        return EXIT_STORE
    if store.max_sealed() >= config.max_n:
        print("all levels sealed", file=sys.stderr)
    summary = run(config.max_n, store, workers=config.workers or None)
    total = summary.total
    print(f"levels sealed through n={config.max_n}")
    for n in sorted(summary.level_counts):
        print(f"  n={n}: {summary.level_counts[n]}")
    print(f"total trees (n=1..{config.max_n}): {total} (+P0 = {summary.total_with_empty})")
    known = expected_total(config.max_n)
    if known is not None and known != total:
        print(f"error: total {total} does not match expected {known}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_poly(edge_list_path: str) -> int:
    text = Path(edge_list_path).read_text(encoding="ascii")
    t = parse_edge_list(text)
    uid = free_code(t) if t.n else ""
    coeffs = independence_polynomial(t)
    print(f"uid: {uid}")
    print(f"n: {t.n}")
    print(f"degrees: {','.join(str(d) for d in degree_sequence(t))}")
    print(f"coeffs: {poly.serialize(coeffs)}")
    print(f"unimodal: {1 if poly.is_unimodal(coeffs) else 0}")
    print(f"log_concave: {1 if poly.is_log_concave(coeffs) else 0}")
    print(f"symmetric: {1 if poly.is_symmetric(coeffs) else 0}")
    print(f"fibonacci: {1 if poly.is_fibonacci(coeffs) else 0}")
    print(f"monotonic: {poly.is_monotonic(coeffs)}")
    print(f"argmax: {poly.argmax_lowest(coeffs)}")
    return EXIT_OK


def cmd_canon(edge_list_path: str) -> int:
    t = parse_edge_list(Path(edge_list_path).read_text(encoding="ascii"))
    print(free_code(t) if t.n else "")
    return EXIT_OK


def cmd_verify(store_path: Path, oracle_max_n: int) -> int:
    store = Store(store_path, create=False)
    top = store.max_sealed()
    if top < 0:
        raise UnsealedLevelError("store holds no sealed levels")
    bad: list[str] = []
    for n in range(0, top + 1):
        for rec in store.fetch_level(n):
            try:
                rec.validate()
            except TreepolyError:
                bad.append(rec.uid)
                continue
            if n == 0:
                continue
            t = decode(rec.uid)
            if rooted_code(t) != rec.uid:
                bad.append(rec.uid)
                continue
            if n <= oracle_max_n and brute_force_polynomial(t) != rec.coeffs:
                bad.append(rec.uid)
    non_uni, non_lc = analysis.verify_flags(store, (0, top))
    print(f"non-unimodal: {non_uni}, non-log-concave: {non_lc}")
    print(f"records audited through n={top}; oracle checked through n={min(top, oracle_max_n)}")
    if bad:
        print(f"{len(bad)} corrupt record(s):", file=sys.stderr)
        for uid in bad:
            print(f"  {uid}", file=sys.stderr)
        return EXIT_VERIFY
    print("verify: ok")
    return EXIT_OK


def cmd_analyze(store_path: Path, report: str, n_range: tuple[int, int] | None) -> int:
    store = Store(store_path, create=False)
    names = analysis.REPORT_NAMES if report == "all" else (report,)
    for name in names:
        scope = n_range or analysis.default_scope(store, include_empty=(name == "histogram"))
        rep = analysis.REPORT_BUILDERS[name](store, scope)
        out = rep.write(store.path)
        rep.print_table()
        print(f"wrote {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treepoly",
        description="Exhaustive unlabeled-tree enumeration with exact independence polynomials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="build or resume a store")
    p_enum.add_argument("--max-n", type=int, default=20)
    p_enum.add_argument("--store", default="")
    p_enum.add_argument("--workers", type=int, default=0)
    p_enum.add_argument("--no-resume", action="store_true")
    p_enum.add_argument("--hard-cap", type=int, default=DEFAULT_HARD_CAP)

    p_poly = sub.add_parser("poly", help="code, polynomial, and predicates of one tree")
    p_poly.add_argument("edge_list", help="edge-list file, one '<u> <v>' pair per line")

    p_canon = sub.add_parser("canon", help="canonical code of one tree")
    p_canon.add_argument("edge_list")

    p_verify = sub.add_parser("verify", help="audit a sealed store")
    p_verify.add_argument("--store", default="")
    p_verify.add_argument("--oracle-max-n", type=int, default=12)

    p_an = sub.add_parser("analyze", help="write analysis reports")
    p_an.add_argument("--store", default="")
    p_an.add_argument("--report", choices=("histogram", "duplicates", "special", "all"), default="all")
    p_an.add_argument("--min-n", type=int, default=None)
    p_an.add_argument("--max-n", type=int, default=None)
    p_an.add_argument("--only-n", type=int, default=None)
    return parser


def _analyze_range(args) -> tuple[int, int] | None:
    if args.only_n is not None:
        return (args.only_n, args.only_n)
    if args.min_n is None and args.max_n is None:
        return None
    store = Store(_store_path(args), create=False)
    lo = args.min_n if args.min_n is not None else 0
    hi = args.max_n if args.max_n is not None else store.max_sealed()
    return (lo, hi)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "enumerate":
            config = RunConfig(
                max_n=args.max_n,
                store_path=str(_store_path(args)),
                workers=args.workers,
                resume=not args.no_resume,
                hard_cap=args.hard_cap,
            )
            return cmd_enumerate(config)
        if args.command == "poly":
            return cmd_poly(args.edge_list)
        if args.command == "canon":
            return cmd_canon(args.edge_list)
        if args.command == "verify":
            return cmd_verify(_store_path(args), args.oracle_max_n)
        if args.command == "analyze":
            return cmd_analyze(_store_path(args), args.report, _analyze_range(args))
        return EXIT_USAGE
    except (EdgeListParseError, InvalidCodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CountMismatchError, CoefficientOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (StoreCorruptionError, UnsealedLevelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STORE


if __name__ == "__main__":
    sys.exit(main())
