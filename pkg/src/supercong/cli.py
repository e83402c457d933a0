"""Command-line front end.

Subcommands
-----------
verify thm12|thm11|lemmas|wolstenholme|proofsteps
    Run one statement family over a parameter grid; report lines go to
    --out (default stdout), a human summary to stderr.
sweep --all
    Everything at the default acceptance-grid caps per statement family.
explore
    Observed valuation of the main sum at a chosen precision (asserts
    nothing, always exits 0).
oracle
    The exact-rational brute-force sum, its valuation, and a cross-check
    against the ring computation.

Exit codes: 0 all asserted checks pass, 1 at least one failed, 2 usage or
parameter error.

Reports are JSON-Lines, one record per line with a fixed key order, no
floating-point fields, and residues as decimal strings (they outgrow 64-bit
integers at large p^5).  The ``micros`` field is serialized as 0 so report
files are byte-identical across runs and worker counts; wall-clock timing
is reported on stderr instead.  Records with ``required`` 0 are
observational and never affect the exit code.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from .congruences import StatementId
from .exact import exact_theorem12_sum, padic_valuation
from .ring import RingCtx
from .sweep import (
    ACCEPTANCE_P_MAX,
    DEFAULT_M_RANGE,
    DEFAULT_P_MAX,
    DEFAULT_P_MIN,
    DEFAULT_Q_RANGE,
    Grid,
    explore_valuation,
    parity_admissible,
    run_grid,
    summarize,
)
from . import exact

REPORT_KEYS = (
    "statement", "p", "m", "q", "n", "k",
    "modulus_exp", "residue", "valuation", "required", "pass", "micros",
)

FAMILIES = {
    "thm12": (StatementId.THM12,),
    "thm11": (StatementId.THM11_A, StatementId.THM11_B),
    "wolstenholme": (StatementId.WOLSTENHOLME_H, StatementId.WOLSTENHOLME_B),
    "lemmas": (
        StatementId.LEMMA21, StatementId.LEMMA22, StatementId.LEMMA23_A,
        StatementId.LEMMA23_B, StatementId.REFLECTION, StatementId.POWER_SUM,
    ),
    "proofsteps": (
        StatementId.PROOF_STEP, StatementId.HALFSUM,
        StatementId.CENTRAL_IDENTITY,
    ),
}


# ---------------------------------------------------------------------------
# Report serialization (canonical: fixed key order, compact separators)


def record_to_obj(record) -> dict:
    return {
        "statement": record.statement.name,
        "p": record.p,
        "m": record.m,
        "q": record.q,
        "n": record.n,
        "k": record.k,
        "modulus_exp": record.modulus_exp,
        "residue": str(record.residue),
        "valuation": record.valuation,
        "required": record.required,
        "pass": record.passed,
        "micros": 0,
    }


def obj_to_line(obj: dict) -> str:
    ordered = {key: obj[key] for key in REPORT_KEYS}
    return json.dumps(ordered, separators=(",", ":"), ensure_ascii=False)


def record_to_line(record) -> str:
    return obj_to_line(record_to_obj(record))


def parse_report_line(line: str) -> dict:
    obj = json.loads(line)
    missing = [key for key in REPORT_KEYS if key not in obj]
    if missing:
        raise ValueError(f"report line missing keys {missing}")
    return obj


def write_report(records, out_path: str | None, csv_path: str | None) -> None:
    lines = [record_to_line(r) for r in records]
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write("".join(line + "\n" for line in lines))
    else:
        for line in lines:
            print(line)
    if csv_path:
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(REPORT_KEYS)
            for record in records:
                obj = record_to_obj(record)
                writer.writerow(["" if obj[k] is None else obj[k] for k in REPORT_KEYS])


# ---------------------------------------------------------------------------
# Shared option plumbing


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    lo = int(lo)
    hi = int(hi) if sep else lo
    if hi < lo:
        raise ValueError(f"range {text!r} is descending")
    return lo, hi


def default_jobs() -> int:
    return max(1, int(os.environ.get("SUPERCONG_JOBS", "1")))


def add_output_flags(sub):
    sub.add_argument("--jobs", type=int, default=None,
                     help="worker processes (default $SUPERCONG_JOBS or 1)")
    sub.add_argument("--out", metavar="FILE", help="write JSON-Lines report here")
    sub.add_argument("--csv", metavar="FILE",
                     help="also write a lossy CSV view of the report")


def reject_excluded_pairs(m_range, q_range) -> list[tuple[int, int]]:
    return [
        (m, q)
        for m in range(m_range[0], m_range[1] + 1)
        for q in range(q_range[0], q_range[1] + 1)
        if not parity_admissible(m, q)
    ]


def run_and_report(grid: Grid, args) -> int:
    jobs = args.jobs if args.jobs else default_jobs()
    started = time.perf_counter()
    records = run_grid(grid, parallelism=jobs)
    elapsed = time.perf_counter() - started
    write_report(records, args.out, args.csv)
    summary = summarize(records)
    print(f"{summary} ({elapsed:.2f}s, jobs={jobs})", file=sys.stderr)
    for record in records:
        if record.required > 0 and not record.passed:
            print(f"FAIL: {record_to_line(record)}", file=sys.stderr)
    return 0 if summary.failed == 0 else 1


# ---------------------------------------------------------------------------
# Subcommand handlers


def cmd_verify(args) -> int:
    family = args.family
    statements = frozenset(FAMILIES[family])
    strict_pairs = family in ("thm12", "proofsteps")
    if strict_pairs:
        excluded = reject_excluded_pairs(args.m, args.q)
        if excluded:
            print(
                f"excluded parameter pairs (m odd, q even): {excluded}; the"
                " statement's hypothesis needs m even or q odd. Use `explore`"
                " for observational valuations, or `sweep` to run the"
                " admissible subset of a rectangle.",
                file=sys.stderr,
            )
            return 2
    grid = Grid(
        statements=statements,
        m_range=args.m,
        q_range=args.q,
        p_min=args.pmin,
        p_max=args.pmax,
        e_override=getattr(args, "modexp", None),
    )
    return run_and_report(grid, args)


def cmd_sweep(args) -> int:
    if not args.all:
        print("sweep requires --all (run everything)", file=sys.stderr)
        return 2
    common = dict(
        m_range=args.m, q_range=args.q, p_min=args.pmin,
        e_override=args.modexp, include_excluded=args.include_excluded,
    )
    if args.pmax is not None:
        grids = [Grid(statements=frozenset(StatementId), p_max=args.pmax, **common)]
    else:
        # Group consecutive statements sharing an acceptance cap so the
        # concatenated report stays globally sorted by ordering key.
        grids = []
        block: list[StatementId] = []
        for statement in StatementId:
            if block and ACCEPTANCE_P_MAX[statement] != ACCEPTANCE_P_MAX[block[-1]]:
                grids.append(Grid(statements=frozenset(block),
                                  p_max=ACCEPTANCE_P_MAX[block[-1]], **common))
                block = []
            block.append(statement)
        grids.append(Grid(statements=frozenset(block),
                          p_max=ACCEPTANCE_P_MAX[block[-1]], **common))
    jobs = args.jobs if args.jobs else default_jobs()
    started = time.perf_counter()
    records = []
    for grid in grids:
        records.extend(run_grid(grid, parallelism=jobs))
    elapsed = time.perf_counter() - started
    write_report(records, args.out, args.csv)
    summary = summarize(records)
    print(f"{summary} ({elapsed:.2f}s, jobs={jobs})", file=sys.stderr)
    for record in records:
        if record.required > 0 and not record.passed:
            print(f"FAIL: {record_to_line(record)}", file=sys.stderr)
    return 0 if summary.failed == 0 else 1


def cmd_explore(args) -> int:
    report = explore_valuation(args.m, args.q, args.p, args.emax)
    line = record_to_line(report.as_record())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(line + "\n")
    else:
        print(line)
    print(
        f"observed valuation of the main sum at (m={args.m}, q={args.q},"
        f" p={args.p}), precision e={args.emax}: {report.valuation}"
        " (observational, nothing asserted)",
        file=sys.stderr,
    )
    return 0


def cmd_oracle(args) -> int:
    m, q, p = args.m, args.q, args.p
    value = exact_theorem12_sum(m, q, p)
    valuation = padic_valuation(value, p)
    ring_residue = exact.reduce_mod(value, RingCtx(p, 3)).residue
    from .congruences import theorem12_residue

    fast_residue = theorem12_residue(m, q, p).residue
    agrees = ring_residue == fast_residue
    print(f"exact sum = {value}")
    print(f"p-adic valuation at p={p}: {valuation} (required >= 3)")
    print(f"exact sum reduced into Z/{p}^3: {ring_residue}")
    print(f"ring-computed residue:         {fast_residue}")
    print("ring agrees" if agrees else "RING DISAGREES")
    return 0 if agrees and valuation >= 3 else 1


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercong",
        description="Verify binomial-sum supercongruences over parameter grids.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run one statement family")
    families = verify.add_subparsers(dest="family", required=True)

    thm12 = families.add_parser("thm12", help="main mod-p^3 supercongruence")
    thm12.add_argument("--m", type=parse_range, required=True, metavar="A[..B]")
    thm12.add_argument("--q", type=parse_range, required=True, metavar="C[..D]")
    thm12.add_argument("--pmin", type=int, default=DEFAULT_P_MIN)
    thm12.add_argument("--pmax", type=int, default=DEFAULT_P_MAX)
    thm12.add_argument("--modexp", type=int, default=None,
                       help="compute in Z/p^E (E >= 3; default 3)")
    add_output_flags(thm12)

    thm11 = families.add_parser("thm11", help="both mod-p^5 congruences")
    thm11.add_argument("--pmin", type=int, default=DEFAULT_P_MIN)
    thm11.add_argument("--pmax", type=int,
                       default=ACCEPTANCE_P_MAX[StatementId.THM11_A])
    thm11.set_defaults(m=DEFAULT_M_RANGE, q=DEFAULT_Q_RANGE)
    add_output_flags(thm11)

    wol = families.add_parser("wolstenholme", help="classical mod-p^2/p^3 pair")
    wol.add_argument("--pmin", type=int, default=DEFAULT_P_MIN)
    wol.add_argument("--pmax", type=int,
                     default=ACCEPTANCE_P_MAX[StatementId.WOLSTENHOLME_H])
    wol.set_defaults(m=DEFAULT_M_RANGE, q=DEFAULT_Q_RANGE)
    add_output_flags(wol)

    lemmas = families.add_parser(
        "lemmas", help="mod-p lemmas, reflection, power-sum oracle"
    )
    lemmas.add_argument("--m", type=parse_range, default=DEFAULT_M_RANGE,
                        metavar="A[..B]")
    lemmas.add_argument("--q", type=parse_range, default=DEFAULT_Q_RANGE,
                        metavar="C[..D]")
    lemmas.add_argument("--pmin", type=int, default=DEFAULT_P_MIN)
    lemmas.add_argument("--pmax", type=int,
                        default=ACCEPTANCE_P_MAX[StatementId.LEMMA22])
    add_output_flags(lemmas)

    steps = families.add_parser(
        "proofsteps", help="intermediate identities behind the main theorem"
    )
    steps.add_argument("--m", type=parse_range, required=True, metavar="A[..B]")
    steps.add_argument("--q", type=parse_range, required=True, metavar="C[..D]")
    steps.add_argument("--pmin", type=int, default=DEFAULT_P_MIN)
    steps.add_argument("--pmax", type=int,
                       default=ACCEPTANCE_P_MAX[StatementId.PROOF_STEP])
    add_output_flags(steps)

    for family in (thm12, thm11, wol, lemmas, steps):
        family.set_defaults(func=cmd_verify)

    sweep_cmd = commands.add_parser(
        "sweep", help="every statement at its acceptance-grid cap"
    )
    sweep_cmd.add_argument("--all", action="store_true",
                           help="run the full default sweep")
    sweep_cmd.add_argument("--m", type=parse_range, default=DEFAULT_M_RANGE,
                           metavar="A[..B]")
    sweep_cmd.add_argument("--q", type=parse_range, default=DEFAULT_Q_RANGE,
                           metavar="C[..D]")
    sweep_cmd.add_argument("--pmin", type=int, default=DEFAULT_P_MIN)
    sweep_cmd.add_argument("--pmax", type=int, default=None,
                           help="uniform cap overriding the per-family defaults")
    sweep_cmd.add_argument("--modexp", type=int, default=None)
    sweep_cmd.add_argument("--include-excluded", action="store_true",
                           help="also run m-odd/q-even points (observational)")
    add_output_flags(sweep_cmd)
    sweep_cmd.set_defaults(func=cmd_sweep)

    explore = commands.add_parser(
        "explore", help="observed valuation at excluded or extended precision"
    )
    explore.add_argument("--m", type=int, required=True)
    explore.add_argument("--q", type=int, required=True)
    explore.add_argument("--p", type=int, required=True)
    explore.add_argument("--emax", type=int, default=5)
    explore.add_argument("--out", metavar="FILE")
    explore.set_defaults(func=cmd_explore)

    oracle = commands.add_parser(
        "oracle", help="exact rational sum and ring cross-check"
    )
    oracle.add_argument("--m", type=int, required=True)
    oracle.add_argument("--q", type=int, required=True)
    oracle.add_argument("--p", type=int, required=True)
    oracle.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
