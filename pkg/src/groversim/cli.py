"""Command-line entry point: ``groversim {run,scan,verify,bench,degeneracy}``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 numerical integrity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import verify as V
from .analysis import model_trajectory
from .errors import BoundsError, ConfigurationError, IntegrityError, TheoremViolation
from .grover import GroverConfig, degeneracy_search, evolve, optimal_iterations, run
from .oracle import OracleSpec, RecordTable, classical_linear_search, from_table, from_targets
from .statevec import check_qubits, make_rng

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_INTEGRITY = 0, 1, 2, 3


def _iterations(text: str):
    if text in ("auto", "scan"):
        return text
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, 'auto' or 'scan', got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"iteration count must be >= 0, got {value}")
    return value


def _index_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_oracle_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="qubit count (N = 2**n); inferred from --table if omitted")
    p.add_argument("--target", type=_index_list, action="append", default=[], metavar="I[,J...]",
                   help="marked basis index; repeat or comma-separate for several")
    p.add_argument("--table", type=Path, help="UTF-8 file, one record per line")
    p.add_argument("--query", help="record to search for in --table")
    p.add_argument("--ignore-case", action="store_true", help="case-insensitive record match")
    p.add_argument("--seed", type=int, default=0, help="64-bit RNG seed (default 0)")
    p.add_argument("--out", type=Path, help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="groversim", description="State-vector simulator for quantum search.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="one search: evolve, measure, report JSON")
    _add_oracle_args(p)
    p.add_argument("--iterations", type=_iterations, default="auto", help="integer, 'auto' or 'scan'")
    p.add_argument("--trajectory", action="store_true", help="include per-iteration (k, l, prob) in the report")
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("scan", help="success probability after each iteration")
    _add_oracle_args(p)
    p.add_argument("--max", type=int, dest="max_m", help="last iteration to record (default ceil(sqrt(2N)))")
    p.add_argument("--both", action="store_true", help="append two-level model columns k_model,l_model")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("verify", help="run the theorem-check suite")
    p.add_argument("--theorem", action="append", choices=[*V.THEOREMS, "all"], default=[],
                   help="restrict to one check; repeatable (default: all)")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000, help="random inputs for the corollary checks")
    p.add_argument("--vectors", type=int, default=200, help="random vectors per n for diffusion agreement")
    p.add_argument("--out", type=Path)
    p.add_argument("--inject-fault", choices=["r-sign"], help=argparse.SUPPRESS)

    p = sub.add_parser("bench", help="classical probe count vs quantum iteration count")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--trials", type=int, default=10_000, help="Monte Carlo trials per n for the classical column")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("degeneracy", help="search with an unknown number of marked states")
    _add_oracle_args(p)
    p.add_argument("--no-targets", action="store_true", help="search an oracle with nothing marked")
    p.add_argument("--retries", type=int, default=3, help="samples per assumed-count range")
    return parser


def _oracle_from_args(args, allow_empty: bool = False) -> OracleSpec:
    explicit = [t for group in args.target for t in group]
    has_table = args.table is not None or args.query is not None
    no_targets = getattr(args, "no_targets", False)
    if sum([bool(explicit), has_table, no_targets]) != 1:
        raise ConfigurationError("supply exactly one of --target, --table/--query" + (" or --no-targets" if allow_empty else ""))
    if has_table:
        if args.table is None or args.query is None:
            raise ConfigurationError("--table and --query must be given together")
        table = RecordTable.load(args.table, case_insensitive=args.ignore_case)
        oracle = from_table(table, args.query)
        if args.n is not None:
            if args.n < table.n:
                raise ConfigurationError(f"--n {args.n} too small for a table of {len(table.records)} records")
            oracle = OracleSpec(args.n, oracle.targets, "record-table")
    else:
        if args.n is None:
            raise ConfigurationError("--n is required with --target")
        oracle = from_targets(args.n, explicit)
    check_qubits(oracle.n)
    if oracle.is_empty and not allow_empty:
        raise ConfigurationError("no record matches the query; nothing to search for")
    return oracle


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows([[repr(x) if isinstance(x, float) else x for x in row] for row in rows])
    return buf.getvalue()


def cmd_run(args) -> int:
    oracle = _oracle_from_args(args)
    report = run(GroverConfig(oracle.n, oracle, args.iterations, args.seed, args.trajectory))
    _emit(report.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_scan(args) -> int:
    oracle = _oracle_from_args(args)
    max_m = args.max_m if args.max_m is not None else math.ceil(math.sqrt(2 * oracle.N))
    if max_m < 1:
        raise ConfigurationError(f"--max must be >= 1, got {max_m}")
    traj = evolve(oracle, max_m, capture=True).trajectory
    header = ["m", "k", "l", "prob"]
    rows = [[p.m, p.k, p.l, p.prob] for p in traj]
    if args.both:
        header += ["k_model", "l_model"]
        for row, s in zip(rows, model_trajectory(oracle.N, max_m, oracle.M)):
            row += [s.k, s.l]
    if args.format == "json":
        _emit(json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n", args.out)
    else:
        _emit(_csv(header, rows), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if not 2 <= args.n_min <= args.n_max:
        raise ConfigurationError(f"need 2 <= --n-min <= --n-max, got {args.n_min}..{args.n_max}")
    check_qubits(args.n_max)
    opt = V.SuiteOptions(args.n_min, args.n_max, args.seed, args.vectors, args.samples)
    if args.inject_fault == "r-sign":
        opt.wrw = V.faulty_pivot_wrw
        opt.pivot = V.faulty_pivot_matrix
    only = None if not args.theorem or "all" in args.theorem else list(dict.fromkeys(args.theorem))
    verdicts = V.run_suite(opt, only)
    passed = all(v.passed for v in verdicts)
    body = {"passed": passed, "n_min": args.n_min, "n_max": args.n_max, "verdicts": [v.to_dict() for v in verdicts]}
    _emit(json.dumps(body, indent=2, default=float) + "\n", args.out)
    return EXIT_OK if passed else EXIT_VERIFY


def bench_rows(n_min: int, n_max: int, trials: int, seed: int) -> list[list]:
    """One row per n: classical mean probes (Monte Carlo) and simulated quantum success."""
    rows = []
    for n in range(n_min, n_max + 1):
        check_qubits(n)
        N = 1 << n
        rng = make_rng(seed ^ n)
        oracle = from_targets(n, [int(rng.integers(N))])
        probes = [classical_linear_search(oracle, rng) for _ in range(trials)]
        m = optimal_iterations(N, 1)
        prob = evolve(oracle, m).probabilities[-1]
        rows.append([n, N, float(np.mean(probes)), m, prob])
    return rows


def cmd_bench(args) -> int:
    if not 1 <= args.n_min <= args.n_max:
        raise ConfigurationError(f"need 1 <= --n-min <= --n-max, got {args.n_min}..{args.n_max}")
    if args.trials < 1:
        raise ConfigurationError(f"--trials must be >= 1, got {args.trials}")
    rows = bench_rows(args.n_min, args.n_max, args.trials, args.seed)
    _emit(_csv(["n", "N", "classical_mean_probes", "grover_iterations", "success_prob"], rows), args.out)
    return EXIT_OK


def cmd_degeneracy(args) -> int:
    oracle = _oracle_from_args(args, allow_empty=True)
    log: list = []
    found = degeneracy_search(oracle, retries=args.retries, seed=args.seed, log=log)
    body = {"found": found, "n": oracle.n, "attempts": [asdict(a) for a in log]}
    _emit(json.dumps(body, indent=2) + "\n", args.out)
    return EXIT_OK


COMMANDS = {"run": cmd_run, "scan": cmd_scan, "verify": cmd_verify, "bench": cmd_bench, "degeneracy": cmd_degeneracy}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigurationError, BoundsError) as exc:
        print(f"groversim {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrityError as exc:
        print(f"groversim {args.command}: integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except TheoremViolation as exc:
        print(f"groversim {args.command}: check failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"groversim {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
