"""``blowup-lab`` command line: run a job file, scan random ideals, or run
the shipped fixtures."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from .jobs import (
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_TASK_ERROR,
    EXIT_VIOLATION,
    JobError,
    Job,
    apply_overrides,
    parse_job,
    run_job,
)
from .parser import ParseError


def fixture_paths() -> list[Path]:
    root = resources.files("blowup_lab") / "fixtures"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".job"))


def load_job(path: str | Path) -> Job:
    return parse_job(Path(path).read_text())


def _cmd_run(args) -> int:
    try:
        job = apply_overrides(load_job(args.job), seed=args.seed, p=args.p, max_power=args.max_power)
    except (JobError, ParseError) as exc:
        print(f"{args.job}: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except OSError as exc:
        print(f"{args.job}: {exc}", file=sys.stderr)
        return EXIT_TASK_ERROR
    report = run_job(job)
    text = report.to_text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    for err in report.data["errors"]:
        print(f"error in {err['task']}: {err['error']}: {err['message']}", file=sys.stderr)
    return report.exit_code


def random_monomial_ideal(rng: random.Random, nvars: int, max_exp: int) -> list[tuple[int, ...]]:
    """Pure powers of every variable plus up to four monomials below them,
    all exponents <= max_exp."""
    pure = [rng.randint(1, max_exp) for _ in range(nvars)]
    gens = []
    for i, a in enumerate(pure):
        e = [0] * nvars
        e[i] = a
        gens.append(tuple(e))
    for _ in range(rng.randint(0, 4)):
        gens.append(tuple(rng.randint(0, a - 1) for a in pure))
    return [g for g in gens if any(g)]


def _monomial_text(e: tuple[int, ...], names: list[str]) -> str:
    parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
    return "*".join(parts) or "1"


def scan_one(gens: list[tuple[int, ...]], names: list[str], seed: int, s2_max_r: int | None = 4) -> dict:
    from .groebner import Ideal
    from .invariants import InvariantError, ReportOptions, bounds_report
    from .ring import Ring

    ring = Ring(names)
    I = Ideal(ring, [ring.monomial(e) for e in gens])
    text = ", ".join(_monomial_text(e, names) for e in I.monomial_exps())
    row = {"ideal": text}
    try:
        rep = bounds_report(I, ReportOptions(seed=seed, ratliff_rush=True, s2_ideal=len(names) == 2,
                                          s2_max_r=s2_max_r))
    except (InvariantError, ValueError, ArithmeticError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row.update(e0=rep.e0, e1=rep.e1, f0=rep.f0, r=rep.r, length=rep.length, mu=rep.mu)
    row["equalities"] = [b.name for b in rep.bounds if b.status == "equality"]
    row["violations"] = [b.name for b in rep.violations]
    row["observations"] = [b.name for b in rep.bounds if b.status == "violated" and not b.hypothesis_met]
    return row


def _cmd_scan(args) -> int:
    names = ["x", "y", "z", "w", "u", "v"][: args.vars] if args.vars <= 6 else [f"x{i}" for i in range(args.vars)]
    rng = random.Random(args.seed)
    worst = EXIT_OK
    rows = []
    for k in range(args.count):
        gens = random_monomial_ideal(rng, args.vars, args.max_exp)
        row = scan_one(gens, names, args.seed + k, args.s2_max_r)
        rows.append(row)
        if "error" in row:
            print(f"[{k}] ({row['ideal']}): ERROR {row['error']}")
            worst = max(worst, EXIT_TASK_ERROR)
            continue
        line = (f"[{k}] ({row['ideal']}): e0={row['e0']} e1={row['e1']} f0={row['f0']} r_J={row['r']} "
                f"equalities={','.join(row['equalities']) or '-'}")
        if row["observations"]:
            line += f" failed-without-hypothesis={','.join(row['observations'])}"
        if row["violations"]:
            line += f" VIOLATED={','.join(row['violations'])}"
            worst = EXIT_VIOLATION
        print(line)
    if args.out:
        Path(args.out).write_text(json.dumps(rows, indent=2) + "\n")
    return worst


def _run_fixture(path: str) -> tuple[str, int, str, float]:
    t0 = time.perf_counter()
    try:
        job = load_job(path)
    except (JobError, ParseError) as exc:
        return path, EXIT_PARSE_ERROR, str(exc), 0.0
    report = run_job(job)
    summary = report.data["status"]
    inv = report.data.get("invariants")
    if inv:
        summary += f" e={inv['e']} f={inv['f']} r_J={inv['reduction']['r_J']}"
    return path, report.exit_code, summary, time.perf_counter() - t0


def _cmd_fixtures(args) -> int:
    paths = [str(p) for p in fixture_paths()]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_run_fixture, paths))
    else:
        results = [_run_fixture(p) for p in paths]
    worst = EXIT_OK
    for path, code, summary, seconds in results:
        print(f"{Path(path).name:24s} exit={code} {seconds:7.2f}s  {summary}")
        worst = max(worst, code)
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blowup-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a job file and print its report")
    run.add_argument("job")
    run.add_argument("--seed", type=int)
    run.add_argument("--p", type=int, help="prime used for coefficient arithmetic")
    run.add_argument("--max-power", type=int, help="largest power sampled for lengths")
    run.add_argument("--out", help="write the report here instead of stdout")
    run.set_defaults(func=_cmd_run)

    scan = sub.add_parser("scan", help="evaluate the bounds on random monomial ideals")
    scan.add_argument("--vars", type=int, default=2)
    scan.add_argument("--max-exp", type=int, default=10)
    scan.add_argument("--count", type=int, default=20)
    scan.add_argument("--seed", type=int, default=0)
    scan.add_argument("--s2-max-r", type=int, default=4,
                      help="skip the S2 ideal when the reduction number exceeds this (it gets slow)")
    scan.add_argument("--out", help="also write the rows as JSON")
    scan.set_defaults(func=_cmd_scan)

    fx = sub.add_parser("fixtures", help="run the shipped fixture jobs")
    fx.add_argument("--workers", type=int, default=1)
    fx.set_defaults(func=_cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
