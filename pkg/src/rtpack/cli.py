"""Command-line interface.

Exit codes are a stable contract: 0 for success or a feasible/positive
verdict, 1 for an infeasible/negative verdict, 2 for any error.  All output
is JSON or CSV with fixed key order, and output files are written whole via
an atomic rename, never partially.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from fractions import Fraction

from . import bench as bench_mod
from .errors import RtpackError
from .feasibility import (
    DEFAULT_HYPERPERIOD_CAP,
    DEFAULT_POINT_CAP,
    Mode,
    edf_feasible_exact,
)
from .generators import (
    DEFAULT_DENOMINATOR_BOUND,
    DeadlineClass,
    GenParams,
    dvp_to_tasks,
    gen_best_fit_adversary,
    gen_random,
    gen_random_dvp,
    gen_speedup_gap,
    gen_worst_fit_adversary,
)
from .io import serialize_dvp, serialize_taskset, parse_taskset
from .model import as_rational
from .oracle import DEFAULT_ORACLE_CAP, optimal_partition_bruteforce
from .partitioners import Partition, Strategy, dagger_greedy, dm_partition
from .simulate import DEFAULT_EVENT_CAP, simulate_edf_synchronous


def _rational(text: str) -> Fraction:
    return as_rational(text)


def _default_ncap() -> int:
    env = os.environ.get("RTP_NCAP")
    return int(env) if env else DEFAULT_ORACLE_CAP


def _write_output(path: str | None, content: str | bytes) -> None:
    data = content.encode("utf-8") if isinstance(content, str) else content
    if path is None or path == "-":
        sys.stdout.write(data.decode("utf-8"))
        return
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _read_taskset(path: str):
    with open(path, "rb") as fh:
        return parse_taskset(fh.read())


def _partition_doc(part: Partition) -> str:
    doc = {
        "algorithm": part.algorithm,
        "strategy": part.strategy,
        "m": part.m,
        "bins": [list(b) for b in part.bins],
    }
    return json.dumps(doc, indent=2) + "\n"


def cmd_check(args) -> int:
    ts = _read_taskset(args.file)
    verdict = edf_feasible_exact(
        ts,
        speed=args.speed,
        point_cap=args.point_cap,
        hyperperiod_cap=args.horizon_cap,
    )
    doc = {
        "name": ts.name,
        "speed": str(args.speed),
        "feasible": verdict.feasible,
        "witness": str(verdict.witness) if verdict.witness is not None else None,
        "horizon": str(verdict.horizon),
        "points_checked": verdict.points_checked,
    }
    print(json.dumps(doc, indent=2))
    return 0 if verdict.feasible else 1


def cmd_partition(args) -> int:
    ts = _read_taskset(args.file)
    if args.algo == "dm":
        part = dm_partition(ts, Strategy(args.strategy))
    elif args.algo == "dagger":
        part = dagger_greedy(ts, Strategy(args.strategy))
    else:
        result = optimal_partition_bruteforce(ts, Mode.EXACT, n_cap=args.n_cap)
        part = result.witness
    print(_partition_doc(part), end="")
    return 0


def cmd_generate(args) -> int:
    if args.family in ("bf-adversary", "wf-adversary"):
        if args.k is None:
            raise RtpackError("--k is required for the adversary families")
        gen = (
            gen_best_fit_adversary
            if args.family == "bf-adversary"
            else gen_worst_fit_adversary
        )
        ts = gen(args.k, args.h)
    elif args.family == "speedup-gap":
        if args.n is None or args.eps is None:
            raise RtpackError("--n and --eps are required for speedup-gap")
        ts = gen_speedup_gap(args.n, args.eps)
    elif args.family == "random":
        if args.n is None:
            raise RtpackError("--n is required for random")
        params = GenParams(
            seed=args.seed,
            n=args.n,
            deadline_class=DeadlineClass(args.deadline_class),
            utilization_target=args.target_u,
            denominator_bound=args.den_bound,
        )
        ts = gen_random(params)
    else:  # dvp
        if args.n is None:
            raise RtpackError("--n is required for dvp")
        dvp = gen_random_dvp(args.seed, args.n, args.den_bound)
        if args.dvp_out:
            _write_output(args.dvp_out, serialize_dvp(dvp))
        ts = dvp_to_tasks(dvp)
    _write_output(args.output, serialize_taskset(ts))
    return 0


def cmd_bench(args) -> int:
    with open(args.config, "rb") as fh:
        cfg = bench_mod.parse_config(fh.read())
    if args.threads is not None:
        cfg = dataclasses.replace(cfg, threads=args.threads)
    if os.environ.get("RTP_NCAP"):
        cfg = dataclasses.replace(cfg, n_cap=int(os.environ["RTP_NCAP"]))
    report = bench_mod.run_experiment(cfg)
    if args.format:
        fmt = args.format
    else:
        fmt = "json" if args.output and args.output.endswith(".json") else "csv"
    _write_output(args.output, bench_mod.emit_report(report, fmt))
    for err in report.errors:
        print(f"note: {err}", file=sys.stderr)
    return 0


def cmd_simulate(args) -> int:
    ts = _read_taskset(args.file)
    trace = simulate_edf_synchronous(
        ts, horizon=args.horizon, speed=args.speed, event_cap=args.event_cap
    )
    doc = {
        "name": ts.name,
        "horizon": str(trace.horizon),
        "speed": str(args.speed),
        "schedulable": trace.schedulable,
        "misses": [{"task": tid, "deadline": str(d)} for tid, d in trace.misses],
        "preemptions": trace.preemptions,
        "idle": [[str(a), str(b)] for a, b in trace.idle],
    }
    print(json.dumps(doc, indent=2))
    return 0 if trace.schedulable else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rtpack",
        description="Partitioned EDF packing toolkit on exact rational arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="exact one-processor EDF feasibility")
    p_check.add_argument("file")
    p_check.add_argument("--speed", type=_rational, default=Fraction(1))
    p_check.add_argument("--point-cap", type=int, default=DEFAULT_POINT_CAP)
    p_check.add_argument(
        "--horizon-cap", type=_rational, default=DEFAULT_HYPERPERIOD_CAP
    )
    p_check.set_defaults(func=cmd_check)

    p_part = sub.add_parser("partition", help="partition a task set")
    p_part.add_argument("file")
    p_part.add_argument("--algo", choices=["dm", "dagger", "oracle"], required=True)
    p_part.add_argument("--strategy", choices=["ff", "bf", "wf"], default="ff")
    p_part.add_argument("--n-cap", type=int, default=_default_ncap())
    p_part.set_defaults(func=cmd_partition)

    p_gen = sub.add_parser("generate", help="emit an instance as task-set JSON")
    p_gen.add_argument(
        "--family",
        choices=["bf-adversary", "wf-adversary", "speedup-gap", "random", "dvp"],
        required=True,
    )
    p_gen.add_argument("--k", type=int)
    p_gen.add_argument("--h", type=_rational)
    p_gen.add_argument("--n", type=int)
    p_gen.add_argument("--eps", type=_rational)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--target-u", type=_rational, default=Fraction(1))
    p_gen.add_argument(
        "--class",
        dest="deadline_class",
        choices=["implicit", "constrained", "arbitrary"],
        default="constrained",
    )
    p_gen.add_argument("--den-bound", type=int, default=DEFAULT_DENOMINATOR_BOUND)
    p_gen.add_argument("--dvp-out")
    p_gen.add_argument("-o", "--output")
    p_gen.set_defaults(func=cmd_generate)

    p_bench = sub.add_parser("bench", help="run an experiment config")
    p_bench.add_argument("--config", required=True)
    p_bench.add_argument("--format", choices=["csv", "json"])
    p_bench.add_argument("--threads", type=int)
    p_bench.add_argument("-o", "--output")
    p_bench.set_defaults(func=cmd_bench)

    p_sim = sub.add_parser("simulate", help="event-driven EDF simulation")
    p_sim.add_argument("file")
    p_sim.add_argument("--horizon", type=_rational, required=True)
    p_sim.add_argument("--speed", type=_rational, default=Fraction(1))
    p_sim.add_argument("--event-cap", type=int, default=DEFAULT_EVENT_CAP)
    p_sim.set_defaults(func=cmd_simulate)
    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (RtpackError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
