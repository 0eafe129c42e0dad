#!/usr/bin/env python3
"""Reproduce the worst-case fitting table: for each K, the best-fit and
worst-fit families drive deadline-monotonic partitioning to K processors
while the optimum stays at 2.

Writes the full bench CSV and prints a compact table.
"""

import argparse

from rtpack.bench import ExperimentConfig, emit_report, run_experiment, spec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=8)
    ap.add_argument("-o", "--output", default="adversary_table.csv")
    args = ap.parse_args()

    instances = []
    for k in range(4, args.k_max + 1):
        instances.append(spec("bf-adversary", k=k))
        instances.append(spec("wf-adversary", k=k))
    cfg = ExperimentConfig(
        instances=tuple(instances),
        algorithms=(("dm", "bf"), ("dm", "wf"), ("dagger", "ff")),
        oracle=True,
        n_cap=2 * args.k_max,
    )
    report = run_experiment(cfg)

    with open(args.output, "wb") as fh:
        fh.write(emit_report(report, "csv"))
    print(f"wrote {args.output}")
    print(f"{'instance':>18} {'algo':>10} {'M':>3} {'M*':>3} {'ratio':>6}")
    for row in report.rows:
        label = f"{row.algorithm}/{row.strategy}"
        ratio = f"{float(row.ratio):.2f}" if row.ratio is not None else "-"
        print(f"{row.instance:>18} {label:>10} {row.m:>3} {row.m_star:>3} {ratio:>6}")


if __name__ == "__main__":
    main()
