"""Brute-force minimum-processor oracle.

Set partitions are enumerated as restricted-growth strings in increasing
bin count, so symmetric relabelings of bins are never visited twice.  The
search assigns tasks in input order and prunes a branch as soon as any bin
fails the per-bin test; that is sound because demand only grows when a task
is added, so an infeasible bin never becomes feasible again.  Per-subset
verdicts are memoized across branches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapExceeded, ValidationError
from .feasibility import Mode, approx_subset_feasible, subset_feasible_exact
from .model import Task, TaskSet, validate
from .partitioners import Partition

DEFAULT_ORACLE_CAP = 12


@dataclass(frozen=True)
class OracleResult:
    m_star: int
    witness: Partition
    nodes_explored: int


def optimal_partition_bruteforce(
    ts: TaskSet, mode: Mode = Mode.EXACT, n_cap: int = DEFAULT_ORACLE_CAP
) -> OracleResult:
    """Minimum number of processors admitting a feasible partition, with a
    witness partition, by exhaustive search.

    The bin count starts at the utilization lower bound ceil(sum u_i); the
    first bin count with a complete assignment is optimal because every
    partition into fewer bins embeds into an earlier, fully explored level.
    """
    violations = validate(ts)
    if violations:
        raise ValidationError(violations)
    n = len(ts)
    if n > n_cap:
        raise CapExceeded(f"N = {n} exceeds the oracle cap {n_cap}")

    tasks = list(ts)

    def bin_ok(subset: list[Task]) -> bool:
        if mode is Mode.EXACT:
            return subset_feasible_exact(subset)
        return approx_subset_feasible(subset)

    memo: dict[frozenset[int], bool] = {}
    nodes = 0

    def feasible_bin(subset: list[Task]) -> bool:
        key = frozenset(tsk.id for tsk in subset)
        hit = memo.get(key)
        if hit is None:
            hit = bin_ok(subset)
            memo[key] = hit
        return hit

    def dfs(i: int, bins: list[list[Task]], max_bins: int) -> bool:
        nonlocal nodes
        if i == len(tasks):
            return True
        tsk = tasks[i]
        choices = len(bins) + 1 if len(bins) < max_bins else len(bins)
        for b in range(choices):
            if b == len(bins):
                bins.append([])
            bins[b].append(tsk)
            nodes += 1
            if feasible_bin(bins[b]) and dfs(i + 1, bins, max_bins):
                return True
            bins[b].pop()
            if not bins[b]:
                bins.pop()
        return False

    lower = max(1, math.ceil(ts.total_utilization))
    for m in range(lower, n + 1):
        bins: list[list[Task]] = []
        if dfs(0, bins, m):
            witness = Partition(
                bins=tuple(tuple(sorted(t.id for t in b)) for b in bins),
                algorithm="oracle",
                strategy=None,
            )
            return OracleResult(m_star=len(bins), witness=witness, nodes_explored=nodes)
    raise RuntimeError("unreachable: singleton bins are feasible for a valid set")
