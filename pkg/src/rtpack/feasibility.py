"""Exact uniprocessor EDF feasibility via the processor-demand criterion.

The demand criterion quantifies over all t >= 0; only the deadline points
k*T_i + D_i matter because the demand is a right-continuous step function
that changes nowhere else.  For total utilization strictly below the speed
the standard busy-interval bound caps the sweep; at exactly the speed the
hyperperiod plus the largest deadline does.  Infeasible sets always come
with a witness point at which the demand provably exceeds speed * t.

The sweep prunes with the linear demand approximation: between two task
deadlines the approximate demand is affine with slope at most the total
utilization, so whenever it already sits at or below speed * t and cannot
grow faster than the supply, every point up to the next task deadline is
certified at once and the stream fast-forwards.  This never changes the
decided predicate, it only avoids touching points that cannot fail.
"""

from __future__ import annotations

import heapq
import math
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    BadParam,
    CoverageError,
    HorizonOverflow,
    PointExplosion,
    ShapeMismatch,
    ValidationError,
)
from .model import Task, TaskSet, dbf, dbf_star, hyperperiod, validate
from .partitioners import Partition

DEFAULT_POINT_CAP = 10**7
DEFAULT_HYPERPERIOD_CAP = Fraction(2**64)


class Mode(Enum):
    EXACT = "exact"
    APPROXIMATE = "approximate"


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    witness: Optional[Fraction]
    horizon: Fraction
    points_checked: int


def _require_valid(ts: TaskSet) -> None:
    violations = validate(ts)
    if violations:
        raise ValidationError(violations)


def test_horizon(
    ts: TaskSet,
    speed: Fraction = Fraction(1),
    hyperperiod_cap: Fraction = DEFAULT_HYPERPERIOD_CAP,
) -> Fraction:
    """Sound sweep bound for the demand criterion at the given speed.

    Requires total utilization at most the speed.  Below it, any failing
    point t satisfies (speed - U) * t < sum (T_i - D_i) * u_i, clamped from
    below by the largest deadline; at equality the demand repeats with
    period lcm(T_i), so hyperperiod + D_max suffices.
    """
    total_u = ts.total_utilization
    if total_u > speed:
        raise BadParam(
            f"utilization {total_u} exceeds speed {speed}; no finite horizon bounds"
            " an unconditionally failing set"
        )
    d_max = max(tsk.d for tsk in ts)
    if total_u == speed:
        hp = hyperperiod(ts)
        if hp > hyperperiod_cap:
            raise HorizonOverflow(f"hyperperiod {hp} exceeds cap {hyperperiod_cap}")
        return hp + d_max
    slack_sum = sum(((tsk.t - tsk.d) * tsk.utilization for tsk in ts), Fraction(0))
    return max(d_max, slack_sum / (speed - total_u))


def deadline_points(
    ts: TaskSet, horizon: Fraction, point_cap: int = DEFAULT_POINT_CAP
) -> list[Fraction]:
    """All points k*T_i + D_i in (0, horizon], sorted and deduplicated."""
    if horizon < 0:
        raise BadParam("horizon must be nonnegative")
    estimate = 0
    for tsk in ts:
        if horizon >= tsk.d:
            estimate += int((horizon - tsk.d) // tsk.t) + 1
    if estimate > point_cap:
        raise PointExplosion(
            f"{estimate} deadline points before horizon {horizon} exceed cap {point_cap}"
        )
    points: set[Fraction] = set()
    for tsk in ts:
        p = tsk.d
        while p <= horizon:
            points.add(p)
            p += tsk.t
    return sorted(points)


class _PointStream:
    """Ascending merge of each task's deadline points with fast-forward."""

    def __init__(self, tasks: Sequence[Task]):
        self._tasks = tasks
        self._heap = [(tsk.d, i) for i, tsk in enumerate(tasks)]
        self._next_k = [1] * len(tasks)
        heapq.heapify(self._heap)

    def pop(self) -> Fraction:
        point, i = heapq.heappop(self._heap)
        tsk = self._tasks[i]
        k = self._next_k[i]
        self._next_k[i] = k + 1
        heapq.heappush(self._heap, (tsk.d + k * tsk.t, i))
        return point

    def skip_to(self, target: Fraction) -> None:
        """Drop every point below `target` in O(N log N)."""
        heap = []
        for i, tsk in enumerate(self._tasks):
            if tsk.d >= target:
                k = 0
            else:
                k = max(0, math.ceil((target - tsk.d) / tsk.t))
            self._next_k[i] = k + 1
            heap.append((tsk.d + k * tsk.t, i))
        heapq.heapify(heap)
        self._heap = heap


def _demand(tasks: Sequence[Task], t: Fraction) -> Fraction:
    return sum((dbf(tsk, t) for tsk in tasks), Fraction(0))


def _demand_star(tasks: Sequence[Task], t: Fraction) -> Fraction:
    return sum((dbf_star(tsk, t) for tsk in tasks), Fraction(0))


def _sweep_first_failure(
    tasks: Sequence[Task],
    speed: Fraction,
    bound: Fraction,
    point_cap: int,
    beyond: bool,
) -> tuple[Optional[Fraction], int]:
    """First deadline point with demand > speed * t, scanning (0, bound].

    With `beyond`, the first point past the bound is also evaluated; callers
    use this when failure beyond the bound is guaranteed by a utilization
    argument, so a witness is always produced.
    """
    kinks: list[Fraction] = []
    cumu: list[Fraction] = []
    acc = Fraction(0)
    for tsk in sorted(tasks, key=lambda x: x.d):
        acc += tsk.utilization
        if kinks and kinks[-1] == tsk.d:
            cumu[-1] = acc
        else:
            kinks.append(tsk.d)
            cumu.append(acc)
    total_u = acc

    stream = _PointStream(tasks)
    checked = 0
    last: Optional[Fraction] = None
    while True:
        point = stream.pop()
        if point == last:
            continue
        last = point
        if point > bound:
            if not beyond:
                return None, checked
            checked += 1
            if _demand(tasks, point) > speed * point:
                return point, checked
            raise RuntimeError(
                "no failure past the guaranteed bound; unreachable for U > speed"
            )
        checked += 1
        if checked > point_cap:
            raise PointExplosion(
                f"demand sweep exceeded {point_cap} points before {bound}"
            )
        if _demand_star(tasks, point) <= speed * point:
            idx = bisect_right(kinks, point)
            if cumu[idx - 1] <= speed:
                # affine segment with slope <= speed already below supply
                if idx == len(kinks):
                    if total_u <= speed:
                        return None, checked
                else:
                    stream.skip_to(kinks[idx])
            continue
        if _demand(tasks, point) > speed * point:
            return point, checked


def subset_feasible_exact(
    tasks: Sequence[Task],
    speed: Fraction = Fraction(1),
    point_cap: int = DEFAULT_POINT_CAP,
    hyperperiod_cap: Fraction = DEFAULT_HYPERPERIOD_CAP,
) -> bool:
    """Exact EDF feasibility of a bare task list, without witness search.

    This is the oracle's inner loop: a utilization overrun returns False
    immediately instead of hunting for the earliest failing point.
    """
    if not tasks:
        return True
    total_u = sum((tsk.utilization for tsk in tasks), Fraction(0))
    if total_u > speed:
        return False
    ts = TaskSet(tuple(tasks))
    bound = test_horizon(ts, speed, hyperperiod_cap)
    witness, _ = _sweep_first_failure(tasks, speed, bound, point_cap, beyond=False)
    return witness is None


def edf_feasible_exact(
    ts: TaskSet,
    speed: Fraction = Fraction(1),
    point_cap: int = DEFAULT_POINT_CAP,
    hyperperiod_cap: Fraction = DEFAULT_HYPERPERIOD_CAP,
) -> FeasibilityVerdict:
    """Exact EDF test on one processor running at `speed`.

    Feasible iff total utilization is at most the speed and the summed
    demand stays within speed * t at every deadline point up to the sweep
    bound.  Infeasible verdicts carry the smallest failing point.
    """
    _require_valid(ts)
    if speed <= 0:
        raise BadParam(f"speed must be positive, got {speed}")
    tasks = list(ts)
    total_u = ts.total_utilization
    if total_u > speed:
        # every t past this bound has demand >= U*t - sum(u_i * D_i) > speed*t
        overshoot = sum((tsk.utilization * tsk.d for tsk in tasks), Fraction(0))
        bound = max(max(tsk.d for tsk in tasks), overshoot / (total_u - speed))
        witness, checked = _sweep_first_failure(
            tasks, speed, bound, point_cap, beyond=True
        )
        return FeasibilityVerdict(False, witness, bound, checked)
    bound = test_horizon(ts, speed, hyperperiod_cap)
    witness, checked = _sweep_first_failure(
        tasks, speed, bound, point_cap, beyond=False
    )
    return FeasibilityVerdict(witness is None, witness, bound, checked)


def lemma1_feasible(ts: TaskSet) -> bool:
    """Closed-form EDF test for sets of strictly constrained tasks with
    common deadline 1 plus implicit tasks sharing a period that is an
    integer multiple of every strict task's period.

    Feasible iff the strict execution times sum to at most 1 and the total
    utilization is at most 1.  Raises ShapeMismatch when the structure does
    not apply (callers fall back to the exact test).
    """
    _require_valid(ts)
    strict = [tsk for tsk in ts if tsk.d < tsk.t]
    implicit = [tsk for tsk in ts if tsk.d == tsk.t]
    if len(strict) + len(implicit) != len(ts):
        raise ShapeMismatch("tasks with D > T do not fit the common-deadline shape")
    if any(tsk.d != 1 for tsk in strict):
        raise ShapeMismatch("strictly constrained tasks must share deadline 1")
    if implicit:
        period = implicit[0].t
        if any(tsk.t != period for tsk in implicit):
            raise ShapeMismatch("implicit tasks must share one period")
        for tsk in strict:
            ratio = period / tsk.t
            if ratio.denominator != 1:
                raise ShapeMismatch(
                    f"implicit period {period} is not an integer multiple of {tsk.t}"
                )
    strict_work = sum((tsk.c for tsk in strict), Fraction(0))
    return strict_work <= 1 and ts.total_utilization <= 1


def approx_subset_feasible(tasks: Sequence[Task]) -> bool:
    """Approximate-admission verdict for a complete bin.

    Replays the deadline-monotonic admission: in nondecreasing-deadline
    order every task must fit the approximate demand of its predecessors at
    its own deadline, and the bin utilization must stay at most 1.
    """
    if not tasks:
        return True
    ordered = sorted(tasks, key=lambda tsk: (tsk.d, tsk.id))
    total_u = sum((tsk.utilization for tsk in ordered), Fraction(0))
    if total_u > 1:
        return False
    for i, tsk in enumerate(ordered):
        demand = tsk.c + sum(
            (dbf_star(prev, tsk.d) for prev in ordered[:i]), Fraction(0)
        )
        if demand > tsk.d:
            return False
    return True


def verify_partition(
    ts: TaskSet,
    part: Partition,
    mode: Mode = Mode.EXACT,
    point_cap: int = DEFAULT_POINT_CAP,
    hyperperiod_cap: Fraction = DEFAULT_HYPERPERIOD_CAP,
) -> bool:
    """True iff `part` is a partition of `ts` whose every bin passes the
    selected per-processor test."""
    _require_valid(ts)
    all_ids = frozenset(tsk.id for tsk in ts)
    seen: set[int] = set()
    for b in part.bins:
        if not b:
            raise CoverageError("empty bin in partition")
        for tid in b:
            if tid not in all_ids:
                raise CoverageError(f"unknown task id {tid} in partition")
            if tid in seen:
                raise CoverageError(f"task id {tid} assigned twice")
            seen.add(tid)
    if seen != all_ids:
        missing = sorted(all_ids - seen)
        raise CoverageError(f"partition misses task ids {missing}")
    for b in part.bins:
        subset = [ts.by_id(tid) for tid in b]
        if mode is Mode.EXACT:
            ok = subset_feasible_exact(
                subset, Fraction(1), point_cap, hyperperiod_cap
            )
        else:
            ok = approx_subset_feasible(subset)
        if not ok:
            return False
    return True
