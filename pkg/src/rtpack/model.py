"""Sporadic task model on exact rational arithmetic.

Every timing quantity is a `fractions.Fraction`; no float ever enters a
schedulability decision.  Tasks are immutable and keep a stable integer id
assigned in input order (1-based), so partitions can always be reported
against the original indices regardless of sorting or transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    """Convert exactly: ints pass through, strings accept "p/q" and decimal
    literals ("0.25" becomes 1/4)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rational quantities")
    if isinstance(value, float):
        raise TypeError("floats are rejected; pass a string or Fraction to stay exact")
    return Fraction(value)


@dataclass(frozen=True)
class Task:
    """A sporadic task: worst-case execution time c, relative deadline d,
    minimum inter-arrival time t."""

    c: Fraction
    d: Fraction
    t: Fraction
    id: int = 0

    @property
    def utilization(self) -> Fraction:
        return self.c / self.t

    @property
    def density(self) -> Fraction:
        return self.c / min(self.t, self.d)

    def __repr__(self) -> str:  # compact, keeps exact values readable
        return f"Task(id={self.id}, c={self.c}, d={self.d}, t={self.t})"


def task(c: RationalLike, d: RationalLike, t: RationalLike, id: int = 0) -> Task:
    """Convenience constructor converting every field exactly."""
    return Task(as_rational(c), as_rational(d), as_rational(t), id)


class DeadlineClass(Enum):
    IMPLICIT = "implicit"
    CONSTRAINED = "constrained"
    ARBITRARY = "arbitrary"


@dataclass(frozen=True)
class TaskSet:
    tasks: tuple[Task, ...]
    name: str = ""

    def __post_init__(self):
        if not self.tasks:
            raise ValueError("a task set holds at least one task")
        ids = [tsk.id for tsk in self.tasks]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate task ids in {self.name!r}: {ids}")

    def __iter__(self) -> Iterator[Task]:
        return iter(self.tasks)

    def __len__(self) -> int:
        return len(self.tasks)

    @property
    def n(self) -> int:
        return len(self.tasks)

    @property
    def total_utilization(self) -> Fraction:
        return sum((tsk.utilization for tsk in self.tasks), Fraction(0))

    def by_id(self, tid: int) -> Task:
        for tsk in self.tasks:
            if tsk.id == tid:
                return tsk
        raise KeyError(tid)


def taskset(triples: Iterable[tuple], name: str = "") -> TaskSet:
    """Build a TaskSet from (c, d, t) triples, ids assigned 1..N in order."""
    tasks = tuple(
        task(c, d, t, id=i) for i, (c, d, t) in enumerate(triples, start=1)
    )
    return TaskSet(tasks, name=name)


def utilization(tsk: Task) -> Fraction:
    """c/t, exactly."""
    return tsk.utilization


def dbf(tsk: Task, tpoint: Fraction) -> Fraction:
    """Demand bound function: max{0, floor((t-D)/T)+1} * C."""
    if tpoint < tsk.d:
        return Fraction(0)
    jobs = (tpoint - tsk.d) // tsk.t + 1
    return jobs * tsk.c


def dbf_star(tsk: Task, tpoint: Fraction) -> Fraction:
    """Linear upper approximation of dbf: 0 below D, else ((t-D)/T + 1) * C."""
    if tpoint < tsk.d:
        return Fraction(0)
    return ((tpoint - tsk.d) / tsk.t + 1) * tsk.c


def lambda_metric(ts: TaskSet) -> Fraction:
    """max over tasks of max(T/D, 1); equals 1 exactly on implicit-deadline sets."""
    return max(max(tsk.t / tsk.d, Fraction(1)) for tsk in ts)


def gamma_metric(ts: TaskSet) -> Fraction:
    """max over tasks of C/min(T, D) (the largest density)."""
    return max(tsk.density for tsk in ts)


def transform_dagger(ts: TaskSet) -> TaskSet:
    """Tighten each task to an implicit-deadline one.

    T >= D: keep (C, D) and shrink the period to D.  T < D: keep (C, T) and
    shrink the deadline to T.  Ids are preserved; the result is a fixed point
    of the transform.
    """
    out = []
    for tsk in ts:
        if tsk.t >= tsk.d:
            out.append(Task(tsk.c, tsk.d, tsk.d, tsk.id))
        else:
            out.append(Task(tsk.c, tsk.t, tsk.t, tsk.id))
    return TaskSet(tuple(out), name=ts.name)


def classify(ts: TaskSet) -> DeadlineClass:
    if all(tsk.d == tsk.t for tsk in ts):
        return DeadlineClass.IMPLICIT
    if all(tsk.d <= tsk.t for tsk in ts):
        return DeadlineClass.CONSTRAINED
    return DeadlineClass.ARBITRARY


@dataclass(frozen=True)
class Violation:
    task_id: int
    field: str
    message: str

    def __str__(self) -> str:
        return f"task {self.task_id}: {self.message}"


def validate(ts: TaskSet) -> list[Violation]:
    """Check the model assumptions; violations are data, not failures.

    Degenerate sets stay loadable for study, but every solver entry point
    refuses task sets for which this list is nonempty.
    """
    out: list[Violation] = []
    for tsk in ts:
        if tsk.c <= 0:
            out.append(Violation(tsk.id, "c", f"C = {tsk.c} must be positive"))
        if tsk.d <= 0:
            out.append(Violation(tsk.id, "d", f"D = {tsk.d} must be positive"))
        if tsk.t <= 0:
            out.append(Violation(tsk.id, "t", f"T = {tsk.t} must be positive"))
        if tsk.t > 0 and tsk.c / tsk.t > 1:
            out.append(Violation(tsk.id, "c", f"C/T = {tsk.c}/{tsk.t} exceeds 1"))
        if tsk.d > 0 and tsk.c / tsk.d > 1:
            out.append(Violation(tsk.id, "c", f"C/D = {tsk.c}/{tsk.d} exceeds 1"))
    return out


def hyperperiod(ts: TaskSet) -> Fraction:
    """Least positive rational H with H/T_i integral for every task."""
    nums = [tsk.t.numerator for tsk in ts]
    dens = [tsk.t.denominator for tsk in ts]
    return Fraction(math.lcm(*nums), math.gcd(*dens))
