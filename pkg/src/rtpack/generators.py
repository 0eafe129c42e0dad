"""Instance families: the published worst-case constructions, the dominated
vector packing transform, and seeded random task sets.

All generators are pure functions of their parameters; random families
derive every draw from an explicit seed, so concurrent or repeated
generation reproduces bit-identical instances.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParam
from .model import DeadlineClass, Task, TaskSet, as_rational

DEFAULT_DENOMINATOR_BOUND = 8


def _default_h(k: int) -> Fraction:
    return Fraction(k) ** (k + 2)


def gen_best_fit_adversary(k: int, h: Fraction | None = None) -> TaskSet:
    """Family on which deadline-monotonic best fit opens K processors while
    two suffice.

    2K tasks: a light short-deadline task, heavy implicit tasks at deadlines
    K^0, K^1, ..., and long-period fillers that saturate each deadline tier.
    The long period defaults to K^(K+2), large enough that the fillers'
    utilization stays negligible.
    """
    if not isinstance(k, int) or k < 4:
        raise BadParam(f"need integer k >= 4, got {k!r}")
    h = _default_h(k) if h is None else as_rational(h)
    if h < _default_h(k):
        raise BadParam(f"h must be at least k^(k+2) = {_default_h(k)}, got {h}")
    kf = Fraction(k)
    tasks = [Task(c=1 / kf, d=Fraction(1), t=h, id=1)]
    for i in range(2, 2 * k + 1):
        if i % 2 == 0:
            d = kf ** (i // 2 - 1)
            tasks.append(Task(c=kf ** (i // 2 - 2), d=d, t=d, id=i))
        else:
            j = (i - 1) // 2
            tasks.append(Task(c=kf**j - kf ** (j - 1), d=kf**j, t=h, id=i))
    return TaskSet(tuple(tasks), name=f"bf-adversary-k{k}")


def gen_worst_fit_adversary(k: int, h: Fraction | None = None) -> TaskSet:
    """Family on which deadline-monotonic worst fit opens K processors while
    two suffice; same structure as the best-fit family with the implicit
    tasks shifted one deadline tier up."""
    if not isinstance(k, int) or k < 4:
        raise BadParam(f"need integer k >= 4, got {k!r}")
    h = _default_h(k) if h is None else as_rational(h)
    if h < _default_h(k):
        raise BadParam(f"h must be at least k^(k+2) = {_default_h(k)}, got {h}")
    kf = Fraction(k)
    tasks = [Task(c=Fraction(1), d=Fraction(1), t=h, id=1)]
    for i in range(2, 2 * k + 1):
        if i % 2 == 0:
            d = kf ** (i // 2)
            tasks.append(Task(c=kf ** (i // 2 - 1), d=d, t=d, id=i))
        else:
            j = (i - 1) // 2
            tasks.append(Task(c=kf**j - kf ** (j - 1), d=kf**j, t=h, id=i))
    return TaskSet(tuple(tasks), name=f"wf-adversary-k{k}")


def gen_speedup_gap(n: int, eps: Fraction) -> TaskSet:
    """Family where any two tasks clash on a unit-speed processor, yet one
    processor at speed 1 + eps schedules all of them.

    Every task has C = D, growing geometrically as ((1+eps)/eps)-powers; all
    periods equal the largest deadline.
    """
    if not isinstance(n, int) or n < 2:
        raise BadParam(f"need integer n >= 2, got {n!r}")
    eps = as_rational(eps)
    if not 0 < eps < 1:
        raise BadParam(f"need 0 < eps < 1, got {eps}")
    period = (1 + eps) ** (n - 2) / eps ** (n - 1)
    tasks = [Task(c=Fraction(1), d=Fraction(1), t=period, id=1)]
    for i in range(2, n + 1):
        d = (1 + eps) ** (i - 2) / eps ** (i - 1)
        tasks.append(Task(c=d, d=d, t=period, id=i))
    return TaskSet(tuple(tasks), name=f"speedup-gap-n{n}")


@dataclass(frozen=True)
class DvpInstance:
    """Two-dimensional dominated vectors: v1 in (0,1] and either v2 = 0 or
    v1 < v2 <= 1."""

    vectors: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        for i, (v1, v2) in enumerate(self.vectors):
            if not 0 < v1 <= 1:
                raise BadParam(f"vector {i}: v1 = {v1} outside (0, 1]")
            if v2 != 0 and not v1 < v2 <= 1:
                raise BadParam(f"vector {i}: v2 = {v2} must be 0 or in (v1, 1]")

    def __len__(self) -> int:
        return len(self.vectors)


def dvp_to_tasks(dvp: DvpInstance) -> TaskSet:
    """Map dominated vectors to strictly constrained tasks (D = 1, C = v2,
    T = v2/v1) and zero-second-coordinate vectors to implicit tasks of
    period H with C = v1 * H, where H is a common integer multiple of the
    strict periods (the rational lcm)."""
    periods = [v2 / v1 for v1, v2 in dvp.vectors if v2 != 0]
    if periods:
        h = Fraction(
            math.lcm(*(p.numerator for p in periods)),
            math.gcd(*(p.denominator for p in periods)),
        )
    else:
        h = Fraction(1)
    tasks = []
    for i, (v1, v2) in enumerate(dvp.vectors, start=1):
        if v2 != 0:
            tasks.append(Task(c=v2, d=Fraction(1), t=v2 / v1, id=i))
        else:
            tasks.append(Task(c=v1 * h, d=h, t=h, id=i))
    return TaskSet(tuple(tasks), name="dvp")


def gen_random_dvp(
    seed: int, n: int, denominator_bound: int = DEFAULT_DENOMINATOR_BOUND
) -> DvpInstance:
    """Seeded dominated-vector instance with denominators bounded by q."""
    if n < 1:
        raise BadParam(f"need n >= 1, got {n}")
    rng = random.Random(f"rtpack-dvp:{seed}")
    q = denominator_bound
    vectors = []
    for _ in range(n):
        if rng.random() < 0.3:
            vectors.append((Fraction(rng.randint(1, q), q), Fraction(0)))
        else:
            k2 = rng.randint(2, q)
            k1 = rng.randint(1, k2 - 1)
            vectors.append((Fraction(k1, q), Fraction(k2, q)))
    return DvpInstance(tuple(vectors))


@dataclass(frozen=True)
class GenParams:
    seed: int
    n: int
    deadline_class: DeadlineClass = DeadlineClass.CONSTRAINED
    utilization_target: Fraction = Fraction(1)
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND

    def __post_init__(self):
        if self.n < 1:
            raise BadParam(f"need n >= 1, got {self.n}")
        if self.utilization_target <= 0:
            raise BadParam("utilization target must be positive")
        if self.utilization_target > self.n:
            raise BadParam(
                f"target {self.utilization_target} impossible with {self.n} tasks"
            )
        if self.denominator_bound < 1:
            raise BadParam("denominator bound must be at least 1")


def _uunifast(rng: random.Random, n: int, target: float) -> list[float]:
    """UUniFast with discard: n utilization shares summing to target, each
    below 1."""
    if target >= n:  # only the all-saturated split exists
        return [1.0] * n
    while True:
        shares = []
        rest = target
        for i in range(n - 1):
            nxt = rest * rng.random() ** (1.0 / (n - i))
            shares.append(rest - nxt)
            rest = nxt
        shares.append(rest)
        if all(s < 1.0 for s in shares):
            return shares


def gen_random(params: GenParams) -> TaskSet:
    """Seeded random task set near the utilization target.

    Periods come from a bounded-denominator grid, deadlines follow the
    requested class, and execution times realize UUniFast shares; a scaling
    pass pulls the exact total utilization within 10% of the target (density
    clamping permitting), retrying with fresh draws when it cannot.
    """
    rng = random.Random(f"rtpack-gen:{params.seed}")
    q = params.denominator_bound
    n = params.n
    target = Fraction(params.utilization_target)
    lo, hi = target - target / 10, target + target / 10

    best: TaskSet | None = None
    best_gap: Fraction | None = None
    for _ in range(64):
        shares = _uunifast(rng, n, float(target))
        tasks = []
        for i in range(n):
            period = Fraction(rng.randint(1, 4 * q), rng.randint(1, q))
            if params.deadline_class is DeadlineClass.IMPLICIT:
                d = period
            elif params.deadline_class is DeadlineClass.CONSTRAINED:
                d = period * Fraction(rng.randint(1, q), q)
            else:
                d = period * Fraction(rng.randint(1, 2 * q), q)
            share = Fraction(shares[i]).limit_denominator(q * q)
            share = min(max(share, Fraction(1, q * q)), Fraction(1))
            c = min(share * period, d, period)
            tasks.append(Task(c=c, d=d, t=period, id=i + 1))
        for _ in range(3):
            total = sum((t.utilization for t in tasks), Fraction(0))
            if lo <= total <= hi:
                break
            factor = (target / total).limit_denominator(q**3)
            tasks = [
                Task(
                    c=min(max(t.c * factor, Fraction(1, q**3)), t.d, t.t),
                    d=t.d,
                    t=t.t,
                    id=t.id,
                )
                for t in tasks
            ]
        total = sum((t.utilization for t in tasks), Fraction(0))
        candidate = TaskSet(tuple(tasks), name=f"random-s{params.seed}")
        if lo <= total <= hi:
            return candidate
        gap = abs(total - target)
        if best_gap is None or gap < best_gap:
            best, best_gap = candidate, gap
    assert best is not None
    return best


def gen_lemma1_shaped(
    seed: int,
    n_strict: int,
    n_implicit: int,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> TaskSet:
    """Seeded set matching the common-deadline closed-form test's shape:
    strict tasks with D = 1 and small integer periods, implicit tasks
    sharing one period that is a multiple of all of them.

    Totals are deliberately unconstrained so both feasible and infeasible
    sets occur.
    """
    if n_strict < 0 or n_implicit < 0 or n_strict + n_implicit < 1:
        raise BadParam("need at least one task")
    rng = random.Random(f"rtpack-lemma1:{seed}")
    q = denominator_bound
    tasks = []
    tid = 1
    strict_periods = []
    for _ in range(n_strict):
        period = Fraction(rng.randint(2, 6))
        strict_periods.append(period)
        c = Fraction(rng.randint(1, q), q)
        tasks.append(Task(c=c, d=Fraction(1), t=period, id=tid))
        tid += 1
    if n_implicit:
        base = math.lcm(*(int(p) for p in strict_periods)) if strict_periods else 1
        h = Fraction(base * rng.randint(1, 3))
        for _ in range(n_implicit):
            c = h * Fraction(rng.randint(1, q), q)
            tasks.append(Task(c=c, d=h, t=h, id=tid))
            tid += 1
    return TaskSet(tuple(tasks), name=f"lemma1-s{seed}")
