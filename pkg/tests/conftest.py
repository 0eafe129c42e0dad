from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from rtpack.model import Task, TaskSet

settings.register_profile(
    "default",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def rationals(draw, min_num=1, max_num=12, max_den=3):
    """Small positive rationals; small denominators keep hyperperiods tame."""
    return Fraction(draw(st.integers(min_num, max_num)), draw(st.integers(1, max_den)))


@st.composite
def time_points(draw):
    return Fraction(draw(st.integers(0, 60)), draw(st.integers(1, 4)))


@st.composite
def valid_tasks(draw, tid=1):
    period = draw(rationals())
    d = draw(rationals())
    cap = min(period, d)
    c = cap * Fraction(draw(st.integers(1, 6)), 6)
    return Task(c=c, d=d, t=period, id=tid)


@st.composite
def valid_tasksets(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    return TaskSet(tuple(draw(valid_tasks(tid=i + 1)) for i in range(n)))
