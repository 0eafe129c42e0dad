from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from rtpack.model import (
    DeadlineClass,
    Task,
    TaskSet,
    as_rational,
    classify,
    dbf,
    dbf_star,
    gamma_metric,
    lambda_metric,
    task,
    taskset,
    transform_dagger,
    utilization,
    validate,
)

from conftest import rationals, time_points, valid_tasks, valid_tasksets

F = Fraction


class TestRationalConversion:
    def test_decimal_literal_is_exact(self):
        assert as_rational("0.25") == F(1, 4)

    def test_fraction_literal(self):
        assert as_rational("1/3") == F(1, 3)

    def test_int_passthrough(self):
        assert as_rational(7) == F(7)

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            as_rational(0.1)

    def test_bool_rejected(self):
        with pytest.raises(TypeError):
            as_rational(True)


class TestUtilization:
    def test_quarter(self):
        assert utilization(task(1, 2, 4)) == F(1, 4)

    def test_saturated(self):
        assert utilization(task(3, 3, 3)) == 1

    def test_tiny_long_period(self):
        assert utilization(task("1/4", 1, 4096)) == F(1, 16384)


class TestDbf:
    def test_before_deadline(self):
        assert dbf(task(2, 5, 7), F(4)) == 0

    def test_first_job_due(self):
        assert dbf(task(2, 5, 7), F(5)) == 2

    def test_two_jobs(self):
        assert dbf(task(2, 5, 7), F(12)) == 4

    def test_star_before_deadline(self):
        assert dbf_star(task(2, 5, 7), F(4)) == 0

    def test_star_at_deadline(self):
        assert dbf_star(task(2, 5, 7), F(5)) == 2

    def test_star_fractional(self):
        assert dbf_star(task(2, 5, 7), F(6)) == F(16, 7)

    @given(valid_tasks(), time_points())
    def test_dbf_below_star(self, tsk, t):
        assert dbf(tsk, t) <= dbf_star(tsk, t)

    @given(valid_tasks(), time_points(), time_points())
    def test_nondecreasing(self, tsk, t1, t2):
        lo, hi = min(t1, t2), max(t1, t2)
        assert dbf(tsk, lo) <= dbf(tsk, hi)
        assert dbf_star(tsk, lo) <= dbf_star(tsk, hi)

    @given(valid_tasks())
    def test_zero_below_and_c_at_deadline(self, tsk):
        below = tsk.d - F(1, 100)
        if below >= 0:
            assert dbf(tsk, below) == 0
            assert dbf_star(tsk, below) == 0
        assert dbf(tsk, tsk.d) == tsk.c
        assert dbf_star(tsk, tsk.d) == tsk.c

    @given(valid_tasks(), time_points())
    def test_period_shift_additivity(self, tsk, t):
        t = t + tsk.d  # ensure t >= D
        assert dbf(tsk, t + tsk.t) == dbf(tsk, t) + tsk.c


class TestMetrics:
    def test_lambda_ratio(self):
        assert lambda_metric(taskset([(1, 2, 4)])) == 2

    def test_lambda_implicit_is_one(self):
        assert lambda_metric(taskset([(1, 3, 3)])) == 1

    def test_lambda_max_over_tasks(self):
        assert lambda_metric(taskset([(1, 4, 2), (1, 1, 5)])) == 5

    def test_gamma(self):
        assert gamma_metric(taskset([(1, 2, 4)])) == F(1, 2)

    def test_gamma_boundary(self):
        assert gamma_metric(taskset([(3, 3, 3)])) == 1

    def test_gamma_max_over_tasks(self):
        assert gamma_metric(taskset([(1, 4, 2), (1, 8, 8)])) == F(1, 2)


class TestTransform:
    def test_period_shrinks_to_deadline(self):
        out = transform_dagger(taskset([(2, 4, 10)]))
        assert out.tasks[0] == Task(F(2), F(4), F(4), id=1)

    def test_deadline_shrinks_to_period(self):
        out = transform_dagger(taskset([(1, 5, 3)]))
        assert out.tasks[0] == Task(F(1), F(3), F(3), id=1)

    def test_implicit_fixed_point(self):
        ts = taskset([(1, 3, 3)])
        assert transform_dagger(ts) == ts

    @given(valid_tasksets())
    def test_idempotent(self, ts):
        once = transform_dagger(ts)
        assert transform_dagger(once) == once

    @given(valid_tasksets())
    def test_tightened_utilization_is_density(self, ts):
        out = transform_dagger(ts)
        for before, after in zip(ts, out):
            assert after.utilization == before.c / min(before.t, before.d)
            assert after.d <= before.d
            assert after.t <= before.t
            assert after.id == before.id

    @given(valid_tasksets())
    def test_result_implicit_and_lambda_one(self, ts):
        out = transform_dagger(ts)
        assert classify(out) is DeadlineClass.IMPLICIT
        assert lambda_metric(out) == 1

    @given(valid_tasksets())
    def test_utilization_within_lambda_factor(self, ts):
        lam = lambda_metric(ts)
        out = transform_dagger(ts)
        for before, after in zip(ts, out):
            assert before.utilization >= after.utilization / lam


class TestClassify:
    def test_implicit(self):
        assert classify(taskset([(1, 3, 3)])) is DeadlineClass.IMPLICIT

    def test_constrained(self):
        assert classify(taskset([(1, 2, 3)])) is DeadlineClass.CONSTRAINED

    def test_arbitrary(self):
        assert classify(taskset([(1, 5, 3)])) is DeadlineClass.ARBITRARY

    def test_constrained_needs_all_tasks(self):
        assert (
            classify(taskset([(1, 3, 3), (1, 2, 3)])) is DeadlineClass.CONSTRAINED
        )


class TestValidate:
    def test_clean(self):
        assert validate(taskset([(1, 2, 4)])) == []

    def test_density_violation(self):
        # C=5, D=2, T=4 breaches both C/D <= 1 and C/T <= 1: one record each
        out = validate(taskset([(5, 2, 4)]))
        assert {v.task_id for v in out} == {1}
        assert any("C/D" in v.message for v in out)
        assert any("C/T" in v.message for v in out)

    def test_utilization_violation(self):
        out = validate(taskset([(5, 6, 4)]))
        assert len(out) == 1 and "C/T" in out[0].message

    def test_nonpositive_fields(self):
        ts = TaskSet((Task(F(0), F(-1), F(0), id=1),))
        fields = {v.field for v in validate(ts)}
        assert fields == {"c", "d", "t"}

    @given(valid_tasksets())
    def test_generated_sets_are_clean(self, ts):
        assert validate(ts) == []


class TestTaskSet:
    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValueError):
            TaskSet((Task(F(1), F(2), F(2), id=1), Task(F(1), F(2), F(2), id=1)))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            TaskSet(())

    def test_ids_assigned_in_order(self):
        ts = taskset([(1, 2, 2), (1, 3, 3)])
        assert [t.id for t in ts] == [1, 2]

    def test_by_id(self):
        ts = taskset([(1, 2, 2), (1, 3, 3)])
        assert ts.by_id(2).d == 3
        with pytest.raises(KeyError):
            ts.by_id(99)
