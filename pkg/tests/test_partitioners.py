from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from rtpack.errors import ValidationError
from rtpack.feasibility import Mode, verify_partition
from rtpack.generators import (
    gen_best_fit_adversary,
    gen_speedup_gap,
    gen_worst_fit_adversary,
)
from rtpack.model import task, taskset, transform_dagger
from rtpack.partitioners import Strategy, dagger_greedy, dm_admits, dm_partition

from conftest import valid_tasksets

F = Fraction


class TestDmAdmits:
    def test_roomy_bin(self):
        assert dm_admits([task(1, 2, 4)], task(1, 3, 6)) is True

    def test_empty_bin_admits_any_valid_task(self):
        assert dm_admits([], task(1, 1, 1)) is True

    def test_utilization_overflow(self):
        assert dm_admits([task(1, 1, 1)], task(1, 2, 2)) is False


class TestDmPartition:
    def test_best_fit_adversary_pairs(self):
        ts = gen_best_fit_adversary(4)
        part = dm_partition(ts, Strategy.BEST_FIT)
        assert part.bins == ((1, 2), (3, 4), (5, 6), (7, 8))
        assert part.m == 4

    def test_worst_fit_adversary_pairs(self):
        ts = gen_worst_fit_adversary(4)
        part = dm_partition(ts, Strategy.WORST_FIT)
        assert part.bins == ((1, 2), (3, 4), (5, 6), (7, 8))

    def test_single_task(self):
        for strat in Strategy:
            assert dm_partition(taskset([(1, 1, 1)]), strat).m == 1

    def test_rejects_invalid(self):
        with pytest.raises(ValidationError):
            dm_partition(taskset([(5, 2, 4)]), Strategy.FIRST_FIT)

    def test_worst_fit_spreads_where_first_fit_stacks(self):
        ts = taskset([(1, 2, 2), ("3/5", 2, 2), ("4/5", 2, 2), ("2/5", 2, 2)])
        ff = dm_partition(ts, Strategy.FIRST_FIT)
        wf = dm_partition(ts, Strategy.WORST_FIT)
        assert ff.bins == ((1, 2, 4), (3,))
        assert wf.bins == ((1, 2), (3, 4))

    @given(valid_tasksets(), st.sampled_from(list(Strategy)))
    def test_output_verifies_in_both_modes(self, ts, strat):
        part = dm_partition(ts, strat)
        assert verify_partition(ts, part, Mode.APPROXIMATE)
        assert verify_partition(ts, part, Mode.EXACT)

    @given(valid_tasksets(), st.sampled_from(list(Strategy)))
    def test_deterministic(self, ts, strat):
        assert dm_partition(ts, strat) == dm_partition(ts, strat)


class TestDaggerGreedy:
    def test_first_fit_on_loads(self):
        # tightened utilizations 3/5, 3/5, 2/5: first and third share a bin
        ts = taskset([("3/5", 1, 1), ("3/5", 1, 1), ("2/5", 1, 1)])
        part = dagger_greedy(ts, Strategy.FIRST_FIT)
        assert part.bins == ((1, 3), (2,))

    def test_single_task(self):
        assert dagger_greedy(taskset([(1, 5, 3)]), Strategy.FIRST_FIT).m == 1

    def test_speedup_family_needs_one_bin_each(self):
        ts = gen_speedup_gap(4, F(1, 2))
        part = dagger_greedy(ts, Strategy.FIRST_FIT)
        assert part.m == 4

    def test_decreasing_order_flag(self):
        ts = taskset([("1/5", 1, 1), ("3/5", 1, 1), ("1/2", 1, 1), ("2/5", 1, 1)])
        in_order = dagger_greedy(ts, Strategy.FIRST_FIT)
        decreasing = dagger_greedy(ts, Strategy.FIRST_FIT, decreasing=True)
        assert in_order.bins == ((1, 2), (3, 4))
        assert decreasing.bins == ((2, 4), (1, 3))

    @given(valid_tasksets(), st.sampled_from(list(Strategy)))
    def test_output_verifies_exact(self, ts, strat):
        part = dagger_greedy(ts, strat)
        assert verify_partition(ts, part, Mode.EXACT)

    @given(valid_tasksets(), st.sampled_from(list(Strategy)))
    def test_any_fit_pairwise_load_property(self, ts, strat):
        part = dagger_greedy(ts, strat)
        dag = transform_dagger(ts)
        loads = [
            sum((dag.by_id(tid).utilization for tid in b), F(0)) for b in part.bins
        ]
        for i in range(len(loads)):
            for j in range(i + 1, len(loads)):
                assert loads[i] + loads[j] > 1

    @given(valid_tasksets(), st.sampled_from(list(Strategy)))
    def test_deterministic(self, ts, strat):
        assert dagger_greedy(ts, strat) == dagger_greedy(ts, strat)
