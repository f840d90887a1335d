import pytest
from hypothesis import given
import hypothesis.strategies as st

from fosched import (
    Instance,
    first_fit,
    first_fit_traced,
    gen_tight2,
    is_feasible,
    loads,
    next_fit,
    next_fit_traced,
)
from helpers import NF_HARD_5, instances_st


class TestFirstFitExamples:
    def test_alternates_over_two_machines(self):
        assert first_fit(NF_HARD_5).assignment == (1, 2, 1, 2, 1)

    def test_tight2_opens_2k_plus_1(self):
        assert first_fit(gen_tight2(2)).machine_count == 5

    def test_single_job(self):
        assert first_fit(Instance.from_pairs([(4, 4)])).assignment == (1,)

    def test_unit_jobs_with_paired_deadlines(self):
        inst = Instance.from_pairs([(1, 1), (1, 1), (1, 2), (1, 2)])
        assert first_fit(inst).assignment == (1, 2, 1, 2)

    def test_empty(self):
        assert first_fit(Instance(())).machine_count == 0


class TestNextFitExamples:
    def test_growth_family_opens_one_machine_per_job(self):
        assert next_fit(NF_HARD_5).assignment == (1, 2, 3, 4, 5)

    def test_loose_jobs_stay_on_one_machine(self):
        assert next_fit(Instance.from_pairs([(1, 3)] * 3)).assignment == (1, 1, 1)

    def test_empty(self):
        assert next_fit(Instance(())).machine_count == 0


class TestTraces:
    def test_tracing_does_not_change_the_schedule(self):
        for inst in (NF_HARD_5, gen_tight2(3)):
            assert first_fit_traced(inst)[0] == first_fit(inst)
            assert next_fit_traced(inst)[0] == next_fit(inst)

    def test_first_fit_trace_content(self):
        _, trace = first_fit_traced(NF_HARD_5)
        # job 1 opens machine 1 untested; job 2 fails machine 1 and opens 2
        assert trace[0] == (0, 1, 1)
        assert trace[1] == (1, 2, 2)
        assert trace[2] == (1, 1, 4)  # fits machine 1 on the first probe

    @given(instances_st())
    def test_trace_invariants(self, instance):
        for traced in (first_fit_traced, next_fit_traced):
            schedule, trace = traced(instance)
            open_machines = 0
            for step, label in zip(trace, schedule.assignment):
                assert step.machine == label
                assert step.machine <= open_machines + 1
                assert step.tried <= max(open_machines, 1)
                open_machines = max(open_machines, step.machine)


@given(instances_st())
def test_greedy_schedules_are_feasible(instance):
    assert is_feasible(instance, first_fit(instance))
    assert is_feasible(instance, next_fit(instance))


@given(instances_st())
def test_first_fit_never_beaten_by_next_fit(instance):
    assert first_fit(instance).machine_count <= next_fit(instance).machine_count


@given(instances_st(max_n=12), st.integers(0, 12))
def test_prefix_consistency(instance, cut):
    cut = min(cut, instance.n)
    prefix = Instance(instance.jobs[:cut])
    assert first_fit(prefix).assignment == first_fit(instance).assignment[:cut]
    assert next_fit(prefix).assignment == next_fit(instance).assignment[:cut]


@given(instances_st(max_n=12))
def test_nonincreasing_slack_makes_first_and_next_fit_identical(instance):
    ordered = Instance(tuple(sorted(instance.jobs, key=lambda j: -j.slack)))
    assert first_fit(ordered).assignment == next_fit(ordered).assignment


@given(st.lists(st.integers(1, 12), max_size=12))
def test_unit_jobs_leave_first_fit_loads_nonincreasing(deadlines):
    instance = Instance.from_pairs([(1, d) for d in deadlines])
    final = loads(instance, first_fit(instance))
    assert all(a >= b for a, b in zip(final, final[1:]))


def test_tight2_first_fit_fills_pairs_then_one_machine_per_closer():
    # k machines at load k+1, then each closing job opens its own machine
    inst = gen_tight2(3)
    schedule = first_fit(inst)
    assert schedule.machine_count == 7
    assert loads(inst, schedule)[:3] == (4, 4, 4)
