"""First-fit and next-fit greedy solvers over the fixed job order.

Both walk the job sequence once and never revisit a placement, so running
them on a prefix of an instance reproduces a prefix of their output. First
fit probes every open machine in label order; next fit probes only the most
recently opened machine.
"""

from __future__ import annotations

from typing import NamedTuple

from .core import Instance, Schedule


class PlacementTrace(NamedTuple):
    """Per-job diagnostics: fit tests run, machine chosen, its load after."""

    tried: int
    machine: int
    load_after: int


def first_fit(instance: Instance) -> Schedule:
    """Place each job on the lowest-labeled machine that still meets its
    deadline, opening a new machine when none does."""
    schedule, _ = first_fit_traced(instance)
    return schedule


def first_fit_traced(instance: Instance) -> tuple[Schedule, tuple[PlacementTrace, ...]]:
    loads: list[int] = []
    assignment: list[int] = []
    trace: list[PlacementTrace] = []
    for job in instance.jobs:
        tried = 0
        chosen = 0
        for i, load in enumerate(loads):
            tried += 1
            if load + job.p <= job.d:
                chosen = i + 1
                loads[i] = load + job.p
                break
        if not chosen:
            loads.append(job.p)  # fresh machine always admits: d >= p
            chosen = len(loads)
        assignment.append(chosen)
        trace.append(PlacementTrace(tried, chosen, loads[chosen - 1]))
    return Schedule(tuple(assignment)), tuple(trace)


def next_fit(instance: Instance) -> Schedule:
    """Like first fit, but only the most recently opened machine is probed."""
    schedule, _ = next_fit_traced(instance)
    return schedule


def next_fit_traced(instance: Instance) -> tuple[Schedule, tuple[PlacementTrace, ...]]:
    loads: list[int] = []
    assignment: list[int] = []
    trace: list[PlacementTrace] = []
    for job in instance.jobs:
        tried = 0
        if loads:
            tried = 1
        if loads and loads[-1] + job.p <= job.d:
            loads[-1] += job.p
        else:
            loads.append(job.p)
        assignment.append(len(loads))
        trace.append(PlacementTrace(tried, len(loads), loads[-1]))
    return Schedule(tuple(assignment)), tuple(trace)
