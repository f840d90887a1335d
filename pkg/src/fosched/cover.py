"""Set-cover style solver.

Each round schedules the largest deadline-feasible subsequence of the still
unscheduled jobs on a fresh machine. That subsequence is found by a dynamic
program over minimum completion times: table[i][k] is the smallest finishing
time of any feasible k-subset of the first i remaining jobs, or INFEASIBLE
when no such subset exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import InputError, Instance, Job, Schedule

# Never equal to a reachable completion sum, and ordered above every one.
INFEASIBLE = float("inf")


@dataclass(frozen=True)
class DpTable:
    """Minimum completion times over prefix subsets of a job sequence.

    ``rows[i][k]`` is the least completion time of a feasible k-subset of
    jobs[0:i] run back to back on one machine, INFEASIBLE when none exists.
    Row 0 is the empty prefix. Rows are rectangular (k ranges 0..n).
    """

    jobs: tuple[Job, ...]
    rows: tuple[tuple[float, ...], ...]

    def k_max(self) -> int:
        """Largest subset size feasible on one machine."""
        last = self.rows[-1]
        for k in range(len(self.jobs), -1, -1):
            if last[k] != INFEASIBLE:
                return k
        return 0

    def subset(self, size: int | None = None) -> list[int]:
        """0-based positions of a feasible subset of the given size.

        Defaults to a maximum subset. On ties the walk prefers leaving a job
        out, so the returned positions are the latest-index choice among
        minimum-completion subsets. Raises InputError for infeasible sizes.
        """
        k = self.k_max() if size is None else size
        i = len(self.jobs)
        if not 0 <= k <= i or self.rows[i][k] == INFEASIBLE:
            raise InputError(f"no feasible subset of size {size}")
        picks: list[int] = []
        while k > 0:
            if self.rows[i][k] == self.rows[i - 1][k]:
                i -= 1
            else:
                picks.append(i - 1)
                i -= 1
                k -= 1
        picks.reverse()
        return picks


def build_table(jobs: Sequence[Job]) -> DpTable:
    """Dynamic program over one machine: extend with each job in order.

    A k-subset through job i either skips it (value carries over) or ends
    with it, which is admissible only when the completion still meets d_i.
    """
    n = len(jobs)
    rows: list[list[float]] = [[0] + [INFEASIBLE] * n]
    for job in jobs:
        prev = rows[-1]
        row = prev.copy()
        for k in range(1, len(rows) + 1):
            ending_here = prev[k - 1] + job.p
            if ending_here <= job.d and ending_here < row[k]:
                row[k] = ending_here
        rows.append(row)
    return DpTable(tuple(jobs), tuple(tuple(r) for r in rows))


def max_feasible_subset(jobs: Sequence[Job]) -> tuple[int, list[int]]:
    """Size and 0-based positions of a largest single-machine subset."""
    if not jobs:
        return 0, []
    table = build_table(jobs)
    k = table.k_max()
    return k, table.subset(k)


def setcover_greedy(instance: Instance) -> Schedule:
    """Repeatedly peel off a largest feasible subset onto a fresh machine.

    Terminates because a lone job always fits (d >= p), so every round
    schedules at least one job. Machines are relabeled to first-use order.
    """
    remaining = list(range(instance.n))
    labels = [0] * instance.n
    machine = 0
    while remaining:
        machine += 1
        _, picks = max_feasible_subset([instance.jobs[t] for t in remaining])
        chosen = {remaining[t] for t in picks}
        for t in chosen:
            labels[t] = machine
        remaining = [t for t in remaining if t not in chosen]
    return Schedule.from_assignment(labels)
