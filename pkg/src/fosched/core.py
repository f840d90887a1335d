"""Domain model for fixed-order machine scheduling.

A job is an integer (processing time, deadline) pair. An instance is a job
sequence whose position encodes a global priority order: every machine must
process its jobs in that order, back to back from time zero. A schedule maps
each job to a machine; it is feasible when every job's cumulative load on its
own machine stays within the job's deadline.

All arithmetic is exact integer arithmetic. Instances are validated so the
total processing time fits a signed 64-bit range, which keeps every load and
completion value representable in fixed-width integers as well.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

MAX_TOTAL_WORK = 2**63 - 1

# Per-job completion times, in job order.
CompletionProfile = tuple[int, ...]


class InputError(ValueError):
    """Invalid job data, instance file, schedule shape, or generator parameters."""


class CoverageError(InputError):
    """Schedule does not cover exactly the instance's job set."""


def _require_int(value: object, what: str) -> int:
    # bool is an int subclass; reject it explicitly
    if not isinstance(value, int) or isinstance(value, bool):
        raise InputError(f"{what} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class Job:
    """One job: processing time ``p`` and deadline ``d`` (integer time units).

    Invariants: p >= 1 and d >= p, so a job alone on a fresh machine always
    meets its deadline. ``slack`` is the latest start time that still works.
    """

    p: int
    d: int

    def __post_init__(self) -> None:
        _require_int(self.p, "processing time")
        _require_int(self.d, "deadline")
        if self.p < 1:
            raise InputError(f"processing time must be >= 1, got {self.p}")
        if self.d < self.p:
            raise InputError(f"deadline {self.d} is below processing time {self.p}")

    @property
    def slack(self) -> int:
        return self.d - self.p


@dataclass(frozen=True)
class Instance:
    """An ordered job sequence; position is the fixed priority order.

    The empty instance is legal: IO handles it and every solver maps it to
    zero machines. ``name`` is identification metadata only and does not
    participate in equality.
    """

    jobs: tuple[Job, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if self.name is not None and not isinstance(self.name, str):
            raise InputError("instance name must be a string")
        total = 0
        for job in self.jobs:
            if not isinstance(job, Job):
                raise InputError(f"expected a Job, got {job!r}")
            total += job.p
        if total > MAX_TOTAL_WORK:
            raise InputError("total processing time exceeds the 64-bit work cap")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], name: str | None = None) -> "Instance":
        return cls(tuple(Job(p, d) for p, d in pairs), name=name)

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def total_work(self) -> int:
        return sum(job.p for job in self.jobs)

    def __len__(self) -> int:
        return len(self.jobs)

    def __iter__(self) -> Iterator[Job]:
        return iter(self.jobs)


@dataclass(frozen=True)
class Schedule:
    """Job-to-machine assignment: ``assignment[j]`` is the machine of job j.

    Machine labels are 1-based and contiguous (1..m with no gaps). Solvers
    emit labels in first-use order; ``from_assignment`` relabels an arbitrary
    labeling that way.
    """

    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(self.assignment))
        top = 0
        for label in self.assignment:
            _require_int(label, "machine label")
            if label < 1:
                raise InputError(f"machine labels are 1-based, got {label}")
            if label > top:
                top = label
        if top and set(self.assignment) != set(range(1, top + 1)):
            raise InputError("machine labels must be contiguous 1..m")

    @classmethod
    def from_assignment(cls, labels: Iterable[int]) -> "Schedule":
        """Build a schedule with machines relabeled in first-use order."""
        relabel: dict[int, int] = {}
        canonical = []
        for label in labels:
            _require_int(label, "machine label")
            if label not in relabel:
                relabel[label] = len(relabel) + 1
            canonical.append(relabel[label])
        return cls(tuple(canonical))

    @property
    def machine_count(self) -> int:
        return max(self.assignment, default=0)

    def jobs_on(self, machine: int) -> tuple[int, ...]:
        """0-based positions of the jobs on ``machine``, in priority order."""
        return tuple(j for j, label in enumerate(self.assignment) if label == machine)


def _check_coverage(instance: Instance, schedule: Schedule) -> None:
    if len(schedule.assignment) != instance.n:
        raise CoverageError(
            f"schedule covers {len(schedule.assignment)} jobs, instance has {instance.n}"
        )


def completion_profile(instance: Instance, schedule: Schedule) -> CompletionProfile:
    """Completion time of every job under the fixed per-machine order."""
    _check_coverage(instance, schedule)
    acc: dict[int, int] = {}
    out = []
    for job, machine in zip(instance.jobs, schedule.assignment):
        finish = acc.get(machine, 0) + job.p
        acc[machine] = finish
        out.append(finish)
    return tuple(out)


def is_feasible(instance: Instance, schedule: Schedule) -> bool:
    """True iff every job completes by its deadline.

    A schedule that does not cover exactly the instance's jobs raises
    CoverageError; that is an input defect, not infeasibility.
    """
    _check_coverage(instance, schedule)
    acc: dict[int, int] = {}
    for job, machine in zip(instance.jobs, schedule.assignment):
        finish = acc.get(machine, 0) + job.p
        if finish > job.d:
            return False
        acc[machine] = finish
    return True


def loads(instance: Instance, schedule: Schedule) -> tuple[int, ...]:
    """Total processing time per machine; position i holds machine i+1."""
    _check_coverage(instance, schedule)
    totals = [0] * schedule.machine_count
    for job, machine in zip(instance.jobs, schedule.assignment):
        totals[machine - 1] += job.p
    return tuple(totals)


# --- file format ------------------------------------------------------------
#
# Instance files are JSON: {"name": optional str, "jobs": [{"p": int, "d": int}, ...]}
# Schedules serialize as {"machines": m, "assignment": [1-based labels in job order]}.
# Serialization is canonical (fixed key order, two-space indent, trailing
# newline) so equal values produce identical bytes.


def instance_to_json(instance: Instance) -> str:
    doc: dict = {}
    if instance.name is not None:
        doc["name"] = instance.name
    doc["jobs"] = [{"p": job.p, "d": job.d} for job in instance.jobs]
    return json.dumps(doc, indent=2) + "\n"


def instance_from_json(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid instance file: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("instance file must hold a JSON object")
    unknown = set(doc) - {"name", "jobs"}
    if unknown:
        raise InputError(f"unknown instance keys: {sorted(unknown)}")
    if "jobs" not in doc or not isinstance(doc["jobs"], list):
        raise InputError('instance file needs a "jobs" array')
    jobs = []
    for idx, item in enumerate(doc["jobs"]):
        if not isinstance(item, dict) or set(item) != {"p", "d"}:
            raise InputError(f"job {idx}: expected an object with exactly p and d")
        try:
            jobs.append(Job(item["p"], item["d"]))
        except InputError as exc:
            raise InputError(f"job {idx}: {exc}") from None
    return Instance(tuple(jobs), name=doc.get("name"))


def load_instance(path: str | Path) -> Instance:
    return instance_from_json(Path(path).read_text(encoding="utf-8"))


def save_instance(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(instance_to_json(instance), encoding="utf-8")


def schedule_to_json(schedule: Schedule) -> str:
    doc = {"machines": schedule.machine_count, "assignment": list(schedule.assignment)}
    return json.dumps(doc, indent=2) + "\n"


def schedule_from_json(text: str) -> Schedule:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid schedule: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"machines", "assignment"}:
        raise InputError("schedule must hold exactly machines and assignment")
    if not isinstance(doc["assignment"], list):
        raise InputError('"assignment" must be an array')
    schedule = Schedule(tuple(doc["assignment"]))
    machines = _require_int(doc["machines"], "machine count")
    if machines != schedule.machine_count:
        raise InputError(
            f"declared machine count {machines} != actual {schedule.machine_count}"
        )
    return schedule
