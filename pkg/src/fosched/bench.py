"""Benchmark harness: run solvers, check proven bounds, emit reports.

Reports are deterministic apart from the timing columns: rows keep input
order, columns have a fixed order, and all counts derive from seeded
generators, so two runs of the same sweep differ only in ms_* cells.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .core import InputError, Instance, Schedule, is_feasible
from .cover import setcover_greedy
from .exact import DEFAULT_ORACLE_CAP, CapacityError, SearchBudgetError, optimal
from .greedy import first_fit, next_fit
from .instances import GenSpec, OrderClass, class_tokens, classify, gen_random, generate, parse_class_tokens

ALGORITHMS = ("ff", "nf", "cover", "opt")
ORACLE_CAP_ENV = "FOSCHED_ORACLE_CAP"


def effective_oracle_cap() -> int:
    """Size cap for the exact solver, overridable via FOSCHED_ORACLE_CAP."""
    raw = os.environ.get(ORACLE_CAP_ENV)
    if raw is None:
        return DEFAULT_ORACLE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"{ORACLE_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 0:
        raise InputError(f"{ORACLE_CAP_ENV} must be >= 0, got {cap}")
    return cap


@dataclass(frozen=True)
class SolveReport:
    """One solver's outcome on one instance."""

    algorithm: str
    machine_count: int | None
    schedule: Schedule | None
    ms: float
    error: str | None = None
    error_kind: str | None = None  # "capacity" or "budget" when error is set


_SOLVERS: dict[str, Callable] = {
    "ff": lambda inst, cap, budget: first_fit(inst),
    "nf": lambda inst, cap, budget: next_fit(inst),
    "cover": lambda inst, cap, budget: setcover_greedy(inst),
    "opt": lambda inst, cap, budget: optimal(inst, limit=cap, node_budget=budget),
}


def run(
    instance: Instance,
    algorithms: Iterable[str],
    *,
    oracle_cap: int | None = None,
    node_budget: int | None = None,
) -> list[SolveReport]:
    """Run the named solvers; one report per algorithm in canonical order.

    Every emitted schedule is re-checked for feasibility. Capacity or budget
    failures of the exact solver land in that algorithm's report instead of
    aborting the others.
    """
    requested = set(algorithms)
    unknown = requested - set(ALGORITHMS)
    if unknown:
        raise InputError(f"unknown algorithms: {sorted(unknown)}")
    reports = []
    for name in ALGORITHMS:
        if name not in requested:
            continue
        start = time.perf_counter()
        try:
            schedule = _SOLVERS[name](instance, oracle_cap, node_budget)
        except (CapacityError, SearchBudgetError) as exc:
            ms = round((time.perf_counter() - start) * 1000, 3)
            kind = "capacity" if isinstance(exc, CapacityError) else "budget"
            reports.append(SolveReport(name, None, None, ms, str(exc), kind))
            continue
        ms = round((time.perf_counter() - start) * 1000, 3)
        if not is_feasible(instance, schedule):
            raise RuntimeError(f"{name} produced an infeasible schedule")
        reports.append(SolveReport(name, schedule.machine_count, schedule, ms))
    return reports


@dataclass(frozen=True)
class BenchRecord:
    """Machine counts and timings for one instance; None means not run."""

    instance_id: str
    n: int
    classes: OrderClass
    ff: int | None = None
    nf: int | None = None
    cover: int | None = None
    opt: int | None = None
    ms_ff: float | None = None
    ms_nf: float | None = None
    ms_cover: float | None = None
    ms_opt: float | None = None

    def _ratio(self, count: int | None) -> float | None:
        if count is None or self.opt is None or self.opt == 0:
            return None
        return count / self.opt

    @property
    def ratio_ff(self) -> float | None:
        return self._ratio(self.ff)

    @property
    def ratio_nf(self) -> float | None:
        return self._ratio(self.nf)

    @property
    def ratio_cover(self) -> float | None:
        return self._ratio(self.cover)


def _record_from_reports(
    instance_id: str, instance: Instance, reports: Sequence[SolveReport]
) -> BenchRecord:
    counts: dict[str, int | None] = {}
    times: dict[str, float | None] = {}
    for rep in reports:
        counts[rep.algorithm] = rep.machine_count
        times[rep.algorithm] = None if rep.error else rep.ms
    return BenchRecord(
        instance_id=instance_id,
        n=instance.n,
        classes=classify(instance),
        ff=counts.get("ff"),
        nf=counts.get("nf"),
        cover=counts.get("cover"),
        opt=counts.get("opt"),
        ms_ff=times.get("ff"),
        ms_nf=times.get("nf"),
        ms_cover=times.get("cover"),
        ms_opt=times.get("opt"),
    )


def evaluate(
    instance: Instance,
    instance_id: str | None = None,
    algorithms: Iterable[str] = ALGORITHMS,
    *,
    oracle_cap: int | None = None,
    node_budget: int | None = None,
) -> BenchRecord:
    """Run solvers on one instance and fold the outcomes into a record."""
    reports = run(instance, algorithms, oracle_cap=oracle_cap, node_budget=node_budget)
    name = instance_id if instance_id is not None else (instance.name or "instance")
    return _record_from_reports(name, instance, reports)


# --- proven bounds ----------------------------------------------------------


@dataclass(frozen=True)
class BoundAssertion:
    """A guarantee a record must satisfy whenever it applies.

    ``applies`` and ``holds`` are total over records that carry an opt
    count; assertions needing other counts skip records lacking them.
    """

    name: str
    rule: str
    applies: Callable[[BenchRecord], bool]
    holds: Callable[[BenchRecord], bool]


@dataclass(frozen=True)
class BoundViolation:
    assertion: str
    instance_id: str
    detail: str


def _has(record: BenchRecord, *fields: str) -> bool:
    return all(getattr(record, f) is not None for f in fields)


def _harmonic_cap(record: BenchRecord) -> int:
    return math.ceil((math.log(record.n) + 1) * record.opt)


BOUND_ASSERTIONS: tuple[BoundAssertion, ...] = (
    BoundAssertion(
        "unit-ff-optimal",
        "unit processing times: ff == opt",
        lambda r: OrderClass.UNIT_PROCESSING in r.classes and _has(r, "ff"),
        lambda r: r.ff == r.opt,
    ),
    BoundAssertion(
        "slack-noninc-ff-equals-nf",
        "non-increasing slacks: ff == nf",
        lambda r: OrderClass.SLACK_NONINCREASING in r.classes and _has(r, "ff", "nf"),
        lambda r: r.ff == r.nf,
    ),
    BoundAssertion(
        "slack-noninc-ff-below-double",
        "non-increasing slacks: ff <= 2*opt - 1",
        lambda r: OrderClass.SLACK_NONINCREASING in r.classes
        and _has(r, "ff")
        and r.opt >= 1,
        lambda r: r.ff <= 2 * r.opt - 1,
    ),
    BoundAssertion(
        "slack-nondec-ff-below-double",
        "non-decreasing slacks: ff <= 2*opt - 1",
        lambda r: OrderClass.SLACK_NONDECREASING in r.classes
        and _has(r, "ff")
        and r.opt >= 1,
        lambda r: r.ff <= 2 * r.opt - 1,
    ),
    BoundAssertion(
        "deadline-noninc-ff-below-double",
        "non-increasing deadlines: ff <= 2*opt - 1",
        lambda r: OrderClass.DEADLINE_NONINCREASING in r.classes
        and _has(r, "ff")
        and r.opt >= 1,
        lambda r: r.ff <= 2 * r.opt - 1,
    ),
    BoundAssertion(
        "opt1-ff-exact",
        "opt == 1: ff == 1",
        lambda r: r.opt == 1 and _has(r, "ff"),
        lambda r: r.ff == 1,
    ),
    BoundAssertion(
        "opt2-ff-at-most-3",
        "opt == 2: ff <= 3",
        lambda r: r.opt == 2 and _has(r, "ff"),
        lambda r: r.ff <= 3,
    ),
    BoundAssertion(
        "opt3-ff-at-most-6",
        "opt == 3: ff <= 6",
        lambda r: r.opt == 3 and _has(r, "ff"),
        lambda r: r.ff <= 6,
    ),
    BoundAssertion(
        "cover-harmonic",
        "cover <= ceil((ln n + 1) * opt)",
        lambda r: _has(r, "cover") and r.n >= 1 and r.opt >= 1,
        lambda r: r.cover <= _harmonic_cap(r),
    ),
)


def assert_bounds(record: BenchRecord) -> list[BoundViolation]:
    """Violations of every applicable proven bound; empty when all hold."""
    if record.opt is None:
        raise InputError(f"record {record.instance_id!r} has no opt count")
    violations = []
    for assertion in BOUND_ASSERTIONS:
        if assertion.applies(record) and not assertion.holds(record):
            violations.append(
                BoundViolation(
                    assertion.name,
                    record.instance_id,
                    f"{assertion.rule} failed: ff={record.ff} nf={record.nf} "
                    f"cover={record.cover} opt={record.opt} n={record.n}",
                )
            )
    return violations


# --- counterexample hunt ----------------------------------------------------


@dataclass(frozen=True)
class HuntResult:
    """Outcome of a randomized search for high ff/opt ratios."""

    best: BenchRecord | None
    evaluated: int
    skipped: int
    flagged: tuple[BenchRecord, ...]


def counterexample_search(
    budget: int,
    template: GenSpec,
    threshold: Fraction | int = Fraction(2),
    *,
    plants: Sequence[Instance] = (),
    oracle_cap: int | None = None,
    node_budget: int | None = None,
) -> HuntResult:
    """Evaluate ``budget`` seeded instances (plus any plants) and report the
    record with the largest ff/opt ratio.

    Instance i uses seed template.seed + i. Ratios compare exactly as
    rationals. Records at or above ``threshold`` are returned in ``flagged``;
    exact-solver budget failures skip the instance and bump ``skipped``.
    """
    if budget < 0:
        raise InputError(f"budget must be >= 0, got {budget}")
    candidates: list[tuple[str, Instance]] = []
    for idx, plant in enumerate(plants):
        candidates.append((plant.name or f"plant-{idx}", plant))
    for i in range(budget):
        spec = GenSpec(
            family=template.family,
            n=template.n,
            seed=(template.seed + i) % 2**64,
            p_range=template.p_range,
            slack_range=template.slack_range,
        )
        instance = gen_random(spec)
        candidates.append((instance.name or "random", instance))
    best: BenchRecord | None = None
    best_ratio = Fraction(0)
    evaluated = 0
    skipped = 0
    flagged = []
    for instance_id, instance in candidates:
        reports = run(
            instance, ("ff", "opt"), oracle_cap=oracle_cap, node_budget=node_budget
        )
        record = _record_from_reports(instance_id, instance, reports)
        if record.opt is None or record.opt == 0 or record.ff is None:
            skipped += 1
            continue
        evaluated += 1
        ratio = Fraction(record.ff, record.opt)
        if ratio > best_ratio:
            best, best_ratio = record, ratio
        if ratio >= threshold:
            flagged.append(record)
    return HuntResult(best, evaluated, skipped, tuple(flagged))


# --- reports ----------------------------------------------------------------

REPORT_COLUMNS = (
    "id",
    "n",
    "classes",
    "ff",
    "nf",
    "cover",
    "opt",
    "ratio_ff",
    "ratio_nf",
    "ratio_cover",
    "ms_ff",
    "ms_nf",
    "ms_cover",
    "ms_opt",
)


def _row_values(record: BenchRecord) -> list:
    def ratio(value: float | None) -> float | None:
        return None if value is None else round(value, 6)

    return [
        record.instance_id,
        record.n,
        class_tokens(record.classes),
        record.ff,
        record.nf,
        record.cover,
        record.opt,
        ratio(record.ratio_ff),
        ratio(record.ratio_nf),
        ratio(record.ratio_cover),
        record.ms_ff,
        record.ms_nf,
        record.ms_cover,
        record.ms_opt,
    ]


def emit_report(records: Sequence[BenchRecord], fmt: str = "csv") -> str:
    """Render records as CSV or JSON, rows in input order."""
    if fmt == "csv":
        lines = [",".join(REPORT_COLUMNS)]
        for record in records:
            cells = ["" if v is None else str(v) for v in _row_values(record)]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        rows = [dict(zip(REPORT_COLUMNS, _row_values(r))) for r in records]
        return json.dumps(rows, indent=2) + "\n"
    raise InputError(f"unknown report format {fmt!r}")


def records_from_json(text: str) -> list[BenchRecord]:
    """Parse a JSON report back into records (ratios are rederived)."""
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid report: {exc}") from None
    if not isinstance(rows, list):
        raise InputError("report must hold a JSON array")
    records = []
    for row in rows:
        if not isinstance(row, dict):
            raise InputError("report rows must be objects")
        records.append(
            BenchRecord(
                instance_id=row["id"],
                n=row["n"],
                classes=parse_class_tokens(row["classes"]),
                ff=row.get("ff"),
                nf=row.get("nf"),
                cover=row.get("cover"),
                opt=row.get("opt"),
                ms_ff=row.get("ms_ff"),
                ms_nf=row.get("ms_nf"),
                ms_cover=row.get("ms_cover"),
                ms_opt=row.get("ms_opt"),
            )
        )
    return records


# --- sweeps -----------------------------------------------------------------
#
# A sweep file is JSON:
#   {"algorithms": ["ff", "nf", "cover", "opt"],   # optional, default all
#    "sweeps": [
#      {"family": "nf-hard", "n": 5} or {"family": "nf-hard", "n_range": [3, 20]},
#      {"family": "tight-2", "k": 3} or {"family": "tight-2", "k_range": [1, 5]},
#      {"family": "arbitrary", "n": 10, "count": 50, "seed": 7,
#       "p_range": [1, 9], "slack_range": [0, 12]}]}
# Random entries expand to `count` instances seeded seed, seed+1, ...
# Entries may override "algorithms". "opt" is dropped automatically for
# instances larger than the oracle cap.

SweepTask = tuple[str, Instance, tuple[str, ...]]


def _int_pair(value: object, what: str) -> tuple[int, int]:
    ok = (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    )
    if not ok:
        raise InputError(f"{what} must be a pair of integers, got {value!r}")
    return value[0], value[1]


def _expand_entry(entry: dict) -> list[tuple[str, Instance]]:
    family = entry.get("family")
    known = {
        "family",
        "algorithms",
        "n",
        "n_range",
        "k",
        "k_range",
        "count",
        "seed",
        "p_range",
        "slack_range",
    }
    unknown = set(entry) - known
    if unknown:
        raise InputError(f"unknown sweep keys: {sorted(unknown)}")
    if family == "nf-hard":
        ns = _int_pair(entry["n_range"], "n_range") if "n_range" in entry else (entry["n"],) * 2
        return [(f"nf-hard-n{n}", generate(GenSpec("nf-hard", n=n))) for n in range(ns[0], ns[1] + 1)]
    if family == "tight-2":
        ks = _int_pair(entry["k_range"], "k_range") if "k_range" in entry else (entry["k"],) * 2
        return [(f"tight-2-k{k}", generate(GenSpec("tight-2", k=k))) for k in range(ks[0], ks[1] + 1)]
    count = entry.get("count", 1)
    if not isinstance(count, int) or count < 1:
        raise InputError(f"count must be a positive integer, got {count!r}")
    base = GenSpec(
        family=family,
        n=entry["n"],
        seed=entry.get("seed", 0),
        p_range=_int_pair(entry.get("p_range", (1, 10)), "p_range"),
        slack_range=_int_pair(entry.get("slack_range", (0, 10)), "slack_range"),
    )
    out = []
    for i in range(count):
        spec = GenSpec(
            family=base.family,
            n=base.n,
            seed=(base.seed + i) % 2**64,
            p_range=base.p_range,
            slack_range=base.slack_range,
        )
        out.append((f"{family}-n{base.n}-s{spec.seed}", gen_random(spec)))
    return out


def expand_sweep(doc: dict, *, oracle_cap: int | None = None) -> list[SweepTask]:
    """Turn a sweep document into (id, instance, algorithms) tasks."""
    cap = DEFAULT_ORACLE_CAP if oracle_cap is None else oracle_cap
    if not isinstance(doc, dict) or "sweeps" not in doc:
        raise InputError('sweep file needs a "sweeps" array')
    default_algos = tuple(doc.get("algorithms", ALGORITHMS))
    tasks: list[SweepTask] = []
    for entry in doc["sweeps"]:
        if not isinstance(entry, dict):
            raise InputError("sweep entries must be objects")
        try:
            expanded = _expand_entry(entry)
        except KeyError as exc:
            raise InputError(f"sweep entry missing key {exc}") from None
        algos = tuple(entry.get("algorithms", default_algos))
        unknown = set(algos) - set(ALGORITHMS)
        if unknown:
            raise InputError(f"unknown algorithms: {sorted(unknown)}")
        for instance_id, instance in expanded:
            effective = tuple(a for a in algos if a != "opt" or instance.n <= cap)
            tasks.append((instance_id, instance, effective))
    return tasks


def load_sweep(path: str | Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid sweep file: {exc}") from None
    return doc


def _evaluate_task(
    task: SweepTask, oracle_cap: int | None, node_budget: int | None
) -> BenchRecord:
    instance_id, instance, algos = task
    return evaluate(
        instance, instance_id, algos, oracle_cap=oracle_cap, node_budget=node_budget
    )


def run_sweep(
    tasks: Sequence[SweepTask],
    *,
    jobs: int = 1,
    oracle_cap: int | None = None,
    node_budget: int | None = None,
) -> list[BenchRecord]:
    """Evaluate sweep tasks, optionally in parallel; results keep task order."""
    if jobs < 1:
        raise InputError(f"jobs must be >= 1, got {jobs}")
    worker = partial(_evaluate_task, oracle_cap=oracle_cap, node_budget=node_budget)
    if jobs == 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))
