"""Machine minimization for fixed-priority-order scheduling.

Jobs arrive as an ordered sequence of (processing time, deadline) pairs; the
sequence position is a global priority every machine must respect. The
package provides greedy solvers (first fit, next fit), a set-cover style
approximation, an exact branch-and-bound oracle, instance generators, and a
benchmark harness with proven-bound checking.
"""

from .core import (
    MAX_TOTAL_WORK,
    CompletionProfile,
    CoverageError,
    InputError,
    Instance,
    Job,
    Schedule,
    completion_profile,
    instance_from_json,
    instance_to_json,
    is_feasible,
    load_instance,
    loads,
    save_instance,
    schedule_from_json,
    schedule_to_json,
)
from .cover import DpTable, INFEASIBLE, build_table, max_feasible_subset, setcover_greedy
from .exact import (
    BRUTEFORCE_CAP,
    DEFAULT_ORACLE_CAP,
    CapacityError,
    SearchBudgetError,
    feasible_with,
    lower_bound,
    optimal,
    optimal_count_bruteforce,
)
from .greedy import PlacementTrace, first_fit, first_fit_traced, next_fit, next_fit_traced
from .instances import (
    FAMILIES,
    RANDOM_FAMILIES,
    GenSpec,
    OrderClass,
    class_tokens,
    classify,
    gen_nf_hard,
    gen_random,
    gen_tight2,
    generate,
    parse_class_tokens,
)
from .bench import (
    ALGORITHMS,
    BOUND_ASSERTIONS,
    REPORT_COLUMNS,
    BenchRecord,
    BoundAssertion,
    BoundViolation,
    HuntResult,
    SolveReport,
    assert_bounds,
    counterexample_search,
    effective_oracle_cap,
    emit_report,
    evaluate,
    expand_sweep,
    load_sweep,
    records_from_json,
    run,
    run_sweep,
)

__version__ = "0.1.0"
