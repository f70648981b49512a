"""Exact solvers for gap-aware scheduling of unit jobs.

Deadline problems (minimum/maximum gap counts, gap sizes, throughput
under gap budgets) and release-only flow/gap tradeoffs, together with
their continuous interval-hitting analogues in exact rational
arithmetic, plus exhaustive reference solvers for verification.
"""

from .core import (
    Constraints,
    FeasibilityResult,
    GapStats,
    Instance,
    Job,
    NormalizeResult,
    Schedule,
    check_feasible,
    gap_stats,
    instance,
    normalize_distinct,
    shift_block_left,
    validate,
)
from .errors import GapSchedError, InfeasibleError, OracleCapError

__all__ = [
    "Constraints",
    "FeasibilityResult",
    "GapStats",
    "Instance",
    "Job",
    "NormalizeResult",
    "Schedule",
    "check_feasible",
    "gap_stats",
    "instance",
    "normalize_distinct",
    "shift_block_left",
    "validate",
    "GapSchedError",
    "InfeasibleError",
    "OracleCapError",
]
