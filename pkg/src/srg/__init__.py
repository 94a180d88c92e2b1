"""Student result grouping: solvers and benchmark tools.

Partition a student cohort into the fewest result-sheet groups whose
course unions respect the sheet's column limits.  Provides greedy
constructive solvers (hardest-first and random ordering), a max-min ant
system, a genetic algorithm, and a benchmark harness, all reproducible
per seed.
"""

from srg._kernels import active_backend
from srg.aco import AcoConfig, PheromoneMatrix, aco_solve, ant_traverse
from srg.constructive import hfo_solve, ro_solve, try_assign_best_fit
from srg.fitness import (
    FitnessConfig,
    FitnessMode,
    PenaltyBreakdown,
    SolveResult,
    evaluate,
    is_feasible,
)
from srg.ga import GaConfig, ga_solve
from srg.model import (
    ColumnLimits,
    Course,
    Grouping,
    Instance,
    LimitMode,
    ParseError,
    Student,
    course_profile,
    generate_instance,
    load_instance,
    make_instance,
    parse_instance,
    serialize_instance,
    validate_groups,
)

__version__ = "0.1.0"

__all__ = [
    "AcoConfig",
    "ColumnLimits",
    "Course",
    "FitnessConfig",
    "FitnessMode",
    "GaConfig",
    "Grouping",
    "Instance",
    "LimitMode",
    "ParseError",
    "PenaltyBreakdown",
    "PheromoneMatrix",
    "SolveResult",
    "Student",
    "aco_solve",
    "active_backend",
    "ant_traverse",
    "course_profile",
    "evaluate",
    "ga_solve",
    "generate_instance",
    "hfo_solve",
    "is_feasible",
    "load_instance",
    "make_instance",
    "parse_instance",
    "ro_solve",
    "serialize_instance",
    "try_assign_best_fit",
    "validate_groups",
]
