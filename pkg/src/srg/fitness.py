"""Penalty components and the weighted fitness function (lower is better).

Three penalties score a grouping: the *unfit* penalty counts course-limit
excesses per group weighted by group size, the *size* penalty steers
search toward fewer, larger groups, and the *unassigned* penalty counts
students left out.  They combine as

    fitness = 1000 * unassigned + (size_term + 1000 * unfit) * groups

where size_term is a log2 of the size penalty.  The published reference
results put the total student count inside the log (so a single feasible
group of 25 students scores log2(26) ~ 4.70); that variant is the default
``paper-compat`` mode.  ``strict`` mode uses log2(max(sp, 1)) instead,
which makes a fully feasible single group score exactly 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from srg import _kernels
from srg.model import ColumnLimits, Grouping, Instance, LimitMode, course_profile


class FitnessMode(str, Enum):
    STRICT = "strict"
    PAPER_COMPAT = "paper-compat"


@dataclass(frozen=True)
class FitnessConfig:
    limits: ColumnLimits = field(default_factory=ColumnLimits)
    mode: FitnessMode = FitnessMode.PAPER_COMPAT

    @property
    def mode_label(self) -> str:
        return f"{self.limits.mode.value}/{self.mode.value}"


@dataclass(frozen=True)
class PenaltyBreakdown:
    """All penalty components plus the combined fitness for one grouping."""

    unfit: int
    size: int
    unassigned: int
    group_count: int
    fitness: float
    mode: str

    def to_dict(self) -> dict:
        return {
            "unfit": self.unfit,
            "size": self.size,
            "unassigned": self.unassigned,
            "groups": self.group_count,
            "fitness": self.fitness,
            "mode": self.mode,
        }


@dataclass
class SolveResult:
    """What the iterative solvers return: best grouping and its trajectory.

    ``history[i]`` is the best fitness seen up to iteration/generation i.
    """

    grouping: Grouping
    breakdown: PenaltyBreakdown
    history: list[float]


def group_penalty(count: int, limit: int) -> int:
    """Columns over the limit: count - limit when count >= limit, else 0."""
    if count < 0 or limit <= 0:
        raise ValueError("count must be >= 0 and limit > 0")
    return count - limit if count >= limit else 0


def unfit_penalty(instance: Instance, grouping: Grouping, limits: ColumnLimits) -> int:
    """Sum over groups of the course-limit excess times the group size."""
    total = 0
    for members in grouping.groups:
        new_count, old_count = course_profile(instance, members)
        if limits.mode is LimitMode.DYNAMIC:
            over = group_penalty(new_count + old_count, limits.total_limit)
        else:
            over = group_penalty(new_count, limits.new_limit) + group_penalty(old_count, limits.old_limit)
        total += over * len(members)
    return total


def size_penalty(instance: Instance, grouping: Grouping) -> int:
    """Sum over groups of (students - group size) * group size."""
    m = instance.num_students
    return sum((m - len(g)) * len(g) for g in grouping.groups)


def unassigned_penalty(instance: Instance, grouping: Grouping) -> int:
    return instance.num_students - sum(len(g) for g in grouping.groups)


def fitness_value(
    unfit: int, size: int, unassigned: int, group_count: int, total_students: int, mode: FitnessMode
) -> float:
    if mode is FitnessMode.STRICT:
        size_term = math.log2(max(size, 1))
    else:
        size_term = math.log2(size + total_students + 1)
    return 1000.0 * unassigned + (size_term + 1000.0 * unfit) * group_count


def evaluate_labels(instance: Instance, labels: Sequence[int], config: FitnessConfig) -> PenaltyBreakdown:
    """Evaluate a full label vector (negative label = unassigned).

    This is the solver-facing fast path; labels need not be dense group
    indices, any values in [0, students) work.
    """
    limits = config.limits
    unfit, size, unassigned, groups = _kernels.evaluate_labels(
        instance.packed(),
        labels,
        limits.new_limit,
        limits.old_limit,
        limits.total_limit,
        limits.mode is LimitMode.DYNAMIC,
    )
    return PenaltyBreakdown(
        unfit=unfit,
        size=size,
        unassigned=unassigned,
        group_count=groups,
        fitness=fitness_value(unfit, size, unassigned, groups, instance.num_students, config.mode),
        mode=config.mode_label,
    )


def evaluate(instance: Instance, grouping: Grouping, config: FitnessConfig | None = None) -> PenaltyBreakdown:
    """Full penalty breakdown of a grouping under the given configuration."""
    config = config or FitnessConfig(limits=instance.limits)
    return evaluate_labels(instance, grouping.labels(), config)


def is_feasible(instance: Instance, grouping: Grouping, limits: ColumnLimits | None = None) -> bool:
    """True iff every student is assigned and no group exceeds its limits."""
    limits = limits or instance.limits
    return (
        unassigned_penalty(instance, grouping) == 0
        and unfit_penalty(instance, grouping, limits) == 0
    )
