"""Greedy best-fit grouping under two student orderings.

Both solvers walk the students in some order and drop each one into the
existing group that absorbs it at the least cost (fewest new course
columns), opening a fresh group when no existing group can take it without
breaking the limits.  Hardest-first ordering processes students by
decreasing registration count; random ordering uses a seeded shuffle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from srg.fitness import FitnessConfig
from srg.model import ColumnLimits, Grouping, Instance, LimitMode


@dataclass
class GroupState:
    """One group under construction: members plus incremental course unions."""

    members: list[int] = field(default_factory=list)
    new_courses: set[str] = field(default_factory=set)
    old_courses: set[str] = field(default_factory=set)

    def add(self, instance: Instance, student: int) -> None:
        self.members.append(student)
        for cid in instance.students[student].registrations:
            (self.new_courses if instance.is_new(cid) else self.old_courses).add(cid)


def try_assign_best_fit(
    state: list[GroupState], student: int, instance: Instance, limits: ColumnLimits
) -> int | None:
    """Index of the best group for the student, or None if none can take it.

    Candidate groups are those that stay within the limits after adding the
    student; among them, pick the one gaining the fewest course columns,
    breaking ties toward the larger group, then the lower index.
    """
    regs = instance.students[student].registrations
    new_regs = {c for c in regs if instance.is_new(c)}
    old_regs = regs - new_regs
    best: int | None = None
    best_key: tuple[int, int] | None = None
    for gi, group in enumerate(state):
        new_count = len(group.new_courses | new_regs)
        old_count = len(group.old_courses | old_regs)
        if limits.mode is LimitMode.DYNAMIC:
            if new_count + old_count > limits.total_limit:
                continue
        elif new_count > limits.new_limit or old_count > limits.old_limit:
            continue
        added = (new_count - len(group.new_courses)) + (old_count - len(group.old_courses))
        key = (added, -len(group.members))
        if best_key is None or key < best_key:
            best, best_key = gi, key
    return best


def _greedy(instance: Instance, order: list[int], limits: ColumnLimits) -> Grouping:
    state: list[GroupState] = []
    labels = [-1] * instance.num_students
    for student in order:
        target = try_assign_best_fit(state, student, instance, limits)
        if target is None:
            target = len(state)
            state.append(GroupState())
        state[target].add(instance, student)
        labels[student] = target
    return Grouping.from_labels(instance, labels)


def hfo_solve(instance: Instance, config: FitnessConfig | None = None) -> Grouping:
    """Hardest-first ordering: most registrations first, input order on ties.

    Always returns a complete grouping; a student that alone exceeds the
    limits ends up in a singleton group, visible as an unfit penalty.
    Fully deterministic.
    """
    config = config or FitnessConfig(limits=instance.limits)
    order = sorted(
        range(instance.num_students),
        key=lambda i: -len(instance.students[i].registrations),
    )
    return _greedy(instance, order, config.limits)


def ro_solve(instance: Instance, config: FitnessConfig | None = None, seed: int = 0) -> Grouping:
    """Same greedy assignment over a seeded uniformly random student order."""
    config = config or FitnessConfig(limits=instance.limits)
    order = list(range(instance.num_students))
    random.Random(seed).shuffle(order)
    return _greedy(instance, order, config.limits)
