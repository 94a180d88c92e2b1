"""Max-min ant system over a (group slots x students) pheromone matrix.

The slot count is fixed by a hardest-first greedy solution, so the ants
can never use more groups than the greedy baseline found.  Trails live in
[t_min, t_max]; each iteration the best of the colony's traversals
deposits a reward on its path after a global evaporation pass.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from srg import _kernels
from srg.constructive import hfo_solve
from srg.fitness import FitnessConfig, PenaltyBreakdown, SolveResult, evaluate_labels
from srg.model import Grouping, Instance, LimitMode


@dataclass
class AcoConfig:
    rho: float = 0.02  # evaporation rate
    alpha: float = 0.0  # weight of the hardest-first desirability
    beta: float = 1.0  # weight of the pheromone trail
    num_ants: int = 10
    num_iterations: int = 500
    stall_limit: int = 100  # stop after this many non-improving iterations
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.rho < 1.0:
            raise ValueError("rho must be in (0, 1)")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be >= 0")
        if self.num_ants < 1 or self.num_iterations < 1:
            raise ValueError("need at least one ant and one iteration")


class PheromoneMatrix:
    """Dense trail values, one per (group slot, student) pair.

    Every entry stays within [t_min, t_max] through all updates.
    """

    def __init__(self, slots: int, students: int, t_max: float = 10.0, t_min: float = 0.1):
        if slots < 1 or students < 1:
            raise ValueError("matrix dimensions must be positive")
        if not 0 < t_min <= t_max:
            raise ValueError("need 0 < t_min <= t_max")
        self.t_max = t_max
        self.t_min = t_min
        self.trails = np.full((slots, students), t_max, dtype=np.float64)

    @property
    def slots(self) -> int:
        return self.trails.shape[0]

    @property
    def students(self) -> int:
        return self.trails.shape[1]

    def evaporate(self, rho: float) -> None:
        """Decay every trail by (1 - rho), clamped at t_min."""
        if not 0.0 < rho < 1.0:
            raise ValueError("rho must be in (0, 1)")
        self.trails *= 1.0 - rho
        np.maximum(self.trails, self.t_min, out=self.trails)

    def deposit(self, assignment: Sequence[int], amount: float) -> None:
        """Add amount along one solution path, clamped at t_max.

        assignment[s] is the slot holding student s.
        """
        if amount < 0:
            raise ValueError("deposit amount must be >= 0")
        cols = np.arange(self.students)
        rows = np.asarray(assignment, dtype=np.int64)
        self.trails[rows, cols] = np.minimum(self.trails[rows, cols] + amount, self.t_max)


def reward(global_best: float | None, current_quality: float) -> float:
    """Trail reward for a solution of the given quality, in (0, 1].

    Full reward for the best-so-far (or first) solution; otherwise the
    reward shrinks with the gap to the best, never exceeding the full
    reward.
    """
    if global_best is None or global_best >= current_quality:
        return 1.0
    return min(1.0, 1.0 / (current_quality - global_best))


def _traverse_labels(
    instance: Instance,
    matrix: PheromoneMatrix,
    config: AcoConfig,
    fitness_config: FitnessConfig,
    eta_alpha: list[float],
    rng: random.Random,
) -> list[int]:
    limits = fitness_config.limits
    uniforms = [rng.random() for _ in range(instance.num_students)]
    return _kernels.ant_traverse(
        instance.packed(),
        matrix.trails,
        eta_alpha,
        config.beta,
        limits.new_limit,
        limits.old_limit,
        limits.total_limit,
        limits.mode is LimitMode.DYNAMIC,
        uniforms,
    )


def _desirability(instance: Instance, alpha: float) -> list[float]:
    return [float(len(s.registrations)) ** alpha for s in instance.students]


def ant_traverse(
    instance: Instance,
    matrix: PheromoneMatrix,
    config: AcoConfig,
    rng: random.Random,
    fitness_config: FitnessConfig | None = None,
) -> Grouping:
    """Run a single ant over the matrix and return its complete grouping."""
    fitness_config = fitness_config or FitnessConfig(limits=instance.limits)
    labels = _traverse_labels(
        instance, matrix, config, fitness_config, _desirability(instance, config.alpha), rng
    )
    return Grouping.from_labels(instance, labels)


def aco_solve(
    instance: Instance,
    config: AcoConfig | None = None,
    fitness_config: FitnessConfig | None = None,
) -> SolveResult:
    """Max-min ant system search seeded by the hardest-first solution.

    Per iteration: every ant builds a complete grouping, the cycle best is
    rewarded on its path after evaporation, and the global best is updated
    on strict improvement.  Stops after num_iterations, or stall_limit
    iterations without improvement.  history[i] is the global best fitness
    after iteration i.
    """
    config = config or AcoConfig()
    fitness_config = fitness_config or FitnessConfig(limits=instance.limits)
    rng = random.Random(config.seed)

    slots = hfo_solve(instance, fitness_config).group_count
    matrix = PheromoneMatrix(slots, instance.num_students)
    eta_alpha = _desirability(instance, config.alpha)

    best_labels: list[int] | None = None
    best_breakdown: PenaltyBreakdown | None = None
    history: list[float] = []
    stall = 0
    for _ in range(config.num_iterations):
        cycle_labels: list[int] | None = None
        cycle_breakdown: PenaltyBreakdown | None = None
        for _ant in range(config.num_ants):
            labels = _traverse_labels(instance, matrix, config, fitness_config, eta_alpha, rng)
            breakdown = evaluate_labels(instance, labels, fitness_config)
            if cycle_breakdown is None or breakdown.fitness < cycle_breakdown.fitness:
                cycle_labels, cycle_breakdown = labels, breakdown

        matrix.evaporate(config.rho)
        global_quality = None if best_breakdown is None else best_breakdown.fitness
        matrix.deposit(cycle_labels, reward(global_quality, cycle_breakdown.fitness))

        if best_breakdown is None or cycle_breakdown.fitness < best_breakdown.fitness:
            best_labels, best_breakdown = cycle_labels, cycle_breakdown
            stall = 0
        else:
            stall += 1
        history.append(best_breakdown.fitness)
        if stall >= config.stall_limit:
            break

    return SolveResult(Grouping.from_labels(instance, best_labels), best_breakdown, history)
