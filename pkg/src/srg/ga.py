"""Genetic algorithm over integer group-label vectors.

An individual assigns every student a group label in [0, students); the
number of distinct labels is the number of groups.  No heuristic seeding:
the initial population is uniform random, so early generations are mostly
infeasible and the fitness function does the steering.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

import numpy as np

from srg.fitness import FitnessConfig, PenaltyBreakdown, SolveResult, evaluate_labels
from srg.model import Grouping, Instance


class CrossoverKind(str, Enum):
    SINGLE_POINT = "single-point"
    TWO_POINT = "two-point"
    UNIFORM = "uniform"


class SelectionKind(str, Enum):
    TOURNAMENT = "tournament"
    ROULETTE = "roulette"


@dataclass
class GaConfig:
    population_size: int = 100
    tournament_size: int = 3
    p_crossover: float = 0.5
    p_mutation: float = 0.5
    crossover_kind: CrossoverKind = CrossoverKind.SINGLE_POINT
    selection_kind: SelectionKind = SelectionKind.TOURNAMENT
    stall_generations: int = 20  # stop after this many non-improving generations
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population size must be >= 2")
        if self.tournament_size < 1:
            raise ValueError("tournament size must be >= 1")
        if not (0.0 <= self.p_crossover <= 1.0 and 0.0 <= self.p_mutation <= 1.0):
            raise ValueError("probabilities must be in [0, 1]")


class Individual:
    """A group-label vector plus its cached penalty breakdown."""

    __slots__ = ("alleles", "breakdown")

    def __init__(self, alleles: np.ndarray, breakdown: PenaltyBreakdown | None = None):
        self.alleles = alleles
        self.breakdown = breakdown

    def clone(self) -> "Individual":
        return Individual(self.alleles.copy(), self.breakdown)

    @property
    def fitness(self) -> float:
        if self.breakdown is None:
            raise ValueError("individual not evaluated yet")
        return self.breakdown.fitness


def decode(individual: Individual, instance: Instance) -> Grouping:
    """Relabel the alleles densely (first-appearance order) into a grouping."""
    m = instance.num_students
    alleles = individual.alleles
    if len(alleles) != m:
        raise ValueError("allele vector length does not match student count")
    if len(alleles) and (alleles.min() < 0 or alleles.max() >= m):
        raise ValueError("allele out of range")
    return Grouping.from_labels(instance, alleles)


def init_population(instance: Instance, config: GaConfig, rng: random.Random) -> list[Individual]:
    """Uniform random label vectors; no heuristic seeding."""
    m = instance.num_students
    return [
        Individual(np.array([rng.randrange(m) for _ in range(m)], dtype=np.int64))
        for _ in range(config.population_size)
    ]


def mutate(individual: Individual, config: GaConfig, rng: random.Random) -> Individual:
    """With probability p_mutation, set one random position to a random label."""
    if rng.random() >= config.p_mutation:
        return individual
    m = len(individual.alleles)
    pos = rng.randrange(m)
    value = rng.randrange(m)
    if individual.alleles[pos] == value:
        return individual
    alleles = individual.alleles.copy()
    alleles[pos] = value
    return Individual(alleles)


def crossover(
    a: Individual, b: Individual, config: GaConfig, rng: random.Random
) -> tuple[Individual, Individual]:
    """With probability p_crossover, recombine the parents; else copy them.

    single-point swaps the suffixes after one cut; two-point swaps the
    segment between two ordered cuts (equal cuts leave the parents as
    they are); uniform swaps each position independently with probability
    one half.
    """
    if len(a.alleles) != len(b.alleles):
        raise ValueError("parents have different lengths")
    m = len(a.alleles)
    if rng.random() >= config.p_crossover or m < 2:
        return a.clone(), b.clone()
    left = a.alleles.copy()
    right = b.alleles.copy()
    if config.crossover_kind is CrossoverKind.SINGLE_POINT:
        cut = rng.randint(1, m - 1)
        left[cut:], right[cut:] = b.alleles[cut:], a.alleles[cut:]
    elif config.crossover_kind is CrossoverKind.TWO_POINT:
        lo, hi = sorted((rng.randint(1, m - 1), rng.randint(1, m - 1)))
        left[lo:hi], right[lo:hi] = b.alleles[lo:hi], a.alleles[lo:hi]
    else:
        for i in range(m):
            if rng.random() < 0.5:
                left[i], right[i] = right[i], left[i]
    return Individual(left), Individual(right)


def select(pool: list[Individual], config: GaConfig, rng: random.Random) -> list[Individual]:
    """Pick the next population from parents + offspring.

    Tournament mode runs population_size independent tournaments of
    tournament_size uniform draws with replacement, each won by the lowest
    fitness.  Roulette mode draws with weight 1 / (1 + fitness), so lower
    fitness means higher weight.  Either way the pool's best individual is
    kept: if it was not selected it replaces the worst pick.
    """
    if not pool:
        raise ValueError("empty selection pool")
    best = min(pool, key=lambda ind: ind.fitness)
    size = len(pool)
    if config.selection_kind is SelectionKind.TOURNAMENT:
        chosen = []
        for _ in range(config.population_size):
            winner = pool[rng.randrange(size)]
            for _ in range(config.tournament_size - 1):
                contender = pool[rng.randrange(size)]
                if contender.fitness < winner.fitness:
                    winner = contender
            chosen.append(winner)
    else:
        weights = [1.0 / (1.0 + ind.fitness) for ind in pool]
        chosen = rng.choices(pool, weights=weights, k=config.population_size)
    if not any(ind is best for ind in chosen):
        worst = max(range(len(chosen)), key=lambda i: chosen[i].fitness)
        chosen[worst] = best
    return chosen


def _evaluate(population: list[Individual], instance: Instance, fitness_config: FitnessConfig) -> None:
    for ind in population:
        if ind.breakdown is None:
            ind.breakdown = evaluate_labels(instance, ind.alleles, fitness_config)


def ga_solve(
    instance: Instance,
    config: GaConfig | None = None,
    fitness_config: FitnessConfig | None = None,
) -> SolveResult:
    """Evolve label vectors until the best stops improving.

    Each generation shuffles the parents, pairs them consecutively, applies
    crossover then mutation, evaluates the offspring, and selects the next
    population from parents + offspring with the best always preserved.
    Stops after stall_generations generations without the best fitness
    improving (by more than 1e-9).  history[i] is the best fitness after
    generation i, with history[0] the initial population's best.
    """
    config = config or GaConfig()
    fitness_config = fitness_config or FitnessConfig(limits=instance.limits)
    rng = random.Random(config.seed)

    population = init_population(instance, config, rng)
    _evaluate(population, instance, fitness_config)
    best = min(population, key=lambda ind: ind.fitness)
    history = [best.fitness]
    stall = 0
    while stall < config.stall_generations:
        order = list(range(len(population)))
        rng.shuffle(order)
        offspring: list[Individual] = []
        i = 0
        while i + 1 < len(order):
            c1, c2 = crossover(population[order[i]], population[order[i + 1]], config, rng)
            offspring.append(mutate(c1, config, rng))
            offspring.append(mutate(c2, config, rng))
            i += 2
        if i < len(order):  # odd population: the leftover parent passes through
            offspring.append(mutate(population[order[i]].clone(), config, rng))
        _evaluate(offspring, instance, fitness_config)

        population = select(population + offspring, config, rng)
        generation_best = min(population, key=lambda ind: ind.fitness)
        if best.fitness - generation_best.fitness > 1e-9:
            best = generation_best
            stall = 0
        else:
            stall += 1
        history.append(best.fitness)

    return SolveResult(decode(best, instance), best.breakdown, history)
