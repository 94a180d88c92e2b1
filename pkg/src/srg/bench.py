"""Benchmark harness: repeated seeded runs with min/max/avg reporting.

Each algorithm is run a configured number of times per instance (seeds =
base seed + run index); the hardest-first heuristic is deterministic, so
it runs once and its row is replicated.  Reports serialize to JSON and to
markdown tables with two-decimal fitness values.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from srg.aco import AcoConfig, aco_solve
from srg.constructive import hfo_solve, ro_solve
from srg.fitness import FitnessConfig, evaluate, is_feasible
from srg.ga import GaConfig, ga_solve
from srg.model import Grouping, Instance, load_instance

ALGORITHMS = ("hfo", "ro", "aco", "ga")


@dataclass
class RunRecord:
    seed: int
    fitness: float
    groups: int
    feasible: bool
    wall_time: float


@dataclass
class RunReport:
    instance: str
    algorithm: str
    mode: str  # "<limit mode>/<fitness mode>"
    runs: list[RunRecord]
    min: float = field(init=False)
    max: float = field(init=False)
    avg: float = field(init=False)

    def __post_init__(self):
        values = [r.fitness for r in self.runs]
        self.min = min(values)
        self.max = max(values)
        # clamp: float summation can drift a replicated value by one ulp
        self.avg = min(max(sum(values) / len(values), self.min), self.max)

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "algorithm": self.algorithm,
            "mode": self.mode,
            "min": self.min,
            "max": self.max,
            "avg": self.avg,
            "runs": [vars(r) for r in self.runs],
        }


def solve_once(
    instance: Instance,
    algorithm: str,
    seed: int,
    fitness_config: FitnessConfig,
    aco_config: AcoConfig | None = None,
    ga_config: GaConfig | None = None,
) -> tuple[Grouping, RunRecord]:
    """One seeded run of one algorithm; records fitness and wall time."""
    start = time.perf_counter()
    if algorithm == "hfo":
        grouping = hfo_solve(instance, fitness_config)
    elif algorithm == "ro":
        grouping = ro_solve(instance, fitness_config, seed=seed)
    elif algorithm == "aco":
        base = aco_config or AcoConfig()
        grouping = aco_solve(instance, _with_seed(base, seed), fitness_config).grouping
    elif algorithm == "ga":
        base = ga_config or GaConfig()
        grouping = ga_solve(instance, _with_seed(base, seed), fitness_config).grouping
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    elapsed = time.perf_counter() - start
    breakdown = evaluate(instance, grouping, fitness_config)
    record = RunRecord(
        seed=seed,
        fitness=breakdown.fitness,
        groups=breakdown.group_count,
        feasible=is_feasible(instance, grouping, fitness_config.limits),
        wall_time=elapsed,
    )
    return grouping, record


def _with_seed(config, seed: int):
    return replace(config, seed=seed)


def bench_instance(
    instance: Instance,
    algorithms: tuple[str, ...],
    fitness_config: FitnessConfig,
    repetitions: int = 10,
    base_seed: int = 0,
    aco_config: AcoConfig | None = None,
    ga_config: GaConfig | None = None,
) -> list[RunReport]:
    reports = []
    for algorithm in algorithms:
        if algorithm == "hfo":
            # deterministic: one real run, replicated per repetition
            _, record = solve_once(instance, "hfo", base_seed, fitness_config)
            runs = [
                RunRecord(base_seed + i, record.fitness, record.groups, record.feasible, record.wall_time)
                for i in range(repetitions)
            ]
        else:
            runs = [
                solve_once(
                    instance, algorithm, base_seed + i, fitness_config, aco_config, ga_config
                )[1]
                for i in range(repetitions)
            ]
        reports.append(
            RunReport(instance.name, algorithm, fitness_config.mode_label, runs)
        )
    return reports


def bench_directory(
    directory,
    algorithms: tuple[str, ...],
    fitness_config: FitnessConfig,
    repetitions: int = 10,
    base_seed: int = 0,
    cohort_year: int | None = None,
    aco_config: AcoConfig | None = None,
    ga_config: GaConfig | None = None,
) -> tuple[list[RunReport], list[tuple[str, str]]]:
    """Benchmark every parseable instance file in a directory.

    Unparseable files become (filename, error) entries; the rest proceed.
    """
    reports: list[RunReport] = []
    errors: list[tuple[str, str]] = []
    paths = sorted(p for p in Path(directory).iterdir() if p.is_file())
    if not paths:
        raise FileNotFoundError(f"no instance files in {directory}")
    for path in paths:
        try:
            instance = load_instance(path, cohort_year=cohort_year)
        except (ValueError, OSError) as exc:
            errors.append((path.name, str(exc)))
            continue
        reports.extend(
            bench_instance(
                instance, algorithms, fitness_config, repetitions, base_seed, aco_config, ga_config
            )
        )
    return reports, errors


def reports_to_json(reports: list[RunReport], errors: list[tuple[str, str]] | None = None) -> str:
    payload = {"reports": [r.to_dict() for r in reports]}
    if errors:
        payload["errors"] = [{"file": f, "error": e} for f, e in errors]
    return json.dumps(payload, indent=2)


def reports_to_markdown(reports: list[RunReport]) -> str:
    """One table per algorithm/mode, two-decimal fitness values."""
    sections = []
    keys = []
    for r in reports:
        key = (r.algorithm, r.mode)
        if key not in keys:
            keys.append(key)
    for algorithm, mode in keys:
        rows = [r for r in reports if (r.algorithm, r.mode) == (algorithm, mode)]
        lines = [
            f"## {algorithm.upper()} ({mode})",
            "",
            "| Instance | Min | Max | Avg |",
            "| --- | --- | --- | --- |",
        ]
        lines += [f"| {r.instance} | {r.min:.2f} | {r.max:.2f} | {r.avg:.2f} |" for r in rows]
        sections.append("\n".join(lines))
    return "\n\n".join(sections) + "\n"
