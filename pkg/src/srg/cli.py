"""Command line front end: solve, bench, check, and gen subcommands.

Exit codes: 0 = success (solve/check: feasible result), 1 = usage or input
errors, 2 = the command ran but the result is complete-and-infeasible
(solve) or the grouping violates constraints (check).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from srg import _kernels
from srg.aco import AcoConfig
from srg.bench import ALGORITHMS, bench_directory, reports_to_json, reports_to_markdown, solve_once
from srg.fitness import FitnessConfig, FitnessMode, evaluate
from srg.ga import CrossoverKind, GaConfig, SelectionKind
from srg.model import (
    ColumnLimits,
    LimitMode,
    ParseError,
    generate_instance,
    groups_from_json,
    load_instance,
    serialize_instance,
    validate_groups,
)
from srg.profiles import BENCHMARK_PROFILES, profile_by_name, synthesize

DATASET_ENV = "SRG_DATASET_DIR"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for
    # complete-but-infeasible results, so remap usage errors to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _fitness_config(args) -> FitnessConfig:
    limits = ColumnLimits(
        new_limit=args.new_limit,
        old_limit=args.old_limit,
        total_limit=args.total_limit,
        mode=LimitMode(args.mode),
    )
    return FitnessConfig(limits=limits, mode=FitnessMode(args.fitness))


def _add_mode_flags(parser):
    parser.add_argument("--mode", choices=[m.value for m in LimitMode], default="fixed",
                        help="column budget mode (default: fixed)")
    parser.add_argument("--fitness", choices=[m.value for m in FitnessMode], default="paper-compat",
                        help="fitness variant (default: paper-compat)")
    parser.add_argument("--new-limit", type=int, default=13, help="new-course column budget")
    parser.add_argument("--old-limit", type=int, default=13, help="old-course column budget")
    parser.add_argument("--total-limit", type=int, default=26, help="pooled column budget")


def _add_algo_flags(parser):
    group = parser.add_argument_group("ant colony options")
    group.add_argument("--rho", type=float, default=0.02, help="evaporation rate")
    group.add_argument("--alpha", type=float, default=0.0, help="desirability exponent")
    group.add_argument("--beta", type=float, default=1.0, help="trail exponent")
    group.add_argument("--ants", type=int, default=10, help="ants per iteration")
    group.add_argument("--iterations", type=int, default=500, help="max iterations")
    group.add_argument("--stall", type=int, default=100, help="non-improving iteration cutoff")
    group = parser.add_argument_group("genetic algorithm options")
    group.add_argument("--population", type=int, default=100, help="population size")
    group.add_argument("--tournament", type=int, default=3, help="tournament size")
    group.add_argument("--p-crossover", type=float, default=0.5, help="crossover probability")
    group.add_argument("--p-mutation", type=float, default=0.5, help="mutation probability")
    group.add_argument("--crossover", choices=[k.value for k in CrossoverKind],
                       default="single-point", help="crossover operator")
    group.add_argument("--selection", choices=[k.value for k in SelectionKind],
                       default="tournament", help="selection operator")
    group.add_argument("--stall-generations", type=int, default=20,
                       help="non-improving generation cutoff")


def _aco_config(args, seed: int) -> AcoConfig:
    return AcoConfig(
        rho=args.rho, alpha=args.alpha, beta=args.beta, num_ants=args.ants,
        num_iterations=args.iterations, stall_limit=args.stall, seed=seed,
    )


def _ga_config(args, seed: int) -> GaConfig:
    return GaConfig(
        population_size=args.population, tournament_size=args.tournament,
        p_crossover=args.p_crossover, p_mutation=args.p_mutation,
        crossover_kind=CrossoverKind(args.crossover),
        selection_kind=SelectionKind(args.selection),
        stall_generations=args.stall_generations, seed=seed,
    )


def _cmd_solve(args) -> int:
    try:
        instance = load_instance(args.instance, cohort_year=args.cohort_year)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    config = _fitness_config(args)
    grouping, record = solve_once(
        instance, args.algorithm, args.seed, config,
        aco_config=_aco_config(args, args.seed), ga_config=_ga_config(args, args.seed),
    )
    breakdown = evaluate(instance, grouping, config)
    payload = grouping.to_json_dict()
    payload["penalties"] = breakdown.to_dict()
    text = json.dumps(payload, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    print(
        f"{instance.name}: {args.algorithm} fitness {breakdown.fitness:.2f} "
        f"({breakdown.group_count} groups, {'feasible' if record.feasible else 'infeasible'}, "
        f"{record.wall_time:.2f}s, backend {_kernels.active_backend()})",
        file=sys.stderr,
    )
    return EXIT_OK if record.feasible else EXIT_INFEASIBLE


def _cmd_bench(args) -> int:
    directory = args.directory or os.environ.get(DATASET_ENV)
    if not directory:
        print(f"error: no instance directory given and {DATASET_ENV} is not set", file=sys.stderr)
        return EXIT_ERROR
    config = _fitness_config(args)
    if args.algorithms:
        algorithms = tuple(args.algorithms.split(","))
        unknown = [a for a in algorithms if a not in ALGORITHMS]
        if unknown:
            print(f"error: unknown algorithm(s): {', '.join(unknown)}", file=sys.stderr)
            return EXIT_ERROR
    elif config.limits.mode is LimitMode.DYNAMIC:
        algorithms = ("aco",)  # the dynamic variant is reported for the ant colony only
    else:
        algorithms = ALGORITHMS
    try:
        reports, errors = bench_directory(
            directory, algorithms, config,
            repetitions=args.runs, base_seed=args.seed, cohort_year=args.cohort_year,
            aco_config=_aco_config(args, args.seed), ga_config=_ga_config(args, args.seed),
        )
    except (FileNotFoundError, NotADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for name, message in errors:
        print(f"skipped {name}: {message}", file=sys.stderr)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(reports_to_json(reports, errors), encoding="utf-8")
    (out_dir / "report.md").write_text(reports_to_markdown(reports), encoding="utf-8")
    print(f"wrote {out_dir / 'report.json'} and {out_dir / 'report.md'}", file=sys.stderr)
    return EXIT_OK


def _cmd_check(args) -> int:
    try:
        instance = load_instance(args.instance, cohort_year=args.cohort_year)
        data = json.loads(Path(args.grouping).read_text(encoding="utf-8"))
    except (ParseError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        groups = groups_from_json(instance, data)
    except ParseError as exc:
        print(f"invalid grouping: {exc}")
        return EXIT_INFEASIBLE
    violations = validate_groups(instance, groups, _fitness_config(args).limits)
    if violations:
        for v in violations:
            print(v)
        print(f"{len(violations)} violation(s)")
        return EXIT_INFEASIBLE
    print("feasible: all constraints satisfied")
    return EXIT_OK


def _cmd_gen(args) -> int:
    try:
        if args.profile:
            instance = synthesize(profile_by_name(args.profile), seed=args.seed)
        else:
            instance = generate_instance(
                students=args.students, new_courses=args.new_courses,
                old_courses=args.old_courses, min_regs=args.min_regs,
                max_regs=args.max_regs, seed=args.seed,
            )
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = serialize_instance(instance)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out} ({instance.num_students} students)", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="srg", description="Student result grouping solvers and benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[], help="solve one instance file")
    p.add_argument("instance", help="instance file (student,course,year rows)")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="hfo")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cohort-year", type=int, default=None)
    p.add_argument("--out", default=None, help="write the grouping JSON here instead of stdout")
    _add_mode_flags(p)
    _add_algo_flags(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bench", help="benchmark all instances in a directory")
    p.add_argument("directory", nargs="?", default=None,
                   help=f"instance directory (default: ${DATASET_ENV})")
    p.add_argument("--runs", type=int, default=10, help="repetitions per algorithm (default 10)")
    p.add_argument("--seed", type=int, default=0, help="base seed; run i uses seed+i")
    p.add_argument("--algorithms", default=None,
                   help="comma separated subset of hfo,ro,aco,ga (default: all; dynamic mode: aco)")
    p.add_argument("--cohort-year", type=int, default=None)
    p.add_argument("--out-dir", default="reports")
    _add_mode_flags(p)
    _add_algo_flags(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("check", help="validate a grouping JSON against an instance")
    p.add_argument("instance")
    p.add_argument("grouping", help="grouping JSON file")
    p.add_argument("--cohort-year", type=int, default=None)
    _add_mode_flags(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("gen", help="generate a synthetic instance file")
    p.add_argument("--students", type=int, default=50)
    p.add_argument("--new-courses", type=int, default=15)
    p.add_argument("--old-courses", type=int, default=15)
    p.add_argument("--min-regs", type=int, default=4)
    p.add_argument("--max-regs", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", default=None,
                   help="benchmark shape to imitate: " + ", ".join(pr.name for pr in BENCHMARK_PROFILES))
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    return args.func(args)


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
