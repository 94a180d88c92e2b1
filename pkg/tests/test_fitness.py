import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import brute_fitness, brute_penalties, partitions

from srg.fitness import (
    FitnessConfig,
    FitnessMode,
    evaluate,
    fitness_value,
    group_penalty,
    is_feasible,
    size_penalty,
    unassigned_penalty,
    unfit_penalty,
)
from srg.model import ColumnLimits, Grouping, LimitMode, generate_instance, make_instance

PAPER_COMPAT = FitnessConfig(mode=FitnessMode.PAPER_COMPAT)
STRICT = FitnessConfig(mode=FitnessMode.STRICT)


def wide_instance(new_count, old_count, students, regs_per_student=None):
    """students who all register every course (unions are the full sets)."""
    years = {f"n{i}": 4 for i in range(new_count)}
    years.update({f"o{i}": 1 for i in range(old_count)})
    all_courses = list(years)
    return make_instance(
        "wide", 4, years, {f"s{i}": all_courses for i in range(students)}
    )


class TestGroupPenalty:
    def test_below_limit(self):
        assert group_penalty(12, 13) == 0

    def test_at_limit_is_zero(self):
        assert group_penalty(13, 13) == 0

    def test_above_limit(self):
        assert group_penalty(15, 13) == 2

    @given(st.integers(0, 200), st.integers(1, 50))
    def test_zero_iff_within_limit(self, count, limit):
        penalty = group_penalty(count, limit)
        assert (penalty == 0) == (count <= limit)
        if count > limit:
            assert group_penalty(count + 1, limit) == penalty + 1


class TestUnfit:
    def test_fixed_mode_example(self):
        inst = wide_instance(15, 10, 4)
        g = Grouping.from_labels(inst, [0, 0, 0, 0])
        assert unfit_penalty(inst, g, ColumnLimits()) == (2 + 0) * 4

    def test_dynamic_mode_example(self):
        inst = wide_instance(15, 10, 4)
        g = Grouping.from_labels(inst, [0, 0, 0, 0])
        limits = ColumnLimits(mode=LimitMode.DYNAMIC)
        assert unfit_penalty(inst, g, limits) == 0  # 25 pooled courses <= 26

    def test_all_within_limits(self):
        inst = wide_instance(5, 5, 6)
        g = Grouping.from_labels(inst, [0, 0, 1, 1, 2, 2])
        assert unfit_penalty(inst, g, ColumnLimits()) == 0


class TestSizeAndUnassigned:
    def test_single_group_zero(self):
        inst = wide_instance(2, 0, 5)
        g = Grouping.from_labels(inst, [0] * 5)
        assert size_penalty(inst, g) == 0

    def test_three_two_split(self):
        inst = wide_instance(2, 0, 5)
        g = Grouping.from_labels(inst, [0, 0, 0, 1, 1])
        assert size_penalty(inst, g) == (5 - 3) * 3 + (5 - 2) * 2  # 12

    def test_all_singletons(self):
        inst = wide_instance(2, 0, 5)
        g = Grouping.from_labels(inst, [0, 1, 2, 3, 4])
        assert size_penalty(inst, g) == 4 * 1 * 5  # 20

    def test_unassigned_counts(self):
        inst = wide_instance(2, 0, 5)
        assert unassigned_penalty(inst, Grouping.from_labels(inst, [0] * 5)) == 0
        assert unassigned_penalty(inst, Grouping.from_labels(inst, [-1] * 5)) == 5
        assert unassigned_penalty(inst, Grouping.from_labels(inst, [0, 0, 0, -1, -1])) == 2


class TestEvaluate:
    def test_empty_grouping(self):
        inst = wide_instance(2, 0, 5)
        b = evaluate(inst, Grouping.from_labels(inst, [-1] * 5), PAPER_COMPAT)
        assert b.fitness == 5000.0
        assert b.group_count == 0

    def test_single_group_paper_compat_25(self):
        inst = wide_instance(8, 0, 25)
        b = evaluate(inst, Grouping.from_labels(inst, [0] * 25), PAPER_COMPAT)
        assert b.fitness == pytest.approx(math.log2(26), abs=1e-12)
        assert round(b.fitness, 2) == 4.70

    def test_single_group_paper_compat_18(self):
        inst = wide_instance(10, 1, 18)
        b = evaluate(inst, Grouping.from_labels(inst, [0] * 18), PAPER_COMPAT)
        assert round(b.fitness, 2) == 4.25

    def test_single_group_strict_is_zero(self):
        inst = wide_instance(8, 0, 25)
        b = evaluate(inst, Grouping.from_labels(inst, [0] * 25), STRICT)
        assert b.fitness == 0.0

    def test_three_two_split_strict(self):
        inst = wide_instance(2, 0, 5)
        b = evaluate(inst, Grouping.from_labels(inst, [0, 0, 0, 1, 1]), STRICT)
        assert b.fitness == pytest.approx(math.log2(12) * 2, abs=1e-9)

    def test_group_count_annihilates_size_term(self):
        # fitness of the empty grouping must not include the size term
        assert fitness_value(0, 0, 5, 0, 5, FitnessMode.PAPER_COMPAT) == 5000.0

    @given(st.integers(1, 4000))
    def test_strictly_increasing_in_size_penalty(self, sp):
        for mode in FitnessMode:
            assert fitness_value(0, sp + 1, 0, 2, 10, mode) > fitness_value(0, sp, 0, 2, 10, mode)

    def test_breakdown_serialization(self):
        inst = wide_instance(2, 0, 3)
        b = evaluate(inst, Grouping.from_labels(inst, [0, 0, 0]), PAPER_COMPAT)
        d = b.to_dict()
        assert d["mode"] == "fixed/paper-compat"
        assert set(d) == {"unfit", "size", "unassigned", "groups", "fitness", "mode"}


class TestFeasibility:
    def test_single_feasible_group(self):
        inst = wide_instance(8, 0, 25)
        assert is_feasible(inst, Grouping.from_labels(inst, [0] * 25), ColumnLimits())

    def test_over_limit_student_never_feasible(self):
        inst = wide_instance(14, 0, 3)
        for labels in ([0, 0, 0], [0, 1, 2], [0, 0, 1]):
            assert not is_feasible(inst, Grouping.from_labels(inst, labels), ColumnLimits())

    def test_empty_grouping_infeasible(self):
        inst = wide_instance(2, 0, 5)
        assert not is_feasible(inst, Grouping.from_labels(inst, [-1] * 5), ColumnLimits())

    def test_feasible_strict_fitness_below_1000(self):
        inst = wide_instance(6, 6, 8)
        g = Grouping.from_labels(inst, [0, 0, 1, 1, 2, 2, 3, 3])
        if is_feasible(inst, g, ColumnLimits()):
            assert evaluate(inst, g, STRICT).fitness < 1000


class TestOracleAgreement:
    """The evaluator must agree with the independent brute-force calculator."""

    @pytest.mark.parametrize("seed", range(4))
    def test_all_partitions_of_six(self, seed):
        inst = generate_instance(6, 5, 4, 2, 6, seed=seed)
        limits = ColumnLimits(new_limit=3, old_limit=3, total_limit=6)
        for fitness_mode in FitnessMode:
            for limit_mode in LimitMode:
                config = FitnessConfig(
                    limits=ColumnLimits(3, 3, 6, limit_mode), mode=fitness_mode
                )
                for part in partitions(range(6)):
                    labels = [0] * 6
                    for gi, members in enumerate(part):
                        for i in members:
                            labels[i] = gi
                    g = Grouping.from_labels(inst, labels)
                    b = evaluate(inst, g, config)
                    unfit, size, unassigned = brute_penalties(inst, part, config.limits)
                    assert (b.unfit, b.size, b.unassigned) == (unfit, size, unassigned)
                    assert b.fitness == pytest.approx(brute_fitness(inst, part, config), abs=1e-9)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(-1, 5), min_size=6, max_size=6), st.integers(0, 3))
    def test_partial_groupings_match_oracle(self, labels, seed):
        inst = generate_instance(6, 5, 4, 2, 6, seed=seed)
        config = FitnessConfig(limits=ColumnLimits(3, 3, 6))
        g = Grouping.from_labels(inst, labels)
        b = evaluate(inst, g, config)
        unfit, size, unassigned = brute_penalties(inst, g.groups, config.limits)
        assert (b.unfit, b.size, b.unassigned) == (unfit, size, unassigned)
