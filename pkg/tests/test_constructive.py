import pytest

from oracle import brute_fitness, brute_optimum

from srg.constructive import GroupState, hfo_solve, ro_solve, try_assign_best_fit
from srg.fitness import FitnessConfig, is_feasible, unassigned_penalty
from srg.model import ColumnLimits, generate_instance, make_instance


def state_for(instance, members_per_group):
    state = []
    for members in members_per_group:
        group = GroupState()
        for i in members:
            group.add(instance, i)
        state.append(group)
    return state


class TestBestFit:
    def test_zero_cost_group_wins(self):
        inst = make_instance(
            "z", 1, {c: 1 for c in "abcd"},
            {"s1": ["a", "b"], "s2": ["c", "d"], "s3": ["a", "b"]},
        )
        state = state_for(inst, [[0], [1]])
        assert try_assign_best_fit(state, 2, inst, ColumnLimits()) == 0

    def test_fewest_added_courses_wins(self):
        # both groups hold 10 courses; s adds 0 to the first, 4 to the second
        years = {f"c{i}": 1 for i in range(14)}
        inst = make_instance(
            "few", 1, years,
            {
                "g1": [f"c{i}" for i in range(10)],
                "g2": [f"c{i}" for i in range(4, 14)],
                "s": [f"c{i}" for i in range(10)],
            },
        )
        state = state_for(inst, [[0], [1]])
        assert try_assign_best_fit(state, 2, inst, ColumnLimits()) == 0

    def test_tie_broken_to_larger_group(self):
        inst = make_instance(
            "tie", 1, {c: 1 for c in "ab"},
            {"s1": ["a"], "s2": ["a"], "s3": ["a"], "s4": ["a", "b"]},
        )
        state = state_for(inst, [[0], [1, 2]])
        assert try_assign_best_fit(state, 3, inst, ColumnLimits()) == 1

    def test_over_limit_student_fits_nowhere(self):
        years = {f"c{i}": 1 for i in range(14)}
        inst = make_instance(
            "over", 1, years,
            {"s1": ["c0"], "big": [f"c{i}" for i in range(14)]},
        )
        state = state_for(inst, [[0]])
        assert try_assign_best_fit(state, 1, inst, ColumnLimits()) is None

    def test_dynamic_mode_uses_pooled_limit(self):
        from srg.model import LimitMode

        years = {"n1": 2, "n2": 2, "o1": 1, "o2": 1}
        inst = make_instance(
            "dyn", 2, years,
            {"s1": ["n1", "o1"], "s2": ["n2", "o2"]},
        )
        fixed = ColumnLimits(1, 1, 4, LimitMode.FIXED)
        dynamic = ColumnLimits(1, 1, 4, LimitMode.DYNAMIC)
        state = state_for(inst, [[0]])
        assert try_assign_best_fit(state, 1, inst, fixed) is None  # 2 new > 1
        assert try_assign_best_fit(state, 1, inst, dynamic) == 0  # 4 pooled <= 4


class TestHfo:
    def test_single_student(self):
        inst = make_instance("one", 1, {"c": 1}, {"s": ["c"]})
        g = hfo_solve(inst)
        assert g.groups == [[0]]

    def test_worked_example_matches_enumerated_optimum(self):
        years = {f"c{i}": 1 for i in range(1, 15)}
        inst = make_instance(
            "abc", 1, years,
            {
                "A": [f"c{i}" for i in range(1, 11)],
                "B": [f"c{i}" for i in range(5, 15)],
                "C": ["c1", "c2"],
            },
        )
        g = hfo_solve(inst)
        assert g.groups == [[0, 2], [1]]  # A with C; B alone
        config = FitnessConfig()
        best, _ = brute_optimum(inst, config)
        assert brute_fitness(inst, g.groups, config) == pytest.approx(best)

    def test_deterministic(self):
        inst = generate_instance(40, 18, 12, 4, 12, seed=5)
        assert hfo_solve(inst) == hfo_solve(inst)

    def test_complete_even_when_infeasible(self):
        years = {f"c{i}": 1 for i in range(14)}
        inst = make_instance(
            "inf", 1, years,
            {"big": [f"c{i}" for i in range(14)], "s": ["c0"]},
        )
        g = hfo_solve(inst)
        assert unassigned_penalty(inst, g) == 0
        assert not is_feasible(inst, g, ColumnLimits())

    @pytest.mark.parametrize("seed", range(5))
    def test_feasible_when_students_individually_fit(self, seed):
        inst = generate_instance(30, 16, 14, 3, 10, seed=seed)
        g = hfo_solve(inst)
        assert is_feasible(inst, g, ColumnLimits())

    @pytest.mark.parametrize("seed", range(3))
    def test_matches_literal_greedy_replay(self, seed):
        """Witness: the solver output is exactly the step-by-step greedy build
        in which a group is opened only when nothing existing fits."""
        inst = generate_instance(25, 18, 0, 6, 12, seed=seed)
        limits = ColumnLimits(new_limit=10, old_limit=10, total_limit=20)
        config = FitnessConfig(limits=limits)
        g = hfo_solve(inst, config)
        order = sorted(
            range(inst.num_students),
            key=lambda i: -len(inst.students[i].registrations),
        )
        state: list[GroupState] = []
        labels = [-1] * inst.num_students
        for student in order:
            target = try_assign_best_fit(state, student, inst, limits)
            if target is None:
                target = len(state)
                state.append(GroupState())
            state[target].add(inst, student)
            labels[student] = target
        from srg.model import Grouping

        assert Grouping.from_labels(inst, labels) == g

    def test_ties_by_input_order(self):
        inst = make_instance(
            "ord", 1, {c: 1 for c in "abcd"},
            {"s1": ["a", "b"], "s2": ["c", "d"]},
        )
        g = hfo_solve(inst)
        # equal registration counts: s1 processed first, lands in group 0
        assert g.assignment[0] == 0


class TestRo:
    def test_single_student(self):
        inst = make_instance("one", 1, {"c": 1}, {"s": ["c"]})
        assert ro_solve(inst, seed=99).groups == [[0]]

    def test_seeded_determinism(self):
        inst = generate_instance(30, 15, 10, 3, 9, seed=2)
        assert ro_solve(inst, seed=7) == ro_solve(inst, seed=7)

    def test_seeds_vary_order(self):
        inst = generate_instance(40, 20, 15, 4, 12, seed=3)
        results = {tuple(ro_solve(inst, seed=s).assignment) for s in range(8)}
        assert len(results) > 1

    @pytest.mark.parametrize("seed", range(5))
    def test_complete_and_feasible(self, seed):
        inst = generate_instance(30, 16, 14, 3, 10, seed=11)
        g = ro_solve(inst, seed=seed)
        assert unassigned_penalty(inst, g) == 0
        assert is_feasible(inst, g, ColumnLimits())
