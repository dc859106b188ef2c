"""Engine units: UCT, thresholds, selection, backup, rank/significance,
theory budgets, and end-to-end solves against the oracle."""

import math
import random
from collections import Counter

import pytest

from mctsat import (
    ExploitRule,
    ProblemClass,
    SearchNode,
    SolverConfig,
    backup,
    brute_force,
    classify,
    derive_seed,
    exploration_eligible,
    generate_random,
    initial_state,
    objective,
    parse_cnf,
    rank,
    select_best_child,
    select_exploration_child,
    significance,
    soft_threshold,
    solve,
    theory_budgets,
    uct_value,
)


def make_root(child_stats, parent_visits=None):
    """Root with children given as (q_sum, visits, r_max) triples."""
    f = parse_cnf("p cnf 1 1\n1 0\n")
    state, _ = initial_state(f, ProblemClass.MAXSAT)
    root = SearchNode(state)
    for q_sum, visits, r_max in child_stats:
        child = SearchNode(state, parent=root)
        child.q_sum = q_sum
        child.visits = visits
        child.r_max = r_max
        child.r_min = r_max
        root.children.append(child)
    root.visits = (
        parent_visits if parent_visits is not None else sum(c.visits for c in root.children)
    )
    return root


class TestUctValue:
    def test_formula_evaluation(self):
        root = make_root([(10.0, 2, 5.0)], parent_visits=4)
        value = uct_value(root, root.children[0], 1.0)
        assert value == pytest.approx(5 + math.sqrt(math.log(4)), abs=1e-5)
        assert value == pytest.approx(6.17741, abs=1e-5)

    def test_zero_c_gives_pure_mean(self):
        root = make_root([(10.0, 2, 5.0)], parent_visits=4)
        assert uct_value(root, root.children[0], 0.0) == 5.0

    def test_single_visit_each_no_bonus(self):
        root = make_root([(5.0, 1, 5.0)], parent_visits=1)
        assert uct_value(root, root.children[0], 1.0) == 5.0

    def test_unvisited_child_rejected(self):
        root = make_root([(0.0, 1, 0.0)], parent_visits=1)
        root.children[0].visits = 0
        with pytest.raises(ValueError):
            uct_value(root, root.children[0], 1.0)


class TestSoftThreshold:
    def test_arithmetic(self):
        assert soft_threshold([2.0, 10.0], 0.9) == pytest.approx(9.2)

    def test_alpha_zero_is_min(self):
        assert soft_threshold([3.0, 7.0, 5.0], 0.0) == 3.0

    def test_alpha_one_is_max(self):
        assert soft_threshold([3.0, 7.0, 5.0], 1.0) == 7.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            soft_threshold([], 0.5)


class TestExplorationSelection:
    def test_alpha_zero_all_children_eligible(self):
        root = make_root([(1.0, 1, 1.0), (5.0, 1, 5.0), (9.0, 1, 9.0)])
        cfg = SolverConfig(alpha=0.0, uct_c=0.0)
        assert exploration_eligible(root, cfg) == [0, 1, 2]

    def test_alpha_one_argmax_only(self):
        root = make_root([(1.0, 1, 1.0), (9.0, 1, 9.0), (9.0, 1, 9.0)])
        cfg = SolverConfig(alpha=1.0, uct_c=0.0)
        assert exploration_eligible(root, cfg) == [1, 2]

    def test_threshold_cut(self):
        # UCT values 1, 5, 9 at alpha 0.9: threshold 8.2 keeps only the 9
        root = make_root([(1.0, 1, 1.0), (5.0, 1, 5.0), (9.0, 1, 9.0)])
        cfg = SolverConfig(alpha=0.9, uct_c=0.0)
        assert exploration_eligible(root, cfg) == [2]

    def test_equal_uct_uniform_tie_break(self):
        root = make_root([(3.0, 1, 3.0), (3.0, 1, 3.0)])
        cfg = SolverConfig(alpha=0.9, uct_c=0.0)
        rng = random.Random(5)
        counts = Counter()
        draws = 10_000
        for _ in range(draws):
            counts[id(select_exploration_child(root, cfg, rng))] += 1
        assert len(counts) == 2
        for count in counts.values():
            assert abs(count / draws - 0.5) < 0.02

    def test_no_children_rejected(self):
        root = make_root([])
        with pytest.raises(ValueError):
            select_exploration_child(root, SolverConfig(), random.Random(0))


class TestBackup:
    def test_fresh_child_single_backup(self):
        root = make_root([(0.0, 0, -math.inf)], parent_visits=0)
        child = root.children[0]
        child.r_min = math.inf
        backup(child, 4.0)
        assert (child.q_sum, child.visits, child.r_max) == (4.0, 1, 4.0)
        assert root.visits == 1 and root.q_sum == 4.0

    def test_two_backups_accumulate(self):
        root = make_root([(0.0, 0, -math.inf)], parent_visits=0)
        child = root.children[0]
        child.r_min = math.inf
        backup(child, 3.0)
        backup(child, 5.0)
        assert child.q_sum == 8.0
        assert child.visits == 2
        assert child.r_max == 5.0
        assert child.r_min == 3.0

    def test_root_visits_equals_sum_of_children(self):
        root = make_root([(0.0, 0, -math.inf)] * 3, parent_visits=0)
        rng = random.Random(1)
        for _ in range(50):
            backup(root.children[rng.randrange(3)], rng.random())
        assert root.visits == sum(c.visits for c in root.children) == 50


class TestRank:
    def test_example(self):
        assert rank([5, 1, 3]) == [3, 1, 2]

    def test_tie_by_original_index(self):
        assert rank([2, 2]) == [1, 2]

    def test_singleton(self):
        assert rank([7]) == [1]

    def test_is_permutation(self):
        rng = random.Random(3)
        for _ in range(50):
            values = [rng.randint(0, 5) for _ in range(rng.randint(1, 10))]
            assert sorted(rank(values)) == list(range(1, len(values) + 1))


class TestSignificance:
    def test_agreeing_ranks_keep_means(self):
        assert significance([1.0, 2.0], [3.0, 4.0]) == [1.0, 2.0]

    def test_disagreeing_ranks_take_maxes(self):
        assert significance([1.0, 2.0], [4.0, 3.0]) == [4.0, 3.0]

    def test_singleton_keeps_mean(self):
        assert significance([1.5], [9.0]) == [1.5]

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            significance([1.0], [1.0, 2.0])


class TestSelectBestChild:
    def test_mean_rule(self):
        root = make_root([(1.0, 1, 1.0), (3.0, 1, 3.0)])
        chosen = select_best_child(root, ExploitRule.MEAN_Q, random.Random(0))
        assert chosen is root.children[1]

    def test_significance_rule_takes_max_statistic(self):
        # means 5, 2 but maxes 6, 9: the projected significance score is the
        # max statistic, so the second child wins
        root = make_root([(10.0, 2, 6.0), (4.0, 2, 9.0)])
        chosen = select_best_child(root, ExploitRule.SIGNIFICANCE, random.Random(0))
        assert chosen is root.children[1]

    def test_significance_equals_projected_operator(self):
        rng = random.Random(11)
        for _ in range(100):
            k = rng.randint(1, 6)
            stats = []
            for _ in range(k):
                visits = rng.randint(1, 5)
                rewards = [rng.randint(0, 10) for _ in range(visits)]
                stats.append((float(sum(rewards)), visits, float(max(rewards))))
            root = make_root(stats)
            means = [c.q_sum / c.visits for c in root.children]
            maxes = [c.r_max for c in root.children]
            sig = significance(means, maxes)
            projected = [maxes[i] for i in range(k)]  # Proj maps both branches to maxes
            best = max(projected)
            eligible = {i for i, v in enumerate(projected) if v == best}
            chosen = select_best_child(root, ExploitRule.SIGNIFICANCE, rng)
            assert root.children.index(chosen) in eligible
            # the operator output never leaves the {mean, max} pair per child
            for i, value in enumerate(sig):
                assert value in (means[i], maxes[i])

    def test_mean_tie_break_uniform(self):
        root = make_root([(4.0, 2, 3.0), (2.0, 1, 2.0)])
        rng = random.Random(17)
        counts = Counter()
        draws = 10_000
        for _ in range(draws):
            counts[id(select_best_child(root, ExploitRule.MEAN_Q, rng))] += 1
        for count in counts.values():
            assert abs(count / draws - 0.5) < 0.02


class TestTheoryBudgets:
    def test_explore_bound_closed_form(self):
        assert theory_budgets(2, 0.05).explore_bound == 11

    def test_single_optimum_execution_bound(self):
        assert theory_budgets(4, 0.05, num_optima=1).execution_bound == 1

    def test_three_optima_execution_bound(self):
        assert theory_budgets(4, 0.05, num_optima=3).execution_bound == 11

    def test_child_visit_bound_value(self):
        expected = math.ceil(math.log(1 / 0.05) / math.log1p(1 / 3)) + 4
        assert theory_budgets(2, 0.5, delta1=0.05).child_visit_bound == expected

    def test_monotone_in_n_and_inverse_epsilon(self):
        for eps_a, eps_b in [(0.2, 0.1), (0.1, 0.05), (0.05, 0.01)]:
            for n in range(1, 11):
                a = theory_budgets(n, eps_a)
                b = theory_budgets(n, eps_b)
                assert b.explore_bound >= a.explore_bound
        for eps in (0.2, 0.05):
            previous = 0
            for n in range(1, 13):
                bound = theory_budgets(n, eps).explore_bound
                assert bound >= previous
                previous = bound

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            theory_budgets(0, 0.05)
        with pytest.raises(ValueError):
            theory_budgets(2, 0.0)
        with pytest.raises(ValueError):
            theory_budgets(2, 0.05, delta1=1.0)
        with pytest.raises(ValueError):
            theory_budgets(2, 0.05, num_optima=0)


class TestDeriveSeed:
    def test_deterministic_and_path_sensitive(self):
        assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)
        assert derive_seed(1, 2, 3) != derive_seed(1, 3, 2)
        assert derive_seed(1) != derive_seed(2)


class TestSolve:
    def test_single_positive_clause(self):
        f = parse_cnf("p cnf 1 1\n1 0\n")
        res = solve(f, ProblemClass.MAXSAT, SolverConfig(seed=3))
        assert res.assignment == (1,)
        assert res.objective == 1

    def test_complementary_pair(self):
        f = parse_cnf("p cnf 1 2\n1 0\n-1 0\n")
        res = solve(f, ProblemClass.MAXSAT, SolverConfig(seed=4))
        assert res.objective == 1

    def test_fixed_seed_determinism(self):
        f = generate_random(8, 20, 3, weighted=True, seed=6)
        cfg = SolverConfig(seed=99)
        a = solve(f, ProblemClass.WEIGHTED_MAXSAT, cfg)
        b = solve(f, ProblemClass.WEIGHTED_MAXSAT, cfg)
        assert a.assignment == b.assignment
        assert a.objective == b.objective
        assert a.satisfied_mask == b.satisfied_mask
        assert a.hard_violations == b.hard_violations
        assert a.stats.episodes == b.stats.episodes
        assert a.stats.per_level == b.stats.per_level

    def test_objective_recomputed_independently(self):
        f = generate_random(7, 18, 3, weighted=True, hard_count=2, seed=13)
        cls = classify(f)
        res = solve(f, cls, SolverConfig(seed=21))
        check = objective(f, cls, list(res.assignment))
        assert check.value == res.objective
        assert check.satisfied == res.satisfied_mask
        assert check.hard_violations == res.hard_violations

    def test_budget_floor_is_children_plus_one(self):
        f = parse_cnf("p cnf 4 1\n1 2 3 4 0\n")
        res = solve(f, ProblemClass.MAXSAT, SolverConfig(explore_factor=0.01, seed=0))
        assert res.stats.per_level == (9, 7, 5, 3)

    def test_nominal_budget_ceil(self):
        f = parse_cnf("p cnf 2 3\n1 2 0\n-1 2 0\n1 -2 0\n")
        res = solve(f, ProblemClass.MAXSAT, SolverConfig(explore_factor=7, seed=0))
        assert res.stats.n_explore == 21
        assert res.stats.per_level == (21, 21)
        assert res.stats.episodes == 42

    def test_invalid_config_rejected(self):
        f = parse_cnf("p cnf 1 1\n1 0\n")
        with pytest.raises(ValueError):
            solve(f, ProblemClass.MAXSAT, SolverConfig(alpha=1.5))
        with pytest.raises(ValueError):
            solve(f, ProblemClass.MAXSAT, SolverConfig(explore_factor=0))

    def test_tree_accounting_invariants(self):
        rng = random.Random(2)
        for _ in range(5):
            f = generate_random(6, 14, 3, weighted=rng.random() < 0.5, seed=rng.randint(0, 999))
            cls = classify(f)
            res = solve(f, cls, SolverConfig(seed=rng.randint(0, 999), keep_trees=True))
            assert len(res.level_roots) == f.num_vars
            for root in res.level_roots:
                assert root.visits == sum(c.visits for c in root.children)
                for node in [root] + root.children:
                    mean = node.q_sum / node.visits
                    assert node.r_min - 1e-9 <= mean <= node.r_max + 1e-9

    def test_matches_oracle_on_small_unweighted(self):
        rng = random.Random(500)
        hits = 0
        for i in range(15):
            f = generate_random(
                rng.randint(4, 8), rng.randint(8, 18), 3, seed=rng.randint(0, 10**6)
            )
            truth = brute_force(f, ProblemClass.MAXSAT)
            res = solve(
                f,
                ProblemClass.MAXSAT,
                SolverConfig(explore_factor=50, exploit_rule=ExploitRule.SIGNIFICANCE, seed=i),
            )
            hits += res.objective == truth.optimum
        assert hits == 15
