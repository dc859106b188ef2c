"""Monte-Carlo tree search over variable assignments.

One variable is committed per level.  A level expands every remaining action
once, spends the rest of its exploration budget on children drawn from the
soft-max-relaxed UCT eligible set, then commits the best child and starts a
fresh level from the committed state.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .blp import UNASSIGNED
from .instances import Formula, ProblemClass
from .rl import (
    Action,
    Episode,
    EpisodeScorer,
    RewardKind,
    State,
    action_space,
    apply_action,
    initial_state,
    is_terminal,
    rollout,
)


class ExploitRule(Enum):
    """How a level commits its child after exploration."""

    MEAN_Q = "mean"
    SIGNIFICANCE = "sig"


@dataclass
class SolverConfig:
    """Search knobs.  Defaults: budget 7x clauses per level, alpha 0.9,
    C = 1.0, terminal reward, mean-value exploitation."""

    explore_factor: float = 7.0
    alpha: float = 0.9
    uct_c: float = 1.0
    reward: RewardKind = RewardKind.TERMINAL
    exploit_rule: ExploitRule = ExploitRule.MEAN_Q
    seed: int = 0
    keep_trees: bool = False  # retain per-level roots on the result (debug/tests)


class SearchNode:
    """Tree node carrying cumulative reward, visit count and reward extremes."""

    __slots__ = (
        "state",
        "from_action",
        "parent",
        "children",
        "q_sum",
        "visits",
        "r_max",
        "r_min",
    )

    def __init__(
        self,
        state: State,
        from_action: Action | None = None,
        parent: "SearchNode | None" = None,
    ):
        self.state = state
        self.from_action = from_action
        self.parent = parent
        self.children: list[SearchNode] = []
        self.q_sum = 0.0
        self.visits = 0
        self.r_max = -math.inf
        self.r_min = math.inf

    def mean(self) -> float:
        return self.q_sum / self.visits

    def __repr__(self):  # pragma: no cover - debugging aid
        return (
            f"SearchNode(action={self.from_action}, N={self.visits}, "
            f"Q={self.q_sum:.3f}, r_max={self.r_max:.3f})"
        )


@dataclass(frozen=True)
class SearchStats:
    episodes: int
    per_level: tuple[int, ...]
    n_explore: int  # nominal per-level budget ceil(explore_factor * m)
    wall_ms: float


@dataclass(frozen=True)
class SolveResult:
    assignment: tuple[int, ...]
    objective: int
    satisfied_mask: tuple[bool, ...]
    hard_violations: tuple[int, ...]
    stats: SearchStats
    level_roots: tuple[SearchNode, ...] = ()


def uct_value(parent: SearchNode, child: SearchNode, c: float) -> float:
    """Mean reward plus the exploration bonus c * sqrt(2 ln N_parent / N_child)."""
    if child.visits < 1 or parent.visits < 1:
        raise ValueError("uct_value requires at least one visit on both nodes")
    return child.q_sum / child.visits + c * math.sqrt(
        2.0 * math.log(parent.visits) / child.visits
    )


def soft_threshold(values, alpha: float) -> float:
    """(1 - alpha) * min + alpha * max of a non-empty value list."""
    if len(values) == 0:
        raise ValueError("soft_threshold of an empty list")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    return (1.0 - alpha) * min(values) + alpha * max(values)


def exploration_eligible(v: SearchNode, cfg: SolverConfig) -> list[int]:
    """Indices of children whose UCT value reaches the soft threshold."""
    if not v.children:
        raise ValueError("node has no children")
    ucts = [uct_value(v, child, cfg.uct_c) for child in v.children]
    # the threshold is a convex combination, so mathematically <= max(ucts);
    # clamp to guard against it landing one rounding step above
    thr = min(soft_threshold(ucts, cfg.alpha), max(ucts))
    return [i for i, u in enumerate(ucts) if u >= thr]


def select_exploration_child(
    v: SearchNode, cfg: SolverConfig, rng: random.Random
) -> SearchNode:
    """Uniform draw from the soft-max eligible children."""
    if not v.children:
        raise ValueError("node has no children")
    # inlined exploration_eligible: this sits on the per-episode hot path
    c = cfg.uct_c
    log_term = 2.0 * math.log(v.visits)
    ucts = [
        child.q_sum / child.visits + c * math.sqrt(log_term / child.visits)
        for child in v.children
    ]
    lo = min(ucts)
    hi = max(ucts)
    thr = min((1.0 - cfg.alpha) * lo + cfg.alpha * hi, hi)
    eligible = [i for i, u in enumerate(ucts) if u >= thr]
    return v.children[eligible[rng.randrange(len(eligible))]]


def backup(leaf: SearchNode, reward: float) -> None:
    """Add the episode reward to every node from the leaf up to the root."""
    node = leaf
    while node is not None:
        node.visits += 1
        node.q_sum += reward
        if reward > node.r_max:
            node.r_max = reward
        if reward < node.r_min:
            node.r_min = reward
        node = node.parent


def rank(values) -> list[int]:
    """1-based ascending positions; ties broken by original index."""
    if len(values) == 0:
        raise ValueError("rank of an empty list")
    order = sorted(range(len(values)), key=lambda i: (values[i], i))
    ranks = [0] * len(values)
    for position, idx in enumerate(order, 1):
        ranks[idx] = position
    return ranks


def significance(means, maxes) -> list[float]:
    """Per group: the mean where its rank agrees with the max's rank across
    groups, otherwise the max."""
    if len(means) != len(maxes):
        raise ValueError("means and maxes must have equal length")
    mean_ranks = rank(means)
    max_ranks = rank(maxes)
    return [
        means[k] if mean_ranks[k] == max_ranks[k] else maxes[k]
        for k in range(len(means))
    ]


def select_best_child(
    v: SearchNode, rule: ExploitRule, rng: random.Random
) -> SearchNode:
    """Commit rule.  MEAN_Q takes the best empirical mean.  SIGNIFICANCE maps
    every child's significance value onto its maximum statistic, so the score
    is the child's best observed reward.  Ties break uniformly at random."""
    if not v.children:
        raise ValueError("node has no children")
    if rule is ExploitRule.MEAN_Q:
        scores = [child.q_sum / child.visits for child in v.children]
    else:
        scores = [child.r_max for child in v.children]
    best = max(scores)
    ties = [i for i, s in enumerate(scores) if s == best]
    return v.children[ties[rng.randrange(len(ties))]]


@dataclass(frozen=True)
class TheoryBudgets:
    explore_bound: int
    child_visit_bound: int
    execution_bound: int


def theory_budgets(
    n: int, epsilon: float, delta1: float = 0.05, num_optima: int = 1
) -> TheoryBudgets:
    """Closed-form lower bounds on exploration and execution counts.

    explore_bound: explorations from the root so one fixed assignment is hit
    with probability >= 1 - epsilon.  child_visit_bound: root-level budget so
    every child is explored at least once with probability >= 1 - delta1.
    execution_bound: independent executions so all ``num_optima`` optima are
    seen with probability >= 1 - epsilon, assuming a uniform draw per run.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must be in (0, 1)")
    if not 0.0 < delta1 < 1.0:
        raise ValueError("delta1 must be in (0, 1)")
    if num_optima < 1:
        raise ValueError("num_optima must be >= 1")
    explore = math.ceil(math.log(1.0 / epsilon) / math.log1p(1.0 / (2**n - 1)))
    child = math.ceil(math.log(1.0 / delta1) / math.log1p(1.0 / (2 * n - 1))) + 2 * n
    if num_optima == 1:
        execution = 1
    else:
        s = num_optima
        execution = math.ceil(
            math.log(s / epsilon) / (math.log(s) - math.log(s - 1))
        )
    return TheoryBudgets(explore, child, execution)


_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(x: int) -> int:
    x &= _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


def derive_seed(base: int, *path: int) -> int:
    """Deterministic seed splitting: fold path components into the base seed."""
    x = _mix64(base + _GOLDEN)
    for p in path:
        x = _mix64(x ^ ((p + _GOLDEN) & _MASK64))
    return x


def solve(f: Formula, problem_class: ProblemClass, cfg: SolverConfig) -> SolveResult:
    """Run the level-by-level search and return the best assignment found.

    Per level the budget is max(ceil(explore_factor * m), |A_s| + 1) episodes:
    one expansion episode per child, the remainder through the eligible-set
    draw.  The committed path is returned unless some episode found a strictly
    better assignment, in which case that incumbent wins; keeping the path on
    ties preserves the randomized tie-breaking that multi-optimum enumeration
    relies on.  Deterministic for a fixed seed.
    """
    if not 0.0 <= cfg.alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {cfg.alpha}")
    if cfg.explore_factor <= 0:
        raise ValueError("explore_factor must be positive")
    rng = random.Random(cfg.seed)
    scorer = EpisodeScorer(f, problem_class)
    state, _ = initial_state(f, problem_class)
    m = f.num_clauses
    nominal = math.ceil(cfg.explore_factor * m)
    terminal_reward = cfg.reward is RewardKind.TERMINAL
    prefix: list[tuple[State, Action]] = []
    per_level: list[int] = []
    roots: list[SearchNode] = []
    best_value = None
    best_y = None
    t0 = time.perf_counter()
    randrange = rng.randrange

    def complete_uniform(y0: np.ndarray) -> np.ndarray:
        # same draw sequence as rl.rollout, without materializing states
        y = y0.copy()
        unassigned = np.flatnonzero(y == UNASSIGNED).tolist()
        while unassigned:
            pick = randrange(2 * len(unassigned))
            idx, bit = divmod(pick, 2)
            y[unassigned[idx]] = bit
            unassigned[idx] = unassigned[-1]
            unassigned.pop()
        return y

    def episode_reward_from(level_state: State, action: Action, child_state: State):
        nonlocal best_value, best_y
        if terminal_reward:
            if is_terminal(child_state):
                terminal = child_state.tableaux.y
            else:
                terminal = complete_uniform(child_state.tableaux.y)
            value = scorer.terminal_value(terminal)
            if best_value is None or value > best_value:
                best_value = value
                best_y = terminal
            return float(value)
        if is_terminal(child_state):
            completion_steps: tuple = ()
            terminal = child_state.tableaux.y
        else:
            ep = rollout(child_state, rng)
            completion_steps = ep.steps
            terminal = ep.terminal_assignment
        value = scorer.terminal_value(terminal)
        if best_value is None or value > best_value:
            best_value = value
            best_y = terminal
        full = Episode(
            tuple(prefix) + ((level_state, action),) + completion_steps, terminal
        )
        return scorer.score(full, cfg.reward)

    while not is_terminal(state):
        actions = action_space(state)
        root = SearchNode(state)
        budget = max(nominal, len(actions) + 1)
        for act in actions:
            child_state = apply_action(state, act)
            child = SearchNode(child_state, from_action=act, parent=root)
            root.children.append(child)
            backup(child, episode_reward_from(state, act, child_state))
        for _ in range(budget - len(actions)):
            child = select_exploration_child(root, cfg, rng)
            backup(child, episode_reward_from(state, child.from_action, child.state))
        best = select_best_child(root, cfg.exploit_rule, rng)
        prefix.append((state, best.from_action))
        state = best.state
        per_level.append(budget)
        if cfg.keep_trees:
            roots.append(root)

    wall_ms = (time.perf_counter() - t0) * 1000.0
    path_y = state.tableaux.y
    if best_value is not None and best_value > scorer.terminal_value(path_y):
        final_y = best_y
    else:
        final_y = path_y
    value, sat = scorer.evaluate(final_y)
    hard_violations = tuple(
        j for j in range(m) if f.clauses[j].hard and not sat[j]
    )
    stats = SearchStats(
        episodes=sum(per_level),
        per_level=tuple(per_level),
        n_explore=nominal,
        wall_ms=wall_ms,
    )
    return SolveResult(
        assignment=tuple(int(v) for v in final_y),
        objective=value,
        satisfied_mask=tuple(bool(s) for s in sat),
        hard_violations=hard_violations,
        stats=stats,
        level_roots=tuple(roots),
    )
