"""mctsat: MaxSAT-family solving via a 0/1 linear reduction and Monte-Carlo
tree search, with multi-optimum enumeration and an exhaustive oracle."""

from .blp import (
    BlpProblem,
    ObjectiveResult,
    SatTableaux,
    UNASSIGNED,
    format_blp,
    objective,
    objective_weights,
    satisfied_mask,
    to_blp,
    to_tableaux,
)
from .enumeration import EnumerationReport, enumerate_optima
from .instances import (
    Clause,
    Formula,
    Literal,
    ParseError,
    ProblemClass,
    check_hard_weight_rule,
    classify,
    generate_random,
    parse_cnf,
    parse_dimacs,
    parse_wcnf,
    write_dimacs,
)
from .mcts import (
    ExploitRule,
    SearchNode,
    SearchStats,
    SolveResult,
    SolverConfig,
    TheoryBudgets,
    backup,
    derive_seed,
    exploration_eligible,
    rank,
    select_best_child,
    select_exploration_child,
    significance,
    soft_threshold,
    solve,
    theory_budgets,
    uct_value,
)
from .oracle import OracleResult, brute_force
from .records import (
    CSV_COLUMNS,
    SolveRecord,
    csv_row,
    make_record,
    parse_result,
    record_to_json,
    write_result,
)
from .rl import (
    Action,
    Episode,
    EpisodeScorer,
    RewardKind,
    State,
    action_space,
    apply_action,
    episode_reward,
    initial_state,
    is_terminal,
    rollout,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "BlpProblem",
    "CSV_COLUMNS",
    "Clause",
    "EnumerationReport",
    "Episode",
    "EpisodeScorer",
    "ExploitRule",
    "Formula",
    "Literal",
    "ObjectiveResult",
    "OracleResult",
    "ParseError",
    "ProblemClass",
    "RewardKind",
    "SatTableaux",
    "SearchNode",
    "SearchStats",
    "SolveRecord",
    "SolveResult",
    "SolverConfig",
    "State",
    "TheoryBudgets",
    "UNASSIGNED",
    "action_space",
    "apply_action",
    "backup",
    "brute_force",
    "check_hard_weight_rule",
    "classify",
    "csv_row",
    "derive_seed",
    "enumerate_optima",
    "episode_reward",
    "exploration_eligible",
    "format_blp",
    "generate_random",
    "initial_state",
    "is_terminal",
    "make_record",
    "objective",
    "objective_weights",
    "parse_cnf",
    "parse_dimacs",
    "parse_result",
    "parse_wcnf",
    "rank",
    "record_to_json",
    "rollout",
    "satisfied_mask",
    "select_best_child",
    "select_exploration_child",
    "significance",
    "soft_threshold",
    "solve",
    "theory_budgets",
    "to_blp",
    "to_tableaux",
    "uct_value",
    "write_dimacs",
    "write_result",
]
