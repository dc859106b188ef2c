"""Repeated independent searches to enumerate distinct optimal assignments."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .instances import Formula, ProblemClass
from .mcts import SolverConfig, derive_seed, solve


@dataclass(frozen=True)
class EnumerationReport:
    """Distinct best assignments over several executions and their discovery
    curve: (execution index, cumulative distinct count of final-best
    assignments seen so far)."""

    best_objective: int
    distinct_optima: tuple[tuple[int, ...], ...]
    discovery_curve: tuple[tuple[int, int], ...]
    executions: int


def enumerate_optima(
    f: Formula, problem_class: ProblemClass, cfg: SolverConfig, n_exe: int
) -> EnumerationReport:
    """Run the solver n_exe times on seeds split from cfg.seed and collect all
    distinct assignments achieving the best objective seen.

    Assignments from executions that scored below the final best are dropped,
    so the curve is non-decreasing and ends at the distinct-optima count.
    """
    if n_exe < 1:
        raise ValueError("n_exe must be >= 1")
    runs = []
    for i in range(1, n_exe + 1):
        result = solve(f, problem_class, replace(cfg, seed=derive_seed(cfg.seed, i)))
        runs.append((result.objective, result.assignment))
    best = max(objective for objective, _ in runs)
    seen: set[tuple[int, ...]] = set()
    curve = []
    for i, (objective, assignment) in enumerate(runs, 1):
        if objective == best:
            seen.add(assignment)
        curve.append((i, len(seen)))
    return EnumerationReport(
        best_objective=best,
        distinct_optima=tuple(sorted(seen)),
        discovery_curve=tuple(curve),
        executions=n_exe,
    )
