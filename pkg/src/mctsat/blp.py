"""Reduction of a classified formula to a 0/1 linear objective.

Clause j turns into the row constraint ``a_y[j] @ y + b[j] >= 1`` over the
binary assignment vector y, where a_y[j][i] is the net count of positive minus
negated occurrences of variable i in clause j and b[j] counts the negated
literals.  The objective is the w-weighted sum of satisfied rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instances import Formula, ProblemClass, check_hard_weight_rule

UNASSIGNED = -1


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class BlpProblem:
    """Objective weights, coefficient matrix and negation counts of one instance."""

    w: np.ndarray  # (m,) int64
    a_y: np.ndarray  # (m, n) int64
    b: np.ndarray  # (m,) int64

    @property
    def num_clauses(self) -> int:
        return self.a_y.shape[0]

    @property
    def num_vars(self) -> int:
        return self.a_y.shape[1]


@dataclass(frozen=True)
class SatTableaux:
    """Search-state layout: weights, coefficients, and the partial assignment y.

    The redundant b and per-clause satisfaction indicators are dropped; both
    are recomputable from the originating formula.  Entries of y are 0, 1 or
    UNASSIGNED.
    """

    w: np.ndarray
    a_y: np.ndarray
    y: np.ndarray  # (n,) int8

    @property
    def num_vars(self) -> int:
        return self.a_y.shape[1]


def objective_weights(f: Formula, problem_class: ProblemClass) -> list[int]:
    """Per-clause objective weights under the unified weighting rules.

    Plain MaxSAT counts every clause once; the weighted flavor keeps the input
    weights; the partial flavor keeps hard weights but flattens soft ones to 1;
    the weighted-partial flavor keeps everything.
    """
    if problem_class is ProblemClass.MAXSAT:
        return [1] * f.num_clauses
    if problem_class is ProblemClass.WEIGHTED_MAXSAT:
        return [c.weight for c in f.clauses]
    if problem_class is ProblemClass.PARTIAL_MAXSAT:
        return [c.weight if c.hard else 1 for c in f.clauses]
    return [c.weight for c in f.clauses]


def to_blp(f: Formula, problem_class: ProblemClass) -> BlpProblem:
    """Build the (w, a_y, b) reduction; rejects partial instances whose hard
    weights do not dominate the total soft weight."""
    if problem_class in (
        ProblemClass.PARTIAL_MAXSAT,
        ProblemClass.WEIGHTED_PARTIAL_MAXSAT,
    ) and not check_hard_weight_rule(f):
        raise ValueError(
            "hard clause weights must each exceed the total soft weight"
        )
    m, n = f.num_clauses, f.num_vars
    a_y = np.zeros((m, n), dtype=np.int64)
    b = np.zeros(m, dtype=np.int64)
    for j, clause in enumerate(f.clauses):
        for lit in clause.literals:
            if lit.negated:
                a_y[j, lit.var - 1] -= 1
                b[j] += 1
            else:
                a_y[j, lit.var - 1] += 1
    w = np.asarray(objective_weights(f, problem_class), dtype=np.int64).reshape(m)
    return BlpProblem(_frozen(w), _frozen(a_y), _frozen(b))


def to_tableaux(p: BlpProblem) -> SatTableaux:
    """State layout with every variable still unassigned."""
    y = np.full(p.num_vars, UNASSIGNED, dtype=np.int8)
    return SatTableaux(p.w, p.a_y, _frozen(y))


def satisfied_mask(p: BlpProblem, y: np.ndarray) -> np.ndarray:
    """Boolean per-clause satisfaction of a full assignment via the row test."""
    return (p.a_y @ y + p.b) >= 1


@dataclass(frozen=True)
class ObjectiveResult:
    value: int
    satisfied: tuple[bool, ...]
    hard_violations: tuple[int, ...]


def objective(f: Formula, problem_class: ProblemClass, y) -> ObjectiveResult:
    """Weighted satisfied sum of a complete assignment, with the per-clause
    satisfaction mask and the indices of violated hard clauses."""
    arr = np.asarray(y)
    if arr.shape != (f.num_vars,) or not (((arr == 0) | (arr == 1)).all()):
        raise ValueError("assignment must be a complete 0/1 vector of length n")
    p = to_blp(f, problem_class)
    sat = satisfied_mask(p, arr.astype(np.int64))
    value = int(p.w[sat].sum())
    hard_violations = tuple(
        int(j) for j in np.flatnonzero(~sat) if f.clauses[j].hard
    )
    return ObjectiveResult(value, tuple(bool(s) for s in sat), hard_violations)


def format_blp(p: BlpProblem) -> str:
    """Plain-text dump of (w, a_y, b), one clause row per line."""
    width = max(
        (len(str(int(v))) for v in np.concatenate([p.w, p.b, p.a_y.ravel()])),
        default=1,
    )
    lines = [f"{'w':>{width}} | {'a_y':^{(width + 1) * max(p.num_vars, 1)}}| b"]
    for j in range(p.num_clauses):
        row = " ".join(f"{int(v):>{width}}" for v in p.a_y[j])
        lines.append(f"{int(p.w[j]):>{width}} | {row} | {int(p.b[j])}")
    return "\n".join(lines) + "\n"
