"""Exhaustive ground truth for small instances.

Walks all 2^n assignments in Gray-code order with incremental true-literal
counts, so each step costs only the occurrence list of the flipped variable.
Kept independent of the matrix reduction: satisfaction and the class weight
rules are evaluated directly on the clause literals here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instances import Formula, ProblemClass


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    optimal_set: tuple[tuple[int, ...], ...]
    hard_feasible: bool


def brute_force(
    f: Formula, problem_class: ProblemClass, max_vars: int = 20
) -> OracleResult:
    """Exact optimum and the complete set of optimal assignments."""
    n = f.num_vars
    if n < 1:
        raise ValueError("formula has no variables")
    if n > max_vars:
        raise ValueError(f"{n} variables exceed the enumeration guard {max_vars}")

    m = f.num_clauses
    if problem_class is ProblemClass.MAXSAT:
        weights = [1] * m
    elif problem_class is ProblemClass.WEIGHTED_MAXSAT:
        weights = [c.weight for c in f.clauses]
    elif problem_class is ProblemClass.PARTIAL_MAXSAT:
        weights = [c.weight if c.hard else 1 for c in f.clauses]
    else:
        weights = [c.weight for c in f.clauses]
    hard = [c.hard for c in f.clauses]
    hard_total = sum(hard)

    # occ[v]: (clause, net change of its true-literal count when var v+1 flips 0 -> 1)
    net = [[0] * m for _ in range(n)]
    true_count = [0] * m
    for j, clause in enumerate(f.clauses):
        for lit in clause.literals:
            if lit.negated:
                net[lit.var - 1][j] -= 1
                true_count[j] += 1  # all-zero start satisfies negated literals
            else:
                net[lit.var - 1][j] += 1
    occ = [
        [(j, d) for j, d in enumerate(row) if d != 0]
        for row in net
    ]

    sat_weight = 0
    hard_sat = 0
    for j in range(m):
        if true_count[j] >= 1:
            sat_weight += weights[j]
            if hard[j]:
                hard_sat += 1
    best = sat_weight
    best_masks = [0]
    hard_feasible = hard_sat == hard_total

    gray = 0
    for i in range(1, 1 << n):
        v = (i & -i).bit_length() - 1
        bit = 1 << v
        gray ^= bit
        delta = 1 if gray & bit else -1
        for j, d in occ[v]:
            old = true_count[j]
            new = old + d * delta
            true_count[j] = new
            if (old >= 1) != (new >= 1):
                if new >= 1:
                    sat_weight += weights[j]
                    if hard[j]:
                        hard_sat += 1
                else:
                    sat_weight -= weights[j]
                    if hard[j]:
                        hard_sat -= 1
        if hard_sat == hard_total:
            hard_feasible = True
        if sat_weight > best:
            best = sat_weight
            best_masks = [gray]
        elif sat_weight == best:
            best_masks.append(gray)

    optimal_set = tuple(
        sorted(tuple((mask >> v) & 1 for v in range(n)) for mask in best_masks)
    )
    return OracleResult(best, optimal_set, hard_feasible)
