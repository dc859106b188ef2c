"""Generate the tests/data/uf20 fixture set: 20 satisfiable random 3-SAT
instances with 20 variables and 91 clauses, in DIMACS CNF.

Candidates are drawn in a fixed seed order; each is kept iff satisfiable
(quick solver run first, exhaustive check when the solver misses), so the
kept set is exactly the satisfiable prefix of the candidate stream.
"""

from pathlib import Path

from mctsat import (
    ExploitRule,
    ProblemClass,
    SolverConfig,
    brute_force,
    derive_seed,
    generate_random,
    solve,
    write_dimacs,
)

OUT_DIR = Path(__file__).resolve().parent.parent / "tests" / "data" / "uf20"
BASE_SEED = 20260601
TARGET = 20


def is_satisfiable(formula) -> bool:
    cfg = SolverConfig(
        explore_factor=20,
        exploit_rule=ExploitRule.SIGNIFICANCE,
        seed=derive_seed(BASE_SEED, 999),
    )
    result = solve(formula, ProblemClass.MAXSAT, cfg)
    if result.objective == formula.num_clauses:
        return True
    truth = brute_force(formula, ProblemClass.MAXSAT, max_vars=20)
    return truth.optimum == formula.num_clauses


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    kept = 0
    candidate = 0
    while kept < TARGET:
        formula = generate_random(20, 91, 3, seed=derive_seed(BASE_SEED, candidate))
        candidate += 1
        if not is_satisfiable(formula):
            continue
        kept += 1
        path = OUT_DIR / f"uf20-{kept:02d}.cnf"
        path.write_text(write_dimacs(formula))
        print(f"{path.name}  (candidate {candidate - 1})")
    print(f"kept {kept} of {candidate} candidates")


if __name__ == "__main__":
    main()
