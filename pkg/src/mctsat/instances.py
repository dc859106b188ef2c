"""DIMACS CNF/WCNF instances: parsing, classification, generation, serialization.

Accepted dialect: comment lines start with "c", one "p cnf <n> <m>" or
"p wcnf <n> <m> [top]" header, clauses as whitespace-separated integers
terminated by 0 (clauses may span lines).  WCNF clause lines start with the
clause weight; when the optional top weight is present, weight == top marks a
hard clause.  A trailing "%" / "0" pair after the final clause (SATLIB
convention) is ignored.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum


class ProblemClass(Enum):
    """The four supported problem flavors, named by their CLI token."""

    MAXSAT = "maxsat"
    WEIGHTED_MAXSAT = "wmaxsat"
    PARTIAL_MAXSAT = "pms"
    WEIGHTED_PARTIAL_MAXSAT = "wpms"


class ParseError(ValueError):
    """Malformed DIMACS input, pinned to a 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Literal:
    """A variable (1-based index) or its negation."""

    var: int
    negated: bool = False

    def __post_init__(self):
        if self.var < 1:
            raise ValueError(f"variable index must be >= 1, got {self.var}")

    @classmethod
    def from_dimacs(cls, code: int) -> "Literal":
        if code == 0:
            raise ValueError("0 is the clause terminator, not a literal")
        return cls(abs(code), code < 0)

    def to_dimacs(self) -> int:
        return -self.var if self.negated else self.var


@dataclass(frozen=True)
class Clause:
    """Disjunction of literals with a non-negative weight.

    Duplicate and complementary literals are preserved as written.
    """

    literals: tuple[Literal, ...]
    weight: int = 1
    hard: bool = False

    def __post_init__(self):
        if not self.literals:
            raise ValueError("clause must contain at least one literal")
        if self.weight < 0:
            raise ValueError(f"clause weight must be non-negative, got {self.weight}")


@dataclass(frozen=True)
class Formula:
    """A conjunction of weighted clauses over variables 1..num_vars."""

    num_vars: int
    clauses: tuple[Clause, ...]
    top_weight: int | None = None
    declared_class: ProblemClass | None = None

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for idx, clause in enumerate(self.clauses):
            for lit in clause.literals:
                if lit.var > self.num_vars:
                    raise ValueError(
                        f"clause {idx} uses variable {lit.var} "
                        f"beyond num_vars={self.num_vars}"
                    )
            if self.top_weight is None:
                if clause.hard:
                    raise ValueError(f"clause {idx} is hard but no top weight is set")
            elif clause.hard != (clause.weight == self.top_weight):
                raise ValueError(
                    f"clause {idx}: hard flag must match weight == top_weight"
                )

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def _decode(source: str | bytes) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8", errors="replace")
    return source


def _numbered_tokens(text: str) -> list[tuple[str, int]]:
    """Whitespace tokens paired with their 1-based line number, comments dropped."""
    out = []
    for line_no, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        for tok in stripped.split():
            out.append((tok, line_no))
    return out


def _to_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"invalid {what} {token!r}", line) from None


def _parse_header(tokens: list[tuple[str, int]], kind: str):
    """Return (num_vars, num_clauses, top, body_start_index)."""
    if not tokens:
        raise ParseError("empty input", 1)
    tok, line = tokens[0]
    if tok != "p":
        raise ParseError(f"expected 'p {kind}' header, found {tok!r}", line)
    if len(tokens) < 4:
        raise ParseError("incomplete header", line)
    fmt, fmt_line = tokens[1]
    if fmt != kind:
        raise ParseError(f"expected 'p {kind}' header, found 'p {fmt}'", fmt_line)
    num_vars = _to_int(*tokens[2], "variable count")
    num_clauses = _to_int(*tokens[3], "clause count")
    if num_vars < 0 or num_clauses < 0:
        raise ParseError("header counts must be non-negative", line)
    top = None
    body = 4
    header_line = tokens[3][1]
    if kind == "wcnf" and len(tokens) > 4 and tokens[4][1] == header_line:
        top = _to_int(*tokens[4], "top weight")
        if top < 0:
            raise ParseError("top weight must be non-negative", header_line)
        body = 5
    return num_vars, num_clauses, top, body


def _check_tail(tokens: list[tuple[str, int]], start: int) -> None:
    """After the final declared clause only '%' / '0' filler lines may follow."""
    for tok, line in tokens[start:]:
        if tok not in ("%", "0"):
            raise ParseError("content after the declared number of clauses", line)


def parse_cnf(source: str | bytes) -> Formula:
    """Parse DIMACS CNF text into a Formula with unit weights and no hard clauses."""
    tokens = _numbered_tokens(_decode(source))
    num_vars, num_clauses, _, pos = _parse_header(tokens, "cnf")
    clauses: list[Clause] = []
    lits: list[Literal] = []
    last_line = tokens[pos - 1][1] if tokens else 1
    while pos < len(tokens):
        tok, line = tokens[pos]
        if len(clauses) == num_clauses:
            _check_tail(tokens, pos)
            break
        code = _to_int(tok, line, "literal")
        if code == 0:
            if not lits:
                raise ParseError("empty clause", line)
            clauses.append(Clause(tuple(lits)))
            lits = []
        else:
            if abs(code) > num_vars:
                raise ParseError(
                    f"variable {abs(code)} exceeds declared count {num_vars}", line
                )
            lits.append(Literal.from_dimacs(code))
        last_line = line
        pos += 1
    if lits:
        raise ParseError("unterminated clause at end of input", last_line)
    if len(clauses) != num_clauses:
        raise ParseError(
            f"header declares {num_clauses} clauses, found {len(clauses)}", last_line
        )
    return Formula(num_vars, tuple(clauses))


def parse_wcnf(source: str | bytes) -> Formula:
    """Parse DIMACS WCNF text; clauses with weight == top are marked hard."""
    tokens = _numbered_tokens(_decode(source))
    num_vars, num_clauses, top, pos = _parse_header(tokens, "wcnf")
    clauses: list[Clause] = []
    weight: int | None = None
    lits: list[Literal] = []
    last_line = tokens[pos - 1][1] if tokens else 1
    while pos < len(tokens):
        tok, line = tokens[pos]
        if len(clauses) == num_clauses:
            _check_tail(tokens, pos)
            break
        if weight is None:
            weight = _to_int(tok, line, "clause weight")
            if weight < 0:
                raise ParseError(f"negative clause weight {weight}", line)
            if top is not None and weight > top:
                raise ParseError(f"clause weight {weight} exceeds top {top}", line)
        else:
            code = _to_int(tok, line, "literal")
            if code == 0:
                if not lits:
                    raise ParseError("empty clause", line)
                hard = top is not None and weight == top
                clauses.append(Clause(tuple(lits), weight, hard))
                weight = None
                lits = []
            else:
                if abs(code) > num_vars:
                    raise ParseError(
                        f"variable {abs(code)} exceeds declared count {num_vars}", line
                    )
                lits.append(Literal.from_dimacs(code))
        last_line = line
        pos += 1
    if weight is not None or lits:
        raise ParseError("unterminated clause at end of input", last_line)
    if len(clauses) != num_clauses:
        raise ParseError(
            f"header declares {num_clauses} clauses, found {len(clauses)}", last_line
        )
    return Formula(num_vars, tuple(clauses), top_weight=top)


def parse_dimacs(source: str | bytes) -> Formula:
    """Parse CNF or WCNF, dispatching on the header kind."""
    text = _decode(source)
    tokens = _numbered_tokens(text)
    if len(tokens) >= 2 and tokens[0][0] == "p" and tokens[1][0] == "wcnf":
        return parse_wcnf(text)
    return parse_cnf(text)


def classify(f: Formula) -> ProblemClass:
    """Structural problem class: presence of hard clauses and non-unit soft weights."""
    any_hard = any(c.hard for c in f.clauses)
    soft_unit = all(c.weight == 1 for c in f.clauses if not c.hard)
    if any_hard:
        if soft_unit:
            return ProblemClass.PARTIAL_MAXSAT
        return ProblemClass.WEIGHTED_PARTIAL_MAXSAT
    if soft_unit:
        return ProblemClass.MAXSAT
    return ProblemClass.WEIGHTED_MAXSAT


def check_hard_weight_rule(f: Formula) -> bool:
    """True iff every hard clause outweighs the sum of all soft clause weights."""
    soft_sum = sum(c.weight for c in f.clauses if not c.hard)
    return all(c.weight > soft_sum for c in f.clauses if c.hard)


def generate_random(
    n: int,
    m: int,
    k: int,
    weighted: bool = False,
    hard_count: int = 0,
    seed: int = 0,
) -> Formula:
    """Random k-SAT style instance: k distinct variables per clause, each negated
    with probability 0.5.

    Weighted instances draw soft weights uniformly from the integers 0..1000.
    The first ``hard_count`` clauses are hard; they share a weight of one more
    than the total soft weight, which also serves as the top weight.
    Bit-reproducible for a fixed seed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, n], got k={k} with n={n}")
    if not 0 <= hard_count <= m:
        raise ValueError("hard_count must be in [0, m]")
    rng = random.Random(seed)
    shapes = []
    for _ in range(m):
        chosen = rng.sample(range(1, n + 1), k)
        shapes.append(tuple(Literal(v, rng.random() < 0.5) for v in chosen))
    soft_count = m - hard_count
    if weighted:
        soft_weights = [rng.randint(0, 1000) for _ in range(soft_count)]
    else:
        soft_weights = [1] * soft_count
    top = sum(soft_weights) + 1 if hard_count else None
    clauses = []
    for i, lits in enumerate(shapes):
        if i < hard_count:
            clauses.append(Clause(lits, top, True))
        else:
            clauses.append(Clause(lits, soft_weights[i - hard_count], False))
    return Formula(n, tuple(clauses), top_weight=top)


def write_dimacs(f: Formula) -> str:
    """Serialize in canonical one-clause-per-line form.

    Formulas with unit weights, no top and no hard clauses come out as CNF,
    everything else as WCNF (top emitted only when set).
    """
    plain = f.top_weight is None and all(
        c.weight == 1 and not c.hard for c in f.clauses
    )
    lines = []
    if plain:
        lines.append(f"p cnf {f.num_vars} {f.num_clauses}")
        for c in f.clauses:
            lines.append(" ".join(str(l.to_dimacs()) for l in c.literals) + " 0")
    else:
        header = f"p wcnf {f.num_vars} {f.num_clauses}"
        if f.top_weight is not None:
            header += f" {f.top_weight}"
        lines.append(header)
        for c in f.clauses:
            body = " ".join(str(l.to_dimacs()) for l in c.literals)
            lines.append(f"{c.weight} {body} 0")
    return "\n".join(lines) + "\n"
