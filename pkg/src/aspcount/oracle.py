"""Independent ground-truth implementations used to check the engine.

Everything here is deliberately naive and shares no machinery with the
search engine: reduct + least-model answer-set checking, exhaustive
counting, and a reference residual/unit-propagation evaluator.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .encode import Cnf, var_of
from .errors import ResourceLimitError
from .program import AtomId, Program

DEFAULT_ATOM_CAP = 24


def gl_reduct(program: Program, m: Iterable[AtomId]) -> list[tuple[AtomId, frozenset[AtomId]]]:
    """Positive program: keep rules whose negative body misses M, drop the
    negative body. Constraints are not part of the reduct (checked separately)."""
    m = frozenset(m)
    return [
        (r.head, r.pos_body)
        for r in program.rules
        if not (r.neg_body & m)
    ]


def least_model(positive_rules: list[tuple[AtomId, frozenset[AtomId]]]) -> frozenset[AtomId]:
    derived: set[AtomId] = set()
    pending = list(positive_rules)
    changed = True
    while changed:
        changed = False
        rest = []
        for head, pos in pending:
            if pos <= derived:
                if head not in derived:
                    derived.add(head)
                    changed = True
            else:
                rest.append((head, pos))
        pending = rest
    return frozenset(derived)


def violates_constraints(program: Program, m: frozenset[AtomId]) -> bool:
    return any(c.pos <= m and not (c.neg & m) for c in program.constraints)


def is_answer_set(program: Program, m: Iterable[AtomId]) -> bool:
    m = frozenset(m)
    if violates_constraints(program, m):
        return False
    return least_model(gl_reduct(program, m)) == m


def brute_force_count(program: Program, cap: int = DEFAULT_ATOM_CAP) -> int:
    """Exhaustively test all 2^n interpretations."""
    n = program.n_atoms
    if n > cap:
        raise ResourceLimitError(f"{n} atoms exceeds the oracle cap of {cap}")
    count = 0
    for bits in range(1 << n):
        m = frozenset(a for a in range(n) if bits >> a & 1)
        if is_answer_set(program, m):
            count += 1
    return count


def residual(cnf: Cnf, assignment: Mapping[int, bool]) -> Cnf:
    """Reference unit propagation of a partial assignment on a clause list.

    Satisfied clauses are removed, false literals are shrunk away, and
    derived unit clauses act as further assignments, to fixpoint. Returns
    the surviving clauses (duplicates kept: residual comparisons are over
    multisets). A conflict yields a single empty clause.
    """
    values: dict[int, bool] = dict(assignment)
    work = [list(c) for c in cnf.clauses]
    while True:
        survivors = []
        units: list[int] = []
        for clause in work:
            keep = []
            satisfied = False
            for l in clause:
                val = values.get(var_of(l))
                if val is None:
                    keep.append(l)
                elif val == (l > 0):
                    satisfied = True
                    break
            if satisfied:
                continue
            if not keep:
                return Cnf([()])
            if len(keep) == 1:
                units.append(keep[0])
            survivors.append(keep)
        consistent_units = {}
        for l in units:
            v = var_of(l)
            if consistent_units.get(v, l > 0) != (l > 0):
                return Cnf([()])
            consistent_units[v] = l > 0
        if not consistent_units:
            out = sorted(
                tuple(sorted(c, key=lambda l: (abs(l), l > 0))) for c in survivors
            )
            return Cnf(out)
        values.update(consistent_units)
        work = survivors
