import itertools
import random

from aspcount import (
    brute_force_count,
    build_pair,
    count,
    emit_dimacs,
    gen_choice_chain,
    is_answer_set,
    parse_program,
)
from aspcount.encode import VarKind, neg_lit, pos_lit

from helpers import (
    EXAMPLE1,
    copy_clauses_discharge,
    extends_to_completion_model,
    random_program,
    satisfies_completion,
)


def _clause(*lits):
    return tuple(sorted(lits, key=lambda l: (abs(l), l > 0)))


def test_single_rule_atom_clauses_match_truth_table():
    pair = build_pair(parse_program(EXAMPLE1))
    a, b, e = 0, 1, 4
    involved = [c for c in pair.completion if any(abs(l) - 1 == e for l in c)]
    expected = {
        _clause(neg_lit(e), neg_lit(a)),
        _clause(neg_lit(e), neg_lit(b)),
        _clause(pos_lit(e), pos_lit(a), pos_lit(b)),
    }
    assert set(involved) == expected
    # independent check: those clauses define e <-> (not a and not b)
    for va, vb, ve in itertools.product([False, True], repeat=3):
        val = {a: va, b: vb, e: ve}
        sat = all(
            any(val[abs(l) - 1] == (l > 0) for l in clause) for clause in expected
        )
        assert sat == (ve == ((not va) and (not vb)))


def test_atom_without_rules_is_forced_false():
    pair = build_pair(parse_program("a :- b."))
    b = 1
    assert _clause(neg_lit(b)) in pair.completion.clauses


def test_fact_yields_unit_clause():
    pair = build_pair(parse_program("a."))
    assert pair.completion.clauses == [(pos_lit(0),)]


def test_copy_operation_example1_exact():
    p = parse_program(EXAMPLE1)
    pair = build_pair(p)
    a, b, c, d = (p.atoms.id_of(s) for s in "abcd")
    cp = {atom: pair.vars.copy_of_atom[atom] for atom in (c, d)}
    expected = {
        _clause(neg_lit(cp[c]), pos_lit(c)),
        _clause(neg_lit(cp[d]), pos_lit(d)),
        _clause(neg_lit(a), neg_lit(b), pos_lit(cp[c])),
        _clause(neg_lit(cp[d]), pos_lit(cp[c])),
        _clause(neg_lit(a), pos_lit(cp[d])),
        _clause(neg_lit(b), neg_lit(cp[c]), pos_lit(cp[d])),
    }
    assert set(pair.copy_clauses.clauses) == expected
    assert len(pair.copy_clauses) == 6


def test_tight_program_has_no_copy_clauses():
    pair = build_pair(parse_program("a :- not b.\nb :- not a."))
    assert len(pair.copy_clauses) == 0
    assert not pair.copy_vars


def test_self_loop_keeps_cyclic_copy_clause():
    # dropping the both-polarity clause would let a justify itself and
    # miscount a <- a as having two answer sets instead of one
    p = parse_program("a :- a.")
    pair = build_pair(p)
    cp = pair.vars.copy_of_atom[0]
    assert set(pair.copy_clauses.clauses) == {
        _clause(neg_lit(cp), pos_lit(0)),
        _clause(neg_lit(cp), pos_lit(cp)),
    }
    assert count(pair)[0] == brute_force_count(p) == 1


def test_build_pair_example1_invariants():
    pair = build_pair(parse_program(EXAMPLE1))
    assert len(pair.copy_vars) == 2
    assert len(pair.copy_clauses) == 6
    copy_vars = pair.copy_vars
    for clause in pair.completion:
        assert not any(abs(l) - 1 in copy_vars for l in clause)
    for clause in pair.copy_clauses:
        assert any(abs(l) - 1 in copy_vars for l in clause)
    kinds = [info.kind for info in pair.vars.infos]
    assert kinds.count(VarKind.ORIGINAL) == 5
    assert kinds.count(VarKind.BODY_AUX) == 2
    assert kinds.count(VarKind.COPY) == 2


def test_empty_program_pair():
    pair = build_pair(parse_program(""))
    assert len(pair.completion) == 0 and len(pair.copy_clauses) == 0
    assert emit_dimacs(pair) == "p cnf 0 0\n"


def test_choice_chain_is_pure_completion():
    pair = build_pair(gen_choice_chain(20))
    assert len(pair.copy_clauses) == 0
    assert pair.n_vars == 40  # one-literal bodies need no auxiliaries
    assert count(pair)[0] == 1 << 20


def test_emit_dimacs_example1():
    pair = build_pair(parse_program(EXAMPLE1))
    text = emit_dimacs(pair)
    lines = text.strip().split("\n")
    assert lines[0] == "c orig 1 2 3 4 5"
    assert lines[1].startswith("c aux ") and len(lines[1].split()) == 4
    assert lines[2].startswith("c copy ") and len(lines[2].split()) == 4
    header = lines[3].split()
    assert header[:2] == ["p", "cnf"]
    assert int(header[2]) == 9  # 5 originals + 2 aux + 2 copies
    n_clauses = int(header[3])
    body = lines[4:]
    assert len(body) == n_clauses == len(pair.completion) + len(pair.copy_clauses)
    assert all(line.endswith(" 0") for line in body)


def test_emit_dimacs_tight_has_no_copy_ids():
    text = emit_dimacs(build_pair(parse_program("a :- not b.\nb :- not a.")))
    assert "c copy" not in text


def test_aux_variables_preserve_model_count():
    rng = random.Random(5)
    checked = 0
    while checked < 30:
        p = random_program(rng, max_atoms=5, max_rules=8)
        pair = build_pair(p)
        if pair.n_vars - len(pair.copy_vars) > 14:
            continue
        n_f_vars = pair.n_vars - len(pair.copy_vars)
        full = 0
        for bits in range(1 << n_f_vars):
            values = {v: bool(bits >> v & 1) for v in range(n_f_vars)}
            if all(
                any(values[abs(l) - 1] == (l > 0) for l in clause)
                for clause in pair.completion
            ):
                full += 1
        plain = sum(
            satisfies_completion(p, frozenset(m))
            for k in range(p.n_atoms + 1)
            for m in itertools.combinations(range(p.n_atoms), k)
        )
        assert full == plain
        checked += 1


def test_answer_set_characterization_on_random_programs():
    rng = random.Random(11)
    for _ in range(50):
        p = random_program(rng, max_atoms=6)
        pair = build_pair(p)
        for bits in range(1 << p.n_atoms):
            m = frozenset(a for a in range(p.n_atoms) if bits >> a & 1)
            lhs = extends_to_completion_model(pair, p, m) and copy_clauses_discharge(
                pair, m
            )
            assert lhs == is_answer_set(p, m)
