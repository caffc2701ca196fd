"""Shared test utilities: fixture programs, random generators, slow oracles."""

from __future__ import annotations

import itertools
import random

from aspcount.encode import VarKind
from aspcount.oracle import residual
from aspcount.program import Constraint, Program, Rule, SymbolTable

EXAMPLE1 = """\
a :- not b.
b :- not a.
c :- a, b.
c :- d.
d :- a.
d :- b, c.
e :- not a, not b.
"""


def random_program(rng: random.Random, max_atoms=8, max_rules=14) -> Program:
    """Small random program; roughly half the draws get a seeded positive
    cycle so non-tight cases stay plentiful."""
    n = rng.randint(2, max_atoms)
    table = SymbolTable()
    ids = [table.intern(f"a{i}") for i in range(n)]
    rules = []
    if rng.random() < 0.55:
        k = rng.randint(2, min(3, n))
        cyc = rng.sample(ids, k)
        for i, x in enumerate(cyc):
            guard = frozenset(rng.sample(ids, rng.randint(0, 1)))
            rules.append(Rule(x, frozenset({cyc[(i + 1) % k]}), guard))
    for _ in range(rng.randint(1, max_rules)):
        head = rng.choice(ids)
        if rng.random() < 0.15:
            rules.append(Rule(head, frozenset(), frozenset()))
            continue
        pos = frozenset(rng.sample(ids, rng.randint(0, 2)))
        neg = frozenset(rng.sample(ids, rng.randint(0, 2)))
        rules.append(Rule(head, pos, neg))
    constraints = []
    if rng.random() < 0.35:
        for _ in range(rng.randint(1, 2)):
            pos = frozenset(rng.sample(ids, rng.randint(0, 2)))
            neg = frozenset(rng.sample(ids, rng.randint(0, 2)))
            if pos or neg:
                constraints.append(Constraint(pos, neg))
    return Program(table, rules, constraints)


def disjoint_union(p1: Program, p2: Program) -> Program:
    """Union with atoms renamed apart (prefixes q1_/q2_)."""
    table = SymbolTable()
    maps = []
    for prefix, p in (("q1_", p1), ("q2_", p2)):
        maps.append({a: table.intern(prefix + p.symbol(a)) for a in range(p.n_atoms)})
    rules, constraints = [], []
    for mapping, p in zip(maps, (p1, p2)):
        for r in p.rules:
            rules.append(
                Rule(
                    mapping[r.head],
                    frozenset(mapping[a] for a in r.pos_body),
                    frozenset(mapping[a] for a in r.neg_body),
                )
            )
        for c in p.constraints:
            constraints.append(
                Constraint(
                    frozenset(mapping[a] for a in c.pos),
                    frozenset(mapping[a] for a in c.neg),
                )
            )
    return Program(table, rules, constraints)


def satisfies_completion(program: Program, m: frozenset[int]) -> bool:
    """Auxiliary-free semantic completion check: each atom holds iff one of
    its (satisfiable) bodies holds, and no constraint fires."""
    for atom in range(program.n_atoms):
        supported = any(
            r.head == atom
            and not r.body_unsatisfiable
            and r.pos_body <= m
            and not (r.neg_body & m)
            for r in program.rules
        )
        if (atom in m) != supported:
            return False
    return not any(c.pos <= m and not (c.neg & m) for c in program.constraints)


def extends_to_completion_model(pair, program, m: frozenset[int]) -> bool:
    """True iff the atom assignment for m, extended over the body-auxiliary
    variables by evaluating their bodies, satisfies every completion clause."""
    values = {}
    for info in pair.vars.infos:
        if info.kind is VarKind.ORIGINAL:
            values[info.index] = info.index in m
        elif info.kind is VarKind.BODY_AUX:
            r = program.rules[info.origin]
            values[info.index] = r.pos_body <= m and not (r.neg_body & m)
    return all(
        any(values[abs(l) - 1] == (l > 0) for l in clause)
        for clause in pair.completion
    )


def copy_clauses_discharge(pair, m: frozenset[int]) -> bool:
    tau = {a: (a in m) for a in range(pair.n_original)}
    return len(residual(pair.copy_clauses, tau).clauses) == 0


def graph_ham_count(graph) -> int:
    """Directed Hamiltonian cycles by permutation enumeration."""
    n = graph.n_nodes
    count = 0
    for perm in itertools.permutations(range(1, n)):
        cycle = (0,) + perm
        if all((cycle[i], cycle[(i + 1) % n]) in graph.edges for i in range(n)):
            count += 1
    return count


def graph_reach_count(graph, source, target) -> int:
    """Subsets of intermediate nodes under which target stays reachable."""
    inter = [v for v in range(graph.n_nodes) if v not in (source, target)]
    count = 0
    for bits in range(1 << len(inter)):
        alive = {source, target} | {v for i, v in enumerate(inter) if bits >> i & 1}
        seen = {source}
        frontier = [source]
        while frontier:
            u = frontier.pop()
            for x, y in graph.edges:
                if x == u and y in alive and y not in seen:
                    seen.add(y)
                    frontier.append(y)
        if target in seen:
            count += 1
    return count
