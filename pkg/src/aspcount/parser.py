"""Text format for ground normal programs.

Grammar (the external contract; files conventionally use the .gnp suffix):

    program   := { statement }
    statement := (atom [ ":-" body ] | ":-" body) "."
    body      := literal { "," literal }
    literal   := [ "not" ws ] atom
    atom      := ident [ "(" balanced-args ")" ]
    comment   := "%" ... end-of-line

Identifiers match [a-zA-Z_][a-zA-Z0-9_]*; whitespace between tokens is
insignificant; `not` is reserved. Parenthesized arguments are opaque: the
whole token "edge(1,2)" is one atom symbol, with no term structure.
Duplicate statements are dropped (a program is a set of rules).
"""

from __future__ import annotations

from dataclasses import dataclass

from .program import Constraint, Program, Rule, SymbolTable, format_constraint, format_rule

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str

    def __str__(self):
        return f"line {self.line}, column {self.column}: {self.message}"


class ParseError(Exception):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


class _Scanner:
    """Produces (kind, text, line, col) tokens; kinds: ATOM NOT ARROW COMMA DOT EOF."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _fail(self, message, line=None, col=None):
        raise ParseError(ParseDiagnostic(line or self.line, col or self.col, message))

    def _advance(self, n=1):
        for _ in range(n):
            if self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _skip_space(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "%":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            elif ch.isspace():
                self._advance()
            else:
                return

    def next_token(self):
        self._skip_space()
        if self.pos >= len(self.text):
            return ("EOF", "", self.line, self.col)
        line, col = self.line, self.col
        ch = self.text[self.pos]
        if ch == ".":
            self._advance()
            return ("DOT", ".", line, col)
        if ch == ",":
            self._advance()
            return ("COMMA", ",", line, col)
        if ch == ":":
            if self.text[self.pos : self.pos + 2] == ":-":
                self._advance(2)
                return ("ARROW", ":-", line, col)
            self._fail("expected ':-'", line, col)
        if ch in _IDENT_START:
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] in _IDENT_CONT:
                self._advance()
            ident = self.text[start : self.pos]
            if ident == "not":
                return ("NOT", ident, line, col)
            if self.pos < len(self.text) and self.text[self.pos] == "(":
                depth = 0
                while self.pos < len(self.text):
                    c = self.text[self.pos]
                    if c == "(":
                        depth += 1
                    elif c == ")":
                        depth -= 1
                    self._advance()
                    if depth == 0:
                        break
                else:
                    self._fail("unbalanced '(' in atom arguments", line, col)
                return ("ATOM", self.text[start : self.pos], line, col)
            return ("ATOM", ident, line, col)
        self._fail(f"unexpected character {ch!r}", line, col)


class _Parser:
    def __init__(self, text: str):
        self.scanner = _Scanner(text)
        self.tok = self.scanner.next_token()

    def _fail(self, message):
        kind, text, line, col = self.tok
        raise ParseError(ParseDiagnostic(line, col, message))

    def _next(self):
        self.tok = self.scanner.next_token()

    def _expect(self, kind, what):
        if self.tok[0] != kind:
            self._fail(f"expected {what}, got {self.tok[1]!r}" if self.tok[1] else f"expected {what}, got end of input")
        text = self.tok[1]
        self._next()
        return text

    def _atom(self, table: SymbolTable) -> int:
        if self.tok[0] == "NOT":
            self._fail("'not' before 'not' / 'not' is not an atom")
        return table.intern(self._expect("ATOM", "an atom"))

    def _body(self, table: SymbolTable):
        pos, neg = set(), set()
        while True:
            if self.tok[0] == "NOT":
                self._next()
                neg.add(self._atom(table))
            else:
                pos.add(self._atom(table))
            if self.tok[0] != "COMMA":
                return frozenset(pos), frozenset(neg)
            self._next()

    def parse(self) -> Program:
        table = SymbolTable()
        rules: list[Rule] = []
        constraints: list[Constraint] = []
        seen_rules, seen_constraints = set(), set()
        while self.tok[0] != "EOF":
            if self.tok[0] == "ARROW":
                self._next()
                pos, neg = self._body(table)
                self._expect("DOT", "'.' at end of statement")
                if (pos, neg) not in seen_constraints:
                    seen_constraints.add((pos, neg))
                    constraints.append(Constraint(pos, neg))
                continue
            head = self._atom(table)
            pos, neg = frozenset(), frozenset()
            if self.tok[0] == "ARROW":
                self._next()
                pos, neg = self._body(table)
            self._expect("DOT", "'.' at end of statement")
            key = (head, pos, neg)
            if key not in seen_rules:
                seen_rules.add(key)
                rules.append(Rule(head, pos, neg))
        return Program(table, rules, constraints)


def parse_program(text: str) -> Program:
    """Parse program text; raises ParseError carrying a ParseDiagnostic."""
    return _Parser(text).parse()


def render_program(program: Program) -> str:
    """One statement per line; parse_program(render_program(p)) is isomorphic to p."""
    lines = [format_rule(program, r) for r in program.rules]
    lines += [format_constraint(program, c) for c in program.constraints]
    return "\n".join(lines) + ("\n" if lines else "")
