"""Parser for the program and formula grammar.

One statement per ``.``:
  - ``HeadAtom :- Body.``  rule
  - ``HeadAtom.``          fact
  - ``:- Body.``           constraint
  - ``{HeadAtom} :- Body.`` / ``{HeadAtom}.``  choice rule
  - ``#extensional p/2.``  directive

Identifiers starting lowercase are constants/predicates; starting
uppercase are variables.  Body connectives: ``,``/``&``, ``|``, ``->``,
``not``, ``true``, ``false``, ``=``, ``!=``, ``forall X (F)``,
``exists X (F)``; ``<->`` is sugar for the two implications.
Precedence: ``not`` > ``&`` > ``|`` > ``->`` (right-associative).
``%`` starts a comment running to end of line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .syntax import (
    BASIC, BOT, CHOICE, CONSTRAINT, TOP, And, Atom, Equality, Exists, Forall,
    Implies, ObjectConstant, Or, Program, Rule, Variable, free_variables, iff,
    neg,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


_KEYWORDS = {"not", "true", "false", "forall", "exists"}

_TOKEN_RE = re.compile(
    r"""(?P<WS>\s+|%[^\n]*)
      | (?P<EXT>\#extensional\b)
      | (?P<IFF><->)
      | (?P<ARROW>->)
      | (?P<NEQ>!=)
      | (?P<RULEOP>:-)
      | (?P<INT>\d+)
      | (?P<IDENT>[a-z][A-Za-z0-9_]*)
      | (?P<VAR>[A-Z][A-Za-z0-9_]*)
      | (?P<PUNCT>[().,{}&|=/])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind != "WS":
            if kind == "IDENT" and value in _KEYWORDS:
                kind = "KEYWORD"
            if kind == "PUNCT":
                kind = value
            tokens.append(_Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.arities: dict = {}
        self.constants: set = set()
        self.extensional: dict = {}

    # -- token plumbing

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.peek()
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def accept(self, kind: str) -> Optional[_Token]:
        if self.peek().kind == kind:
            return self.next()
        return None

    def expect(self, kind: str, what: str = "") -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            expected = what or kind
            raise ParseError(f"expected {expected}, found {tok.value!r}",
                             tok.line, tok.col)
        return self.next()

    def error(self, message: str, tok: Optional[_Token] = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    # -- signature bookkeeping

    def record_predicate(self, name: str, arity: int, tok: _Token):
        if name in self.arities and self.arities[name] != arity:
            self.error(
                f"arity mismatch for {name}: used with {arity}, "
                f"previously {self.arities[name]}", tok)
        self.arities.setdefault(name, arity)

    # -- statements

    def parse_program(self) -> Program:
        rules = []
        while self.peek().kind != "EOF":
            if self.accept("EXT"):
                tok = self.expect("IDENT", "predicate name")
                self.expect("/")
                arity_tok = self.expect("INT", "arity")
                self.expect(".")
                self.record_predicate(tok.value, int(arity_tok.value), tok)
                self.extensional[tok.value] = int(arity_tok.value)
                continue
            rules.append(self.parse_rule())
        intensional = frozenset(self.arities) - frozenset(self.extensional)
        return Program(
            predicates=tuple(sorted(self.arities.items())),
            constants=tuple(sorted(self.constants)),
            rules=tuple(rules),
            intensional=intensional,
        )

    def parse_rule(self) -> Rule:
        if self.accept("RULEOP"):
            body = self.formula()
            self.expect(".")
            return Rule(CONSTRAINT, None, body)
        if self.accept("{"):
            head = self.head_atom()
            self.expect("}")
            body = TOP
            if self.accept("RULEOP"):
                body = self.formula()
            self.expect(".")
            return Rule(CHOICE, head, body)
        head = self.head_atom()
        body = TOP
        if self.accept("RULEOP"):
            body = self.formula()
        self.expect(".")
        return Rule(BASIC, head, body)

    def head_atom(self) -> Atom:
        tok = self.expect("IDENT", "predicate name")
        args = ()
        if self.accept("("):
            args = self.term_list()
            self.expect(")")
        self.record_predicate(tok.value, len(args), tok)
        return Atom(tok.value, args)

    def term_list(self) -> tuple:
        terms = [self.term()]
        while self.accept(","):
            terms.append(self.term())
        return tuple(terms)

    def term(self):
        tok = self.peek()
        if tok.kind == "VAR":
            self.next()
            return Variable(tok.value)
        if tok.kind == "IDENT":
            self.next()
            self.constants.add(tok.value)
            return ObjectConstant(tok.value)
        self.error(f"expected term, found {tok.value!r}")

    # -- formulas

    def formula(self):
        f = self.impl()
        while self.accept("IFF"):
            f = iff(f, self.impl())
        return f

    def impl(self):
        f = self.disj()
        if self.accept("ARROW"):
            return Implies(f, self.impl())
        return f

    def disj(self):
        f = self.conj()
        while self.accept("|"):
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek().kind in (",", "&"):
            self.next()
            f = And(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok.kind == "KEYWORD" and tok.value == "not":
            self.next()
            return neg(self.unary())
        return self.primary()

    def primary(self):
        tok = self.peek()
        if tok.kind == "KEYWORD":
            if tok.value == "true":
                self.next()
                return TOP
            if tok.value == "false":
                self.next()
                return BOT
            if tok.value in ("forall", "exists"):
                self.next()
                var_tok = self.expect("VAR", "variable")
                self.expect("(")
                body = self.formula()
                self.expect(")")
                cls = Forall if tok.value == "forall" else Exists
                return cls(Variable(var_tok.value), body)
            self.error(f"unexpected keyword {tok.value!r}")
        if tok.kind == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if tok.kind == "VAR":
            left = self.term()
            return self.equality_tail(left, tok)
        if tok.kind == "IDENT":
            self.next()
            if self.peek().kind == "(":
                self.next()
                args = self.term_list()
                self.expect(")")
                if self.peek().kind in ("=", "NEQ"):
                    self.error("atoms cannot be equated", self.peek())
                self.record_predicate(tok.value, len(args), tok)
                return Atom(tok.value, args)
            if self.peek().kind in ("=", "NEQ"):
                self.constants.add(tok.value)
                return self.equality_tail(ObjectConstant(tok.value), tok)
            self.record_predicate(tok.value, 0, tok)
            return Atom(tok.value, ())
        self.error(f"expected formula, found {tok.value!r}")

    def equality_tail(self, left, tok):
        op = self.peek()
        if op.kind == "=":
            self.next()
            return Equality(left, self.term())
        if op.kind == "NEQ":
            self.next()
            return neg(Equality(left, self.term()))
        self.error("a variable is not a formula by itself", tok)


def parse_program(text: str) -> Program:
    """Parse a program.  With no #extensional directive, every predicate
    is intensional."""
    return _Parser(text).parse_program()


def parse_formula(text: str):
    """Parse a single formula (no trailing ``.`` required)."""
    parser = _Parser(text)
    f = parser.formula()
    parser.accept(".")
    parser.expect("EOF", "end of input")
    return f


def parse_sentences(text: str) -> list:
    """Parse a ``.``-separated list of closed formulas (e.g. a Gamma file)."""
    parser = _Parser(text)
    out = []
    while parser.peek().kind != "EOF":
        tok = parser.peek()
        f = parser.formula()
        parser.expect(".")
        free = free_variables(f)
        if free:
            names = ", ".join(sorted(v.name for v in free))
            parser.error(f"sentence has free variables: {names}", tok)
        out.append(f)
    return out
