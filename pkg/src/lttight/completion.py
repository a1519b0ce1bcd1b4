"""Program completion: definitions, completed definitions, and the
conjunction of completed definitions plus constraint sentences.

Choice rules and extensional predicates are first desugared into
double-negation rules so that the completion machinery only ever sees
basic rules and constraints.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    BASIC, BOT, CHOICE, CONSTRAINT, TOP, And, Atom, Bot, Equality, Exists,
    Forall, Implies, Or, Program, Rule, Variable, all_variables, conjoin,
    disjoin, flatten_and, neg, substitute, universal_closure,
    universal_closure_ordered,
)


@dataclass(frozen=True)
class CompletionResult:
    completed_definitions: tuple   # tuple[(predicate, sentence), ...]
    constraint_sentences: tuple    # tuple[sentence, ...]

    def definition_for(self, predicate: str):
        for p, s in self.completed_definitions:
            if p == predicate:
                return s
        raise KeyError(predicate)

    def sentences(self) -> list:
        return [s for _, s in self.completed_definitions] + list(self.constraint_sentences)


def desugar(prog: Program) -> Program:
    """Eliminate choice rules and extensional predicates.

    ``{p(t)} :- G`` becomes ``p(t) :- G & not not p(t)``; every
    extensional predicate ``q`` gets the rule ``q(X..) :- not not q(X..)``
    and is moved into the intensional set.  Constraints pass through.
    """
    rules = []
    for r in prog.rules:
        if r.kind == CHOICE:
            guard = neg(neg(r.head))
            body = guard if r.body == TOP else And(r.body, guard)
            rules.append(Rule(BASIC, r.head, body))
        else:
            rules.append(r)
    extensional = sorted(set(p for p, _ in prog.predicates) - set(prog.intensional))
    for name in extensional:
        arity = prog.arity(name)
        args = tuple(Variable(f"X{i + 1}") for i in range(arity))
        head = Atom(name, args)
        rules.append(Rule(BASIC, head, neg(neg(head))))
    return Program(
        predicates=prog.predicates,
        constants=prog.constants,
        rules=tuple(rules),
        intensional=frozenset(p for p, _ in prog.predicates),
    )


def _fresh_head_vars(prog: Program, arity: int) -> list:
    avoid = set()
    for r in prog.rules:
        avoid |= r.variables()
    names = {v.name for v in avoid}
    out = []
    i = 1
    while len(out) < arity:
        name = f"X{i}"
        if name not in names:
            out.append(Variable(name))
        i += 1
    return out


def _definition_body(prog: Program, p: str, head_vars: list):
    disjuncts = []
    for r in prog.basic_rules():
        if r.head.predicate != p:
            continue
        eqs = [Equality(x, t) for x, t in zip(head_vars, r.head.args)]
        conjuncts = list(eqs)
        if r.body != TOP:
            conjuncts.append(r.body)
        inner = conjoin(conjuncts)
        for v in reversed(r.free_vars()):
            inner = Exists(v, inner)
        disjuncts.append(inner)
    return disjoin(disjuncts)


def definition_of(prog: Program, p: str) -> Rule:
    """The definition of ``p``: one rule collecting all rules with head
    predicate ``p`` into a disjunction of existentially quantified
    equality-guarded bodies.  Requires a desugared program."""
    arity = prog.arity(p)
    head_vars = _fresh_head_vars(prog, arity)
    body = _definition_body(prog, p, head_vars)
    return Rule(BASIC, Atom(p, tuple(head_vars)), body)


def completed_definition(prog: Program, p: str):
    """Universal closure of ``p(x) <-> D`` with the biconditional expanded."""
    arity = prog.arity(p)
    head_vars = _fresh_head_vars(prog, arity)
    body = _definition_body(prog, p, head_vars)
    head = Atom(p, tuple(head_vars))
    inner = And(Implies(head, body), Implies(body, head))
    return universal_closure_ordered(inner, head_vars)


def completion(prog: Program) -> CompletionResult:
    """Completed definitions for the program's intensional predicates plus
    one sentence (the universally closed negated body) per constraint.

    The program is desugared internally; predicates that were extensional
    in the input receive no definition (their desugared definitions are
    tautologies).
    """
    d = desugar(prog)
    defs = []
    for name in sorted(prog.intensional):
        defs.append((name, completed_definition(d, name)))
    constraints = tuple(universal_closure(neg(r.body)) for r in d.constraints())
    return CompletionResult(tuple(defs), constraints)


# ---------------------------------------------------------------------------
# Equality-driven simplification

def _simplify_exists(var: Variable, body):
    conjuncts = flatten_and(body)
    for i, c in enumerate(conjuncts):
        if not isinstance(c, Equality):
            continue
        if c.left == var:
            t = c.right
        elif c.right == var:
            t = c.left
        else:
            continue
        if t == var:
            # X = X carries no binding; the rewrite requires X not in vars(t)
            continue
        rest = conjuncts[:i] + conjuncts[i + 1:]
        rest = [substitute(g, {var: t}) for g in rest]
        return conjoin(rest)
    return None


def _simplify_once(f):
    if isinstance(f, (Bot, Atom, Equality)):
        return f
    if isinstance(f, And):
        left = _simplify_once(f.left)
        right = _simplify_once(f.right)
        if left == TOP:
            return right
        if right == TOP:
            return left
        return And(left, right)
    if isinstance(f, Or):
        left = _simplify_once(f.left)
        right = _simplify_once(f.right)
        if left == BOT:
            return right
        if right == BOT:
            return left
        return Or(left, right)
    if isinstance(f, Implies):
        if f == TOP:
            return f
        return Implies(_simplify_once(f.left), _simplify_once(f.right))
    if isinstance(f, Forall):
        return Forall(f.var, _simplify_once(f.body))
    if isinstance(f, Exists):
        body = _simplify_once(f.body)
        rewritten = _simplify_exists(f.var, body)
        if rewritten is not None:
            return rewritten
        return Exists(f.var, body)
    raise TypeError(f"not a formula: {f!r}")


def simplify(f):
    """Equality-driven simplification, to a fixpoint.

    Only these rewrites are applied: ``exists X (X = t & F)`` becomes
    ``F[X := t]`` when X does not occur in t (either orientation of the
    equality); ``F & true``/``true & F`` become ``F``; ``F | false`` /
    ``false | F`` become ``F``.  The result is logically equivalent to
    the input.
    """
    while True:
        g = _simplify_once(f)
        if g == f:
            return g
        f = g


def simplify_completion(result: CompletionResult) -> CompletionResult:
    return CompletionResult(
        tuple((p, simplify(s)) for p, s in result.completed_definitions),
        tuple(simplify(s) for s in result.constraint_sentences),
    )
