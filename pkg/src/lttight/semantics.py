"""Finite first-order interpretations, grounding, reducts, and
stable/supported/tight-on checks.

Universe elements are canonical ids ``0 .. m-1`` rendered as
``e0, e1, ...`` in output.  Interpretations need not be Herbrand: the
constant map may identify distinct constants.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from itertools import combinations, product
from random import Random
from typing import Iterator, Optional

from .completion import desugar
from .syntax import (
    BASIC, CONSTRAINT, Atom, Bot, And, Equality, Exists, Forall, Implies,
    ObjectConstant, Or, Program, Signature, Variable,
)

DEFAULT_ENUMERATION_CEILING = 2_000_000
DEFAULT_STABILITY_CAP = 24


class ResourceGuardError(Exception):
    """Raised when a requested search exceeds the configured ceiling."""


def _guard_ceiling(default: int = DEFAULT_ENUMERATION_CEILING) -> int:
    value = os.environ.get("LT_TIGHT_GUARD_CEILING")
    if value:
        return int(value)
    return default


# ---------------------------------------------------------------------------
# Ground formulas

@dataclass(frozen=True)
class GBot:
    pass


@dataclass(frozen=True)
class GAtom:
    predicate: str
    args: tuple = ()


@dataclass(frozen=True)
class GAnd:
    items: tuple = ()


@dataclass(frozen=True)
class GOr:
    items: tuple = ()


@dataclass(frozen=True)
class GImplies:
    left: object
    right: object


G_BOT = GBot()
G_TOP = GAnd(())


@dataclass(frozen=True)
class GroundRule:
    head: GAtom
    body: object


@dataclass(frozen=True)
class GroundProgram:
    rules: tuple  # tuple[GroundRule, ...]


def _elem(e: int) -> str:
    return f"e{e}"


def ground_to_str(g) -> str:
    if isinstance(g, GBot):
        return "false"
    if isinstance(g, GAtom):
        if g.args:
            return f"{g.predicate}({', '.join(_elem(e) for e in g.args)})"
        return g.predicate
    if isinstance(g, GAnd):
        if not g.items:
            return "true"
        return "(" + " & ".join(ground_to_str(x) for x in g.items) + ")"
    if isinstance(g, GOr):
        if not g.items:
            return "false"
        return "(" + " | ".join(ground_to_str(x) for x in g.items) + ")"
    if isinstance(g, GImplies):
        return f"({ground_to_str(g.left)} -> {ground_to_str(g.right)})"
    raise TypeError(f"not a ground formula: {g!r}")


# ---------------------------------------------------------------------------
# Interpretations

@dataclass(frozen=True)
class Interpretation:
    universe: int
    consts: tuple       # tuple[(name, element), ...] sorted by name
    extensions: tuple   # tuple[(predicate, tuple[tuple[int,...], ...]), ...]

    def const(self, name: str) -> int:
        for n, e in self.consts:
            if n == name:
                return e
        raise KeyError(name)

    def extension(self, predicate: str) -> frozenset:
        for p, tuples in self.extensions:
            if p == predicate:
                return frozenset(tuples)
        raise KeyError(predicate)

    def true_atoms(self) -> frozenset:
        out = set()
        for p, tuples in self.extensions:
            for t in tuples:
                out.add(GAtom(p, t))
        return frozenset(out)

    def literal(self) -> str:
        parts = [f"universe={self.universe}"]
        for name, e in self.consts:
            parts.append(f"{name}={_elem(e)}")
        for p, tuples in self.extensions:
            body = ",".join("(" + ",".join(_elem(e) for e in t) + ")"
                            for t in sorted(tuples))
            parts.append(f"{p}={{{body}}}")
        return "; ".join(parts)


def make_interpretation(universe: int, consts: dict, extensions: dict) -> Interpretation:
    return Interpretation(
        universe=universe,
        consts=tuple(sorted(consts.items())),
        extensions=tuple(sorted(
            (p, tuple(sorted(tuple(t) for t in ts))) for p, ts in extensions.items())),
    )


_LITERAL_ELEM = re.compile(r"e(\d+)$")


def parse_interpretation(text: str) -> Interpretation:
    """Parse the interpretation literal format, e.g.
    ``universe=2; a=e0; b=e1; p={(e0),(e1)}; q={(e1)}``."""
    parts = [p.strip() for p in text.strip().split(";") if p.strip()]
    if not parts or not parts[0].startswith("universe="):
        raise ValueError("interpretation literal must start with universe=<m>")
    universe = int(parts[0].split("=", 1)[1])
    consts: dict = {}
    extensions: dict = {}

    def elem(s: str) -> int:
        m = _LITERAL_ELEM.match(s.strip())
        if not m:
            raise ValueError(f"bad element name {s!r}")
        e = int(m.group(1))
        if not 0 <= e < universe:
            raise ValueError(f"element {s!r} outside universe of size {universe}")
        return e

    for part in parts[1:]:
        name, _, rhs = part.partition("=")
        name = name.strip()
        rhs = rhs.strip()
        if rhs.startswith("{"):
            if not rhs.endswith("}"):
                raise ValueError(f"bad extension for {name}")
            inner = rhs[1:-1].strip()
            tuples = []
            if inner:
                for m in re.finditer(r"\(([^)]*)\)", inner):
                    fields = [f for f in m.group(1).split(",") if f.strip()]
                    tuples.append(tuple(elem(f) for f in fields))
            extensions[name] = tuples
        else:
            consts[name] = elem(rhs)
    return make_interpretation(universe, consts, extensions)


# ---------------------------------------------------------------------------
# Enumeration and sampling

def interpretation_count(sig: Signature, m: int) -> int:
    count = m ** len(sig.constants)
    for _, arity in sig.predicates:
        count *= 2 ** (m ** arity)
    return count


def enumerate_interpretations(sig: Signature, m: int,
                              ceiling: Optional[int] = None) -> Iterator[Interpretation]:
    """All interpretations with universe 0..m-1, in deterministic
    lexicographic order.  Refuses when the state count exceeds the
    guard ceiling (see LT_TIGHT_GUARD_CEILING); use sampling instead."""
    if m < 1:
        raise ValueError("universe size must be at least 1")
    limit = ceiling if ceiling is not None else _guard_ceiling()
    total = interpretation_count(sig, m)
    if total > limit:
        raise ResourceGuardError(
            f"{total} interpretations at universe size {m} exceeds the "
            f"ceiling of {limit}; use sampling mode")
    const_names = list(sig.constants)
    pred_tuples = [(p, list(product(range(m), repeat=arity)))
                   for p, arity in sig.predicates]
    ext_choices = []
    for p, tuples in pred_tuples:
        subsets = []
        for mask in range(2 ** len(tuples)):
            subsets.append([t for i, t in enumerate(tuples) if mask >> i & 1])
        ext_choices.append(subsets)
    for cvals in product(range(m), repeat=len(const_names)):
        consts = dict(zip(const_names, cvals))
        for chosen in product(*ext_choices):
            extensions = {p: subset for (p, _), subset in zip(pred_tuples, chosen)}
            yield make_interpretation(m, consts, extensions)


def sample_interpretation(sig: Signature, m: int, rng: Random) -> Interpretation:
    """One random interpretation: uniform constant map, each extension
    tuple included independently with probability 1/2."""
    consts = {name: rng.randrange(m) for name in sig.constants}
    extensions = {}
    for p, arity in sig.predicates:
        extensions[p] = [t for t in product(range(m), repeat=arity)
                         if rng.random() < 0.5]
    return make_interpretation(m, consts, extensions)


# ---------------------------------------------------------------------------
# Grounding

class GroundingError(Exception):
    pass


def _term_value(t, interp: Interpretation, env: dict) -> int:
    if isinstance(t, Variable):
        if t not in env:
            raise GroundingError(f"unbound variable {t.name}")
        return env[t]
    try:
        return interp.const(t.name)
    except KeyError:
        raise GroundingError(f"constant {t.name} is not mapped by the interpretation")


def ground(f, interp: Interpretation, env: Optional[dict] = None):
    """Translate a sentence into a ground formula over element names.

    Equalities become true/false via the constant map; quantifiers become
    finite conjunctions/disjunctions over the universe."""
    env = env or {}
    if isinstance(f, Bot):
        return G_BOT
    if isinstance(f, Atom):
        return GAtom(f.predicate,
                     tuple(_term_value(t, interp, env) for t in f.args))
    if isinstance(f, Equality):
        same = _term_value(f.left, interp, env) == _term_value(f.right, interp, env)
        return G_TOP if same else G_BOT
    if isinstance(f, And):
        return GAnd((ground(f.left, interp, env), ground(f.right, interp, env)))
    if isinstance(f, Or):
        return GOr((ground(f.left, interp, env), ground(f.right, interp, env)))
    if isinstance(f, Implies):
        return GImplies(ground(f.left, interp, env), ground(f.right, interp, env))
    if isinstance(f, (Forall, Exists)):
        items = []
        for e in range(interp.universe):
            env2 = dict(env)
            env2[f.var] = e
            items.append(ground(f.body, interp, env2))
        return GAnd(tuple(items)) if isinstance(f, Forall) else GOr(tuple(items))
    raise TypeError(f"not a formula: {f!r}")


def ground_program(prog: Program, interp: Interpretation):
    """Ground a desugared program, producing both the rule view (for
    supportedness and parent relations) and the single formula view (for
    reducts and minimality)."""
    rules = []
    conjuncts = []
    for r in prog.rules:
        if r.kind not in (BASIC, CONSTRAINT):
            raise ValueError("ground_program requires a desugared program")
        free = r.free_vars()
        for values in product(range(interp.universe), repeat=len(free)):
            env = dict(zip(free, values))
            body = ground(r.body, interp, env)
            if r.kind == BASIC:
                head = GAtom(r.head.predicate,
                             tuple(_term_value(t, interp, env) for t in r.head.args))
                rules.append(GroundRule(head, body))
                conjuncts.append(GImplies(body, head))
            else:
                conjuncts.append(GImplies(body, G_BOT))
    return GroundProgram(tuple(rules)), GAnd(tuple(conjuncts))


# ---------------------------------------------------------------------------
# Satisfaction, reduct, stability

def satisfies(j, g) -> bool:
    """Classical propositional satisfaction; j is a set of ground atoms."""
    if isinstance(g, GBot):
        return False
    if isinstance(g, GAtom):
        return g in j
    if isinstance(g, GAnd):
        return all(satisfies(j, x) for x in g.items)
    if isinstance(g, GOr):
        return any(satisfies(j, x) for x in g.items)
    if isinstance(g, GImplies):
        return not satisfies(j, g.left) or satisfies(j, g.right)
    raise TypeError(f"not a ground formula: {g!r}")


def reduct(g, j):
    """Ferraris-style reduct: every subformula not satisfied by j
    collapses to false."""
    if not satisfies(j, g):
        return G_BOT
    if isinstance(g, GAtom):
        return g
    if isinstance(g, GAnd):
        return GAnd(tuple(reduct(x, j) for x in g.items))
    if isinstance(g, GOr):
        return GOr(tuple(reduct(x, j) for x in g.items))
    if isinstance(g, GImplies):
        return GImplies(reduct(g.left, j), reduct(g.right, j))
    raise TypeError(f"not a ground formula: {g!r}")


def _atom_key(a: GAtom):
    return (a.predicate, a.args)


def is_stable(g, j, cap: int = DEFAULT_STABILITY_CAP) -> bool:
    """True iff j satisfies the reduct of g relative to j and no proper
    subset of j does.  Minimality is checked by exhaustive subset
    enumeration in increasing cardinality with early exit."""
    j = frozenset(j)
    if not satisfies(j, g):
        return False
    r = reduct(g, j)
    atoms = sorted(j, key=_atom_key)
    if len(atoms) > cap:
        raise ResourceGuardError(
            f"minimality check over {len(atoms)} atoms exceeds the cap of {cap}")
    for size in range(len(atoms)):
        for subset in combinations(atoms, size):
            if satisfies(frozenset(subset), r):
                return False
    return True


def satisfies_fo(interp: Interpretation, sentence) -> bool:
    """First-order satisfaction, via grounding."""
    return satisfies(interp.true_atoms(), ground(sentence, interp))


def is_sm_model(prog: Program, interp: Interpretation,
                cap: int = DEFAULT_STABILITY_CAP) -> bool:
    """Whether the interpretation is a stable model of the program.

    The program is desugared (choice rules and extensional predicates
    become double-negation rules), grounded relative to the
    interpretation, and checked for stability of its atom set."""
    d = desugar(prog)
    _, gf = ground_program(d, interp)
    return is_stable(gf, interp.true_atoms(), cap)


# ---------------------------------------------------------------------------
# Supportedness, Pnn/Nnn, tightness on an interpretation

def is_supported(gp: GroundProgram, j) -> bool:
    """Every atom of j heads some rule whose body j satisfies."""
    j = frozenset(j)
    for a in j:
        if not any(r.head == a and satisfies(j, r.body) for r in gp.rules):
            return False
    return True


def pnn_nnn(g):
    """Positive-nonnegated and negative-nonnegated atom sets of a ground
    formula; implications with a false consequent contribute nothing."""
    if isinstance(g, GBot):
        return frozenset(), frozenset()
    if isinstance(g, GAtom):
        return frozenset([g]), frozenset()
    if isinstance(g, (GAnd, GOr)):
        pos: frozenset = frozenset()
        negs: frozenset = frozenset()
        for x in g.items:
            p, n = pnn_nnn(x)
            pos |= p
            negs |= n
        return pos, negs
    if isinstance(g, GImplies):
        if g.right == G_BOT:
            return frozenset(), frozenset()
        lp, ln = pnn_nnn(g.left)
        rp, rn = pnn_nnn(g.right)
        return ln | rp, lp | rn
    raise TypeError(f"not a ground formula: {g!r}")


def pnn(g) -> frozenset:
    return pnn_nnn(g)[0]


def is_tight_on(gp: GroundProgram, j) -> bool:
    """Acyclicity of the parent relation: A' is a parent of A when some
    rule with head A has a body satisfied by j in which A' occurs as a
    positive nonnegated atom.  For finite j an infinite descending
    sequence is exactly a reachable cycle."""
    j = frozenset(j)
    parents: dict = {a: set() for a in j}
    for r in gp.rules:
        if r.head in j and satisfies(j, r.body):
            parents[r.head] |= pnn(r.body) & j
    # iterative DFS, white/grey/black
    color = {a: 0 for a in j}
    for start in j:
        if color[start] != 0:
            continue
        stack = [(start, iter(sorted(parents[start], key=_atom_key)))]
        color[start] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 1:
                    return False
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(sorted(parents[nxt], key=_atom_key))))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
    return True
