"""Occurrence polarity, dependency graphs, chains, chain formulas, and
tightness relative to a set of assumptions.

The rule dependency graph is never materialized (it is infinite up to
renaming); chains with canonical variable tags are enumerated directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .completion import CompletionResult, completion, desugar, simplify
from .semantics import (
    Interpretation, enumerate_interpretations, satisfies_fo,
)
from .syntax import (
    BASIC, BOT, TOP, And, Atom, Bot, Equality, Exists, Forall, Implies,
    ObjectConstant, Or, Program, Rule, Variable, conjoin, existential_closure,
    flatten_and, flatten_or, formula_to_str, free_variables, neg,
    rename_apart, rule_to_str, substitute, universal_closure,
)


# ---------------------------------------------------------------------------
# Occurrence polarity

@dataclass(frozen=True)
class OccurrenceInfo:
    predicate: str
    position: tuple     # path of child indices into the formula AST
    atom: Atom
    positive: bool      # even number of enclosing implication antecedents
    negated: bool       # inside a subformula of the form F -> false


def classify_occurrences(f) -> list:
    """Every atom occurrence of ``f`` labeled with polarity and
    negatedness, in traversal order.

    An occurrence is negated when it lies inside the antecedent of an
    implication whose consequent is falsity; those implications also
    count toward the antecedent parity."""
    out: list = []

    def walk(g, path, antecedents, negated):
        if isinstance(g, Atom):
            out.append(OccurrenceInfo(g.predicate, path, g,
                                      antecedents % 2 == 0, negated))
        elif isinstance(g, (And, Or)):
            walk(g.left, path + (0,), antecedents, negated)
            walk(g.right, path + (1,), antecedents, negated)
        elif isinstance(g, Implies):
            walk(g.left, path + (0,), antecedents + 1,
                 negated or g.right == BOT)
            walk(g.right, path + (1,), antecedents, negated)
        elif isinstance(g, (Forall, Exists)):
            walk(g.body, path + (0,), antecedents, negated)
        # Bot and Equality carry no atom occurrences

    walk(f, (), 0, False)
    return out


def _link_occurrences(body) -> list:
    """Positive nonnegated atom occurrences, in position order."""
    return [o for o in classify_occurrences(body) if o.positive and not o.negated]


# ---------------------------------------------------------------------------
# Predicate dependency graph and tightness

@dataclass(frozen=True)
class PredicateDependencyGraph:
    vertices: tuple   # predicate names, sorted
    edges: tuple      # tuple[(p, q, witness-rule-indices), ...] sorted

    def edge_pairs(self) -> set:
        return {(p, q) for p, q, _ in self.edges}


def predicate_dependency_graph(prog: Program) -> PredicateDependencyGraph:
    """Edge p -> q whenever a rule with head predicate p has a positive
    nonnegated occurrence of q in its body.  The program is desugared
    first."""
    d = desugar(prog)
    edges: dict = {}
    for idx, r in enumerate(d.rules):
        if r.kind != BASIC:
            continue
        for occ in _link_occurrences(r.body):
            edges.setdefault((r.head.predicate, occ.predicate), []).append(idx)
    return PredicateDependencyGraph(
        vertices=tuple(sorted(p for p, _ in prog.predicates)),
        edges=tuple(sorted((p, q, tuple(ws)) for (p, q), ws in edges.items())),
    )


def is_tight(prog: Program) -> bool:
    """True iff the predicate dependency graph has no directed cycle
    (a self-loop is a cycle)."""
    graph = predicate_dependency_graph(prog)
    succ: dict = {v: [] for v in graph.vertices}
    for p, q, _ in graph.edges:
        succ[p].append(q)
    color = {v: 0 for v in graph.vertices}

    def dfs(v) -> bool:
        color[v] = 1
        for w in succ[v]:
            if color[w] == 1:
                return False
            if color[w] == 0 and not dfs(w):
                return False
        color[v] = 2
        return True

    return all(dfs(v) for v in graph.vertices if color[v] == 0)


# ---------------------------------------------------------------------------
# Chains

@dataclass(frozen=True)
class Chain:
    rules: tuple    # renamed rules R_0 .. R_n, rule R_i carrying tag i+1
    labels: tuple   # label atoms; labels[i-1] links R_{i-1} to R_i
    rule_indices: tuple = ()

    @property
    def length(self) -> int:
        return len(self.labels)


def check_chain(c: Chain) -> None:
    """Validate the chain invariants: adjacent link condition and
    pairwise variable disjointness."""
    assert len(c.rules) == len(c.labels) + 1
    for i, label in enumerate(c.labels):
        body_occurrences = [o.atom for o in _link_occurrences(c.rules[i].body)]
        assert label in body_occurrences, "label must occur positively nonnegated"
        assert label.predicate == c.rules[i + 1].head.predicate
    seen: set = set()
    for r in c.rules:
        vs = r.variables()
        assert not (vs & seen), "chain rules must be variable-disjoint"
        seen |= vs


def chains(prog: Program, n: int) -> Iterator[Chain]:
    """All length-n chains, up to variable renaming: rule R_i carries
    canonical tag i+1 (matching the chain displays where the first rule
    uses x_1, y_1).  Deterministic order: rule index, then occurrence
    position."""
    if n < 0:
        raise ValueError("chain length must be nonnegative")
    d = desugar(prog)
    rules = [r for r in d.rules if r.kind == BASIC]
    renamed = [[rename_apart(r, tag) for r in rules] for tag in range(1, n + 2)]

    def extend(prefix: list, labels: list, indices: list) -> Iterator[Chain]:
        i = len(prefix)
        if i == n + 1:
            yield Chain(tuple(prefix), tuple(labels), tuple(indices))
            return
        if i == 0:
            for idx, r in enumerate(renamed[0]):
                yield from extend([r], [], [idx])
            return
        for occ in _link_occurrences(prefix[-1].body):
            for idx, r in enumerate(renamed[i]):
                if r.head.predicate == occ.predicate:
                    yield from extend(prefix + [r], labels + [occ.atom],
                                      indices + [idx])

    yield from extend([], [], [])


def chain_formula(c: Chain):
    """Conjunction of the link equalities s^i = t^i and all rule bodies,
    flattened left-associatively; bodies equal to truth are dropped."""
    conjuncts: list = []
    for label, rule in zip(c.labels, c.rules[1:]):
        for s, t in zip(label.args, rule.head.args):
            conjuncts.append(Equality(s, t))
    for r in c.rules:
        if r.body != TOP:
            conjuncts.extend(flatten_and(r.body))
    return conjoin(conjuncts)


def chain_to_str(c: Chain) -> str:
    lines = [rule_to_str(c.rules[0])]
    for label, rule in zip(c.labels, c.rules[1:]):
        lines.append(f"  --[{formula_to_str(label)}]-->")
        lines.append(rule_to_str(rule))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Syntactic refutation of chain formulas

class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _split_literals(conjuncts):
    pos_atoms, neg_atoms, eqs, diseqs = [], [], [], []
    for c in conjuncts:
        if isinstance(c, Atom):
            pos_atoms.append(c)
        elif isinstance(c, Equality):
            eqs.append(c)
        elif isinstance(c, Implies) and c.right == BOT:
            if isinstance(c.left, Atom):
                neg_atoms.append(c.left)
            elif isinstance(c.left, Equality):
                diseqs.append(c.left)
        # other shapes are opaque to the refuter (sound: ignoring
        # conjuncts only weakens the refutation)
    return pos_atoms, neg_atoms, eqs, diseqs


def _ground_disequalities(gamma) -> list:
    """Variable-free t != s members of Gamma (after stripping universal
    quantifiers that do not bind anything in the body)."""
    out = []
    for s in gamma:
        f = s
        while isinstance(f, Forall):
            f = f.body
        for c in flatten_and(f):
            if (isinstance(c, Implies) and c.right == BOT
                    and isinstance(c.left, Equality)
                    and not free_variables(c.left)):
                out.append(c.left)
    return out


_SUPPORTED_LITERAL = (Atom, Equality)


def _expand_atom(atom: Atom, defs: dict):
    """Instantiated completed-definition body of the atom as a list of
    disjuncts (each a list of literal conjuncts), or None when the
    definition's shape is not usable by the refuter."""
    if atom.predicate not in defs:
        return None
    head_vars, body = defs[atom.predicate]
    inst = substitute(body, dict(zip(head_vars, atom.args)))
    disjuncts = []
    for d in flatten_or(inst):
        if d == BOT:
            continue
        conjuncts = flatten_and(d)
        for c in conjuncts:
            if isinstance(c, _SUPPORTED_LITERAL):
                continue
            if (isinstance(c, Implies) and c.right == BOT
                    and isinstance(c.left, _SUPPORTED_LITERAL)):
                continue
            return None
        disjuncts.append(conjuncts)
    return disjuncts


def _refute(conjuncts, gamma_diseqs, defs, split_done: frozenset, depth: int) -> bool:
    conjuncts = list(conjuncts)
    unit_done: set = set()
    for _ in range(200):
        pos_atoms, neg_atoms, eqs, diseqs = _split_literals(conjuncts)
        uf = _UnionFind()
        for e in eqs:
            uf.union(e.left, e.right)
        for e in diseqs + gamma_diseqs:
            if uf.find(e.left) == uf.find(e.right):
                return True
        for a in pos_atoms:
            for b in neg_atoms:
                if a.predicate == b.predicate and all(
                        uf.find(s) == uf.find(t) for s, t in zip(a.args, b.args)):
                    return True
        # saturate with single-disjunct (unit) expansions
        progressed = False
        for atom in pos_atoms:
            if atom in unit_done:
                continue
            disjuncts = _expand_atom(atom, defs)
            unit_done.add(atom)
            if disjuncts is None:
                continue
            if not disjuncts:
                return True   # empty definition body: the atom is impossible
            if len(disjuncts) == 1:
                new = [c for c in disjuncts[0] if c not in conjuncts]
                if new:
                    conjuncts.extend(new)
                    progressed = True
                    break
        if not progressed:
            break
    if depth <= 0:
        return False
    # case split over multi-disjunct definitions
    pos_atoms, _, _, _ = _split_literals(conjuncts)
    for atom in pos_atoms:
        if atom in split_done:
            continue
        disjuncts = _expand_atom(atom, defs)
        if disjuncts and len(disjuncts) > 1:
            if all(_refute(conjuncts + d, gamma_diseqs, defs,
                           split_done | {atom}, depth - 1)
                   for d in disjuncts):
                return True
    return False


def refute_chain_formula(fc, gamma, comp: CompletionResult, depth: int = 4) -> bool:
    """Sound syntactic refutation of a chain formula: literal clash and
    congruence closure over the chain's equalities, with bounded
    expansion of atoms through their (simplified) completed definitions.
    Gamma contributes its ground disequalities."""
    defs = {}
    for p, sentence in comp.completed_definitions:
        f = sentence
        head_vars = []
        while isinstance(f, Forall):
            head_vars.append(f.var)
            f = f.body
        # f is (p(x) -> D) & (D -> p(x)); use the forward direction
        if isinstance(f, And) and isinstance(f.left, Implies):
            defs[p] = (head_vars, simplify(f.left.right))
    gamma_diseqs = _ground_disequalities(gamma)
    return _refute(flatten_and(fc), gamma_diseqs, defs, frozenset(), depth)


# ---------------------------------------------------------------------------
# Gamma-tightness

ENTAILED = "entailed"
COUNTERMODEL = "countermodel"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class TightnessVerdict:
    status: str
    n_used: int
    bound: int
    chain: Optional[Chain] = None
    interpretation: Optional[Interpretation] = None


def check_gamma_tight(prog: Program, gamma, n: int,
                      universe_bound: int = 2) -> TightnessVerdict:
    """Check the chain-formula entailment for every length-n chain.

    Returns ``entailed`` only when the syntactic refuter closes every
    chain; ``countermodel`` when some interpretation within the universe
    bound satisfies Gamma, the completion, and the existential closure
    of a chain formula; ``unknown`` otherwise."""
    if n < 1:
        raise ValueError("chain length must be at least 1")
    if universe_bound < 1:
        raise ValueError("universe bound must be at least 1")
    comp = completion(prog)
    open_chains = []
    for c in chains(prog, n):
        fc = chain_formula(c)
        if not refute_chain_formula(fc, gamma, comp):
            open_chains.append((c, fc))
    if not open_chains:
        return TightnessVerdict(ENTAILED, n, universe_bound)
    targets = list(gamma) + comp.sentences()
    for m in range(1, universe_bound + 1):
        for interp in enumerate_interpretations(prog.signature, m):
            if not all(satisfies_fo(interp, s) for s in targets):
                continue
            for c, fc in open_chains:
                if satisfies_fo(interp, existential_closure(fc)):
                    return TightnessVerdict(COUNTERMODEL, n, universe_bound,
                                            chain=c, interpretation=interp)
    return TightnessVerdict(UNKNOWN, n, universe_bound)


# ---------------------------------------------------------------------------
# DOT and TPTP export

def export_dot(g) -> str:
    """DOT digraph text for a predicate dependency graph or a chain
    (a rule-graph slice, with edges labeled by their witness atoms)."""
    lines = ["digraph {"]
    if isinstance(g, PredicateDependencyGraph):
        for v in g.vertices:
            lines.append(f'  "{v}";')
        for p, q, _ in g.edges:
            lines.append(f'  "{p}" -> "{q}";')
    elif isinstance(g, Chain):
        names = []
        for i, r in enumerate(g.rules):
            names.append(f"r{i}")
            lines.append(f'  r{i} [label="{rule_to_str(r)}"];')
        for i, label in enumerate(g.labels):
            lines.append(
                f'  r{i} -> r{i + 1} [label="{formula_to_str(label)}"];')
    else:
        raise TypeError(f"cannot export {type(g).__name__} as DOT")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _tptp_term(t) -> str:
    return t.name


def _tptp_formula(f) -> str:
    if isinstance(f, Bot):
        return "$false"
    if f == TOP:
        return "$true"
    if isinstance(f, Atom):
        if f.args:
            return f"{f.predicate}({','.join(_tptp_term(t) for t in f.args)})"
        return f.predicate
    if isinstance(f, Equality):
        return f"({_tptp_term(f.left)} = {_tptp_term(f.right)})"
    if isinstance(f, Implies):
        if f.right == BOT:
            if isinstance(f.left, Equality):
                return f"({_tptp_term(f.left.left)} != {_tptp_term(f.left.right)})"
            return f"~{_tptp_formula(f.left)}"
        return f"({_tptp_formula(f.left)} => {_tptp_formula(f.right)})"
    if isinstance(f, And):
        return f"({_tptp_formula(f.left)} & {_tptp_formula(f.right)})"
    if isinstance(f, Or):
        return f"({_tptp_formula(f.left)} | {_tptp_formula(f.right)})"
    if isinstance(f, Forall):
        return f"(![{f.var.name}]: {_tptp_formula(f.body)})"
    if isinstance(f, Exists):
        return f"(?[{f.var.name}]: {_tptp_formula(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


def export_tptp(gamma, comp: CompletionResult, fc) -> str:
    """A FOF problem file: Gamma members and completion sentences as
    axioms, the universally closed negated chain formula as conjecture."""
    lines = []
    for i, s in enumerate(gamma, start=1):
        lines.append(f"fof(gamma_{i}, axiom, {_tptp_formula(s)}).")
    for p, s in comp.completed_definitions:
        lines.append(f"fof(comp_{p}, axiom, {_tptp_formula(s)}).")
    for i, s in enumerate(comp.constraint_sentences, start=1):
        lines.append(f"fof(constraint_{i}, axiom, {_tptp_formula(s)}).")
    conjecture = universal_closure(neg(fc))
    lines.append(f"fof(chain_refutation, conjecture, {_tptp_formula(conjecture)}).")
    return "\n".join(lines) + "\n"
