"""Built-in example programs with their assumption sets.

``moving(k)`` (also accepted as ``M(k)``) is the commonsense
moving-objects domain parameterized by the step bound k, with step
constants named ``s0 .. sk``.  The predicates object/1, place/1 and
move/3 are extensional; step/1, next/2 and at/3 are intensional.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .parser import parse_formula, parse_program
from .syntax import Program


@dataclass(frozen=True)
class Fixture:
    name: str
    program: Program
    gamma: tuple   # tuple of closed formulas


_BASE_FIXTURES = {
    # p(a), q(b), p(x) <- q(x)
    "prog1": ("p(a). q(b). p(X) :- q(X).", ()),
    # p(x) <- q(x), q(a) <- p(b)
    "prog2": ("p(X) :- q(X). q(a) :- p(b).", ()),
    # prog2's rules plus unique-name constraints
    "prog4": ("p(a) :- p(b). q(c) :- q(d). :- a = b. :- c = d.", ()),
    # one positive and one negated occurrence of p in the same body
    "ex1": ("p(a,b). q(X,Y) :- p(Y,X), not p(X,Y).", ()),
    # a three-edge path p -> q -> r -> s
    "ex2": ("p(X) :- q(X). q(X) :- r(X). r(X) :- s(X).", ()),
    # tight relative to the empty set despite the p-loop
    "example1": ("p(a) :- p(X), X != a.", ()),
    "example2": ("p(a) :- p(b). q(c) :- q(d).", ("a != b", "c != d")),
    "example3": ("p(X) :- q(X). q(a) :- p(b).", ("a != b",)),
}

_MOVING_RE = re.compile(r"^(?:m|moving)\((\d+)\)$", re.IGNORECASE)


def _step(i: int) -> str:
    return f"s{i}"


def moving_program_text(k: int) -> str:
    """The moving-objects program at step bound k."""
    if k < 0:
        raise ValueError("step bound must be nonnegative")
    lines = [
        "#extensional object/1.",
        "#extensional place/1.",
        "#extensional move/3.",
    ]
    for i in range(k + 1):
        lines.append(f"step({_step(i)}).")
    for i in range(k):
        lines.append(f"next({_step(i)}, {_step(i + 1)}).")
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            lines.append(f":- {_step(i)} = {_step(j)}.")
    lines.extend([
        ":- at(X, Y, Z), not (object(X) & place(Y) & step(Z)).",
        ":- move(X, Y, Z), not (object(X) & place(Y) & step(Z)).",
        ":- at(X, Y1, Z), at(X, Y2, Z), Y1 != Y2.",
        ":- object(X), step(Z), not exists Y (at(X, Y, Z)).",
        "at(X, Y, U) :- move(X, Y, Z), next(Z, U).",
        f"{{at(X, Y, {_step(0)})}} :- object(X), place(Y).",
        "{at(X, Y, U)} :- at(X, Y, Z), next(Z, U).",
    ])
    return "\n".join(lines)


def moving_constraint_formulas(k: int) -> list:
    """The constraint content as positive sentences: unique names,
    argument typing, uniqueness and existence of location.  An
    interpretation satisfies these iff it violates no constraint of the
    moving-objects program."""
    texts = []
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            texts.append(f"{_step(i)} != {_step(j)}")
    texts.extend([
        "forall X (forall Y (forall Z ("
        "at(X, Y, Z) -> object(X) & place(Y) & step(Z))))",
        "forall X (forall Y (forall Z ("
        "move(X, Y, Z) -> object(X) & place(Y) & step(Z))))",
        "forall X (forall Y1 (forall Y2 (forall Z ("
        "at(X, Y1, Z) & at(X, Y2, Z) -> Y1 = Y2))))",
        "forall X (forall Z ("
        "object(X) & step(Z) -> exists Y (at(X, Y, Z))))",
    ])
    return [parse_formula(t) for t in texts]


def moving_successor_state_formulas(k: int) -> list:
    """Explicit definitions of step and next plus the successor-state
    characterization of at, as closed formulas."""
    step_cases = " | ".join(f"Z = {_step(i)}" for i in range(k + 1))
    texts = [f"forall Z (step(Z) <-> {step_cases})"]
    if k == 0:
        texts.append("forall Z (forall U (next(Z, U) <-> false))")
    else:
        next_cases = " | ".join(
            f"(Z = {_step(i)} & U = {_step(i + 1)})" for i in range(k))
        texts.append(f"forall Z (forall U (next(Z, U) <-> {next_cases}))")
    for i in range(k):
        texts.append(
            f"forall X (forall Y (at(X, Y, {_step(i + 1)}) <-> "
            f"move(X, Y, {_step(i)}) | "
            f"(at(X, Y, {_step(i)}) & not exists W (move(X, W, {_step(i)})))))")
    return [parse_formula(t) for t in texts]


def builtin_fixture(name: str) -> Fixture:
    """Look up a built-in program by name; ``moving(k)``/``M(k)`` builds
    the moving-objects program at step bound k."""
    key = name.strip()
    m = _MOVING_RE.match(key)
    if m:
        k = int(m.group(1))
        program = parse_program(moving_program_text(k))
        gamma = tuple(moving_constraint_formulas(k))
        return Fixture(f"moving({k})", program, gamma)
    if key not in _BASE_FIXTURES:
        known = ", ".join(sorted(_BASE_FIXTURES) + ["moving(k)"])
        raise KeyError(f"unknown fixture {name!r}; known: {known}")
    text, gamma_texts = _BASE_FIXTURES[key]
    return Fixture(key, parse_program(text),
                   tuple(parse_formula(t) for t in gamma_texts))


def fixture_names() -> list:
    return sorted(_BASE_FIXTURES)
