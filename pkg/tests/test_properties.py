"""Seeded randomized invariants beyond the core acceptance properties:
printer/parser round trip, substitution and grounding against a direct
first-order evaluator, simplification soundness, and the tight-on
consequence of chain refutation."""

from random import Random

from lttight.completion import completion, desugar, simplify
from lttight.fixtures import builtin_fixture
from lttight.parser import parse_formula
from lttight.semantics import (
    enumerate_interpretations, ground, ground_program, is_tight_on, reduct,
    sample_interpretation, satisfies, satisfies_fo,
)
from lttight.syntax import (
    BOT, TOP, And, Atom, Equality, Exists, Forall, Implies, ObjectConstant,
    Or, Signature, Variable, formula_to_str, free_variables, neg, rename_apart,
    substitute,
)
from lttight.tightness import ENTAILED, check_gamma_tight

from conftest import fo_eval, random_ground_formula

SEED = 97
SIG = Signature(predicates=(("p", 1), ("q", 2), ("r", 0)),
                constants=("a", "b"))
VARS = [Variable("X"), Variable("Y"), Variable("Z")]
CONSTS = [ObjectConstant("a"), ObjectConstant("b")]


def random_formula(rng: Random, depth: int):
    """A random formula over SIG; may have free variables."""

    def term():
        return rng.choice(VARS + CONSTS)

    if depth == 0 or rng.random() < 0.3:
        roll = rng.randrange(5)
        if roll == 0:
            return BOT
        if roll == 1:
            return TOP
        if roll == 2:
            return Equality(term(), term())
        name, arity = rng.choice(SIG.predicates)
        return Atom(name, tuple(term() for _ in range(arity)))
    kind = rng.randrange(6)
    if kind == 0:
        return And(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 1:
        return Or(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 2:
        return Implies(random_formula(rng, depth - 1),
                       random_formula(rng, depth - 1))
    if kind == 3:
        return neg(random_formula(rng, depth - 1))
    cls = Forall if kind == 4 else Exists
    return cls(rng.choice(VARS), random_formula(rng, depth - 1))


def random_env(rng: Random, f, m: int) -> dict:
    return {v: rng.randrange(m) for v in free_variables(f)}


def test_print_parse_round_trip():
    rng = Random(SEED)
    for i in range(1000):
        f = random_formula(rng, 3)
        assert parse_formula(formula_to_str(f)) == f, formula_to_str(f)
    print("round trip: 1000 cases")


def test_grounding_matches_direct_evaluation():
    rng = Random(SEED + 1)
    for i in range(1000):
        f = random_formula(rng, 3)
        m = rng.randint(1, 3)
        interp = sample_interpretation(SIG, m, rng)
        env = random_env(rng, f, m)
        direct = fo_eval(f, interp, env)
        via_ground = satisfies(interp.true_atoms(), ground(f, interp, env))
        assert direct == via_ground, formula_to_str(f)
    print("grounding faithfulness: 1000 cases")


def test_substitution_commutes_with_evaluation():
    rng = Random(SEED + 2)
    cases = 0
    while cases < 1000:
        f = random_formula(rng, 3)
        free = sorted(free_variables(f), key=lambda v: v.name)
        if not free:
            continue
        v = rng.choice(free)
        c = rng.choice(CONSTS)
        m = rng.randint(1, 3)
        interp = sample_interpretation(SIG, m, rng)
        env = random_env(rng, f, m)
        env_sub = {w: e for w, e in env.items() if w != v}
        env_direct = dict(env)
        env_direct[v] = interp.const(c.name)
        assert fo_eval(substitute(f, {v: c}), interp, env_sub) == \
            fo_eval(f, interp, env_direct), formula_to_str(f)
        cases += 1
    print("substitution/evaluation: 1000 cases")


def test_simplify_preserves_evaluation():
    rng = Random(SEED + 3)
    for i in range(1000):
        f = random_formula(rng, 3)
        g = simplify(f)
        m = rng.randint(1, 3)
        interp = sample_interpretation(SIG, m, rng)
        env = random_env(rng, f, m)
        assert fo_eval(f, interp, env) == fo_eval(g, interp, env), \
            formula_to_str(f)
    print("simplify soundness: 1000 cases")


def test_reduct_is_idempotent():
    rng = Random(SEED + 4)
    from lttight.semantics import GAtom
    atoms = [GAtom(f"a{i}") for i in range(6)]
    for i in range(1000):
        f = random_ground_formula(rng, atoms, 4)
        j = frozenset(a for a in atoms if rng.random() < 0.5)
        r = reduct(f, j)
        assert reduct(r, j) == r
    print("reduct idempotence: 1000 cases")


def test_rename_apart_produces_disjoint_copies():
    rng = Random(SEED + 5)
    rules = []
    for name in ("prog1", "prog2", "ex1", "example1", "moving(1)"):
        rules.extend(desugar(builtin_fixture(name).program).rules)
    rules = [r for r in rules if r.kind == "basic"]
    for i in range(1000):
        r = rng.choice(rules)
        t1, t2 = rng.sample(range(1, 50), 2)
        a, b = rename_apart(r, t1), rename_apart(r, t2)
        assert not (a.variables() & b.variables())
        assert len(a.variables()) == len(r.variables())
    print("rename_apart disjointness: 1000 cases")


def test_chain_refutation_implies_tight_on():
    """When the chain check reports entailed, every interpretation
    satisfying the assumptions and the completion must ground to a
    program that is tight on its atom set."""
    cases = [("prog1", 2), ("ex1", 2), ("ex2", 4), ("example1", 1),
             ("example2", 1), ("example3", 1)]
    total = 0
    for name, n in cases:
        fx = builtin_fixture(name)
        assert check_gamma_tight(fx.program, fx.gamma, n).status == ENTAILED
        comp = completion(fx.program).sentences()
        d = desugar(fx.program)
        for m in (1, 2):
            for interp in enumerate_interpretations(fx.program.signature, m):
                if not all(satisfies_fo(interp, s)
                           for s in list(fx.gamma) + comp):
                    continue
                gp, _ = ground_program(d, interp)
                assert is_tight_on(gp, interp.true_atoms()), \
                    (name, interp.literal())
                total += 1
    assert total > 20
    print(f"refuted chains imply tight groundings: {total} models checked")
