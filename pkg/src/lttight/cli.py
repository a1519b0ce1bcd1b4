"""Command-line front end.

Exit codes: 0 success/agree, 1 disagreement or countermodel found,
2 usage or input error, 3 resource guard tripped.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .completion import completion, simplify_completion
from .equiv import check_equivalence, check_proposition3
from .fixtures import builtin_fixture, fixture_names
from .parser import ParseError, parse_program, parse_sentences
from .semantics import (
    ResourceGuardError, desugar, ground_program, ground_to_str, is_sm_model,
    parse_interpretation,
)
from .tightness import (
    COUNTERMODEL, ENTAILED, chain_formula, chain_to_str, chains,
    check_gamma_tight, export_dot, export_tptp, is_tight,
    predicate_dependency_graph,
)
from .syntax import formula_to_str, pretty_print

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


class UsageError(Exception):
    pass


def _load_program(spec: str):
    """Load a program from ``fixture:NAME`` or a file path.  Returns the
    program and its fixture assumptions (empty for files)."""
    if spec.startswith("fixture:"):
        try:
            fixture = builtin_fixture(spec[len("fixture:"):])
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc))
        return fixture.program, list(fixture.gamma)
    try:
        with open(spec, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc}")
    return parse_program(text), []


def _load_gamma(path, default):
    if path is None:
        return default
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_sentences(handle.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _load_interp(path):
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_interpretation(handle.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    except ValueError as exc:
        raise UsageError(str(exc))


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lt-tight",
        description="Completion, tightness and stable-model analysis of "
                    "logic programs with first-order rule bodies.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("input", help="program file path or fixture:NAME")
        return p

    with_input(sub.add_parser("parse", help="parse and echo the program"))
    p = with_input(sub.add_parser("complete", help="print the completion"))
    p.add_argument("--simplify", action="store_true")
    with_input(sub.add_parser("tight", help="decide tightness"))
    p = with_input(sub.add_parser("graph", help="predicate dependency graph"))
    p.add_argument("--dot", action="store_true", default=True)
    p = with_input(sub.add_parser("chains", help="enumerate chains"))
    p.add_argument("--n", type=int, required=True)
    p = with_input(sub.add_parser("chain-formulas", help="chain formulas"))
    p.add_argument("--n", type=int, required=True)
    p = with_input(sub.add_parser("check-gamma-tight",
                                  help="check the chain-formula entailment"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", help="file of closed formulas, one per '.'")
    p.add_argument("--bound", type=int, default=2,
                   help="universe size bound for countermodel search")
    p = with_input(sub.add_parser("ground", help="ground the program"))
    p.add_argument("--interp", required=True, help="interpretation literal file")
    p = with_input(sub.add_parser("stable", help="stable-model check"))
    p.add_argument("--interp", required=True, help="interpretation literal file")
    p = with_input(sub.add_parser("check-equiv",
                                  help="compare stable models with completion"))
    p.add_argument("--gamma", help="file of closed formulas, one per '.'")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--sample", type=int, default=None,
                   help="sample count (default: exhaustive)")
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("check-prop3",
                       help="moving-objects program vs successor-state formulas")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sample", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p = with_input(sub.add_parser("export-tptp",
                                  help="FOF obligations for the chain formulas"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", help="file of closed formulas, one per '.'")
    p = sub.add_parser("fixture", help="print a built-in program")
    p.add_argument("name")
    return ap


def run(argv) -> int:
    ap = _build_argparser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "fixture":
        try:
            fixture = builtin_fixture(args.name)
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc))
        print(pretty_print(fixture.program))
        if fixture.gamma:
            print("% gamma:")
            for g in fixture.gamma:
                print(f"% {formula_to_str(g)}")
        return EXIT_OK
    if cmd == "check-prop3":
        if args.k < 0:
            raise UsageError("--k must be nonnegative")
        report = check_proposition3(args.k, sample_count=args.sample,
                                    seed=args.seed)
        print(report.render())
        return EXIT_OK if report.verdict == "agree" else EXIT_FOUND

    prog, fixture_gamma = _load_program(args.input)

    if cmd == "parse":
        print(pretty_print(prog))
        return EXIT_OK
    if cmd == "complete":
        result = completion(prog)
        if args.simplify:
            result = simplify_completion(result)
        for p, s in result.completed_definitions:
            print(f"{p}: {formula_to_str(s)}")
        for s in result.constraint_sentences:
            print(f"constraint: {formula_to_str(s)}")
        return EXIT_OK
    if cmd == "tight":
        if is_tight(prog):
            print("tight")
            return EXIT_OK
        print("not tight")
        return EXIT_FOUND
    if cmd == "graph":
        print(export_dot(predicate_dependency_graph(prog)), end="")
        return EXIT_OK
    if cmd == "chains":
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        for i, c in enumerate(chains(prog, args.n)):
            print(f"chain {i}:")
            print(chain_to_str(c))
        return EXIT_OK
    if cmd == "chain-formulas":
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        for c in chains(prog, args.n):
            print(formula_to_str(chain_formula(c)))
        return EXIT_OK
    if cmd == "check-gamma-tight":
        if args.n < 1:
            raise UsageError("--n must be at least 1")
        gamma = _load_gamma(args.gamma, fixture_gamma)
        verdict = check_gamma_tight(prog, gamma, args.n, args.bound)
        if verdict.status == ENTAILED:
            print("entailed (syntactic)")
            return EXIT_OK
        if verdict.status == COUNTERMODEL:
            print("countermodel")
            print(verdict.interpretation.literal())
            print(chain_to_str(verdict.chain))
            return EXIT_FOUND
        print(f"unknown (universe bound {verdict.bound} exhausted)")
        return EXIT_OK
    if cmd == "ground":
        interp = _load_interp(args.interp)
        _, gf = ground_program(desugar(prog), interp)
        print(ground_to_str(gf))
        return EXIT_OK
    if cmd == "stable":
        interp = _load_interp(args.interp)
        if is_sm_model(prog, interp):
            print("stable")
            return EXIT_OK
        print("not stable")
        return EXIT_FOUND
    if cmd == "check-equiv":
        if args.m_max < 1:
            raise UsageError("--m-max must be at least 1")
        gamma = _load_gamma(args.gamma, fixture_gamma)
        mode = "exhaustive" if args.sample is None else "sampled"
        report = check_equivalence(
            prog, gamma, args.m_max, mode=mode,
            sample_count=args.sample or 0, seed=args.seed,
            program_id=args.input)
        print(report.render())
        return EXIT_OK if report.verdict == "agree" else EXIT_FOUND
    if cmd == "export-tptp":
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        gamma = _load_gamma(args.gamma, fixture_gamma)
        comp = completion(prog)
        problems = [export_tptp(gamma, comp, chain_formula(c))
                    for c in chains(prog, args.n)]
        for i, text in enumerate(problems):
            if len(problems) > 1:
                print(f"% obligation {i}")
            print(text, end="")
        return EXIT_OK
    raise UsageError(f"unknown command {cmd!r}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
