"""Command-line front end.

Exit codes: 0 success, 2 relation violation, 3 parse or input error,
4 solve / verify failure, 5 self-test failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .algebra import blade_key
from .errors import (
    AdmissibilityError,
    CliffordError,
    NoCandidateFound,
    NotInvertible,
    ParseError,
    RelationViolation,
    SignatureMismatch,
    UnclassifiableCase,
    UnclassifiableVolume,
    VerificationFailed,
)
from .fields import FIELD_NAMES, field_from_name
from .formats import (
    algebra_from_header,
    dumps,
    instance_from_text,
    instance_to_text,
    mv_to_text,
    read_json,
    solution_from_text,
    solution_to_text,
    write_json,
)
from .generators import GeneratorSet, classify_basis
from .instances import GenSpec, generate
from .reynolds import _accept, admissible_cases, classify_odd, solve, verify_intertwiner
from .selftest import run_selftest

EXIT_OK = 0
EXIT_RELATION = 2
EXIT_INPUT = 3
EXIT_SOLVE = 4
EXIT_SELFTEST = 5

log = logging.getLogger("clifpauli")


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to the input-error exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _uint(bits: Optional[int] = None):
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < 0 or (bits is not None and v >= 1 << bits):
            raise argparse.ArgumentTypeError(f"out of range: {v}")
        return v
    return conv


def _positive(text: str) -> int:
    v = _uint()(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _tolerance(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v >= 0 or v == float("inf"):
        raise argparse.ArgumentTypeError(f"tolerance must be finite and nonnegative, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=FIELD_NAMES,
                        help="scalar field (for file commands it must match the file)")
    common.add_argument("--tolerance", type=_tolerance, default=None,
                        help="comparison tolerance for complex-float (default 1e-9)")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    parser = _Parser(prog="clifpauli",
                     description="Generator sets of Clifford algebras: validate, classify, "
                                 "solve for the intertwiner T, verify, self-test, generate.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check the relations of both sets")
    p.add_argument("--input", required=True)

    p = sub.add_parser("classify", parents=[common], help="basis classification and odd-n case")
    p.add_argument("--input", required=True)

    p = sub.add_parser("solve", parents=[common], help="compute T with gamma^a = c T^-1 beta^a T")
    p.add_argument("--input", required=True)
    p.add_argument("--output", help="solution file (default: print to stdout)")

    p = sub.add_parser("verify", parents=[common], help="recompute the residual of a solution")
    p.add_argument("--input", required=True)
    p.add_argument("--solution", required=True)

    p = sub.add_parser("selftest", parents=[common], help="run the randomized identity suite")
    p.add_argument("--p", type=_uint(), required=True)
    p.add_argument("--q", type=_uint(), required=True)
    p.add_argument("--seed", type=_uint(64), default=0)
    p.add_argument("--trials", type=_uint(), default=10)

    p = sub.add_parser("gen", parents=[common], help="write a random conjugated instance")
    p.add_argument("--p", type=_uint(), required=True)
    p.add_argument("--q", type=_uint(), required=True)
    p.add_argument("--seed", type=_uint(64), default=0)
    p.add_argument("--case", type=int, choices=range(1, 7), default=None)
    p.add_argument("--bound", type=_positive, default=3,
                   help="integer coefficient bound for exact fields")
    p.add_argument("--output", help="instance file; ground truth goes to <stem>.truth.json")
    return parser


# --- helpers ---------------------------------------------------------------

def _load_instance(args, validate: bool = True):
    obj = read_json(args.input)
    alg = algebra_from_header(obj, tolerance=args.tolerance)
    if args.field and args.field != alg.field.name:
        raise ParseError(f"file has field {alg.field.name!r} but --field {args.field} was given", "field")
    return instance_from_text(obj, tolerance=args.tolerance, validate=validate)


def _field(args):
    return field_from_name(args.field or "real-exact", args.tolerance)


def _candidate_text(masks) -> str:
    return " + ".join("e" if m == 0 else f"gamma^{{{blade_key(m)}}}" for m in masks)


def sidecar_path(output: Path) -> Path:
    return output.with_name(output.stem + ".truth.json")


# --- commands --------------------------------------------------------------

def cmd_validate(args) -> int:
    gamma, beta = _load_instance(args, validate=False)
    verdicts, code = [], EXIT_OK
    for S in (gamma, beta):
        try:
            S = GeneratorSet(S.algebra, S.gens, label=S.label)
        except RelationViolation as exc:
            verdicts.append(f"{S.label}: invalid, relation ({exc.a},{exc.b}) violated, "
                            f"residual {exc.residual:.6g}")
            code = EXIT_RELATION
            continue
        try:
            verdicts.append(f"{S.label}: valid, {classify_basis(S)}")
        except UnclassifiableVolume as exc:
            verdicts.append(f"{S.label}: valid, unclassifiable ({exc})")
            if code == EXIT_OK:
                code = EXIT_SOLVE
    print("; ".join(verdicts))
    return code


def cmd_classify(args) -> int:
    gamma, beta = _load_instance(args)
    print(f"gamma: {classify_basis(gamma)}")
    print(f"beta: {classify_basis(beta)}")
    if gamma.n % 2 == 0:
        print("case: even")
    else:
        case = classify_odd(gamma, beta)
        print(f"case: {case.id} (c = {case.central_factor})")
    return EXIT_OK


def cmd_solve(args) -> int:
    gamma, beta = _load_instance(args)
    result = solve(gamma, beta)
    print(f"case: {result.case}")
    print(f"candidate: {_candidate_text(result.candidate)}")
    print(f"residual: {result.residual!r}")
    text = dumps(solution_to_text(result))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    gamma, beta = _load_instance(args)
    alg = gamma.algebra
    sol = solution_from_text(alg, read_json(args.solution))
    c = sol["central_factor"]
    # the factor must be the one the claimed case prescribes
    if sol["case"] == "even":
        allowed = {"even": alg.one()} if alg.n % 2 == 0 else {}
    else:
        allowed = dict(admissible_cases(alg)) if alg.n % 2 else {}
    expected = allowed.get(sol["case"])
    if expected is None:
        print(f"case {sol['case']!r} is not admissible in {alg!r}")
        return EXIT_SOLVE
    if not (c == expected if alg.field.exact else c.close_to(expected)):
        print(f"central factor {c} does not match case {sol['case']} (expected {expected})")
        return EXIT_SOLVE
    residual = verify_intertwiner(gamma, beta, sol["T"], c)
    print(f"residual: {residual!r}")
    if not _accept(alg, residual):
        print("verification FAILED")
        return EXIT_SOLVE
    print("verification ok")
    return EXIT_OK


def cmd_selftest(args) -> int:
    field = _field(args)
    report = run_selftest(args.p, args.q, field, args.seed, args.trials)
    print(f"selftest Cl({args.p},{args.q}) {field.name}, seed {args.seed}, {args.trials} trials")
    for line in report.lines():
        print(line)
    bad = report.first_failure
    if bad is not None:
        print(f"first failure: {bad.name}: {bad.failure}")
        return EXIT_SELFTEST
    print("all identities pass")
    return EXIT_OK


def cmd_gen(args) -> int:
    field = _field(args)
    inst = generate(GenSpec(args.p, args.q, field, args.seed, args.case, args.bound))
    text = dumps(instance_to_text(inst.gamma, inst.beta))
    if not args.output:
        sys.stdout.write(text)
        return EXIT_OK
    out = Path(args.output)
    out.write_text(text, encoding="utf-8")
    alg = inst.algebra
    case = inst.case if inst.case is not None else "even"
    factor = alg.one() if case == "even" else dict(admissible_cases(alg))[case]
    truth = {"p": alg.p, "q": alg.q, "field": field.name, "seed": args.seed, "case": case,
             "central_factor": mv_to_text(factor), "S": mv_to_text(inst.S)}
    write_json(sidecar_path(out), truth)
    print(f"wrote {out} and {sidecar_path(out)}")
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
    "gen": cmd_gen,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except RelationViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RELATION
    except (ParseError, AdmissibilityError, SignatureMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NoCandidateFound, VerificationFailed, NotInvertible,
            UnclassifiableCase, UnclassifiableVolume) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVE
    except (CliffordError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
