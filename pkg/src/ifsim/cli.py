"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 model/partition validation failure,
3 composition impossible (not composable or incompatible), 4 alphabet
precondition failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .abstraction import EXISTS_FORALL, FORALL_EXISTS, Partition, abstract
from .automata import load_automaton, validate_bia
from .composition import compose
from .errormodel import identity_model, validate_error_model
from .errors import (AlphabetPreconditionError, IncompatibleError,
                     ModelValidationError, NotAPartitionError,
                     NotComposableError, TooLargeError,
                     UnknownCheatTargetError)
from .game import build_boolean_game, build_quantitative_game, export_dot
from .solvers import distance, refines

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_COMPOSITION = 3
EXIT_ALPHABET = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise SystemExit_(EXIT_USAGE, f"error: {message}")


class SystemExit_(Exception):
    def __init__(self, code, message=""):
        super().__init__(message)
        self.code = code


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SystemExit_(EXIT_USAGE, f"{path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise SystemExit_(EXIT_VALIDATION, f"{path}: not valid JSON: {exc}")


def _load_bia(path: str):
    try:
        return validate_bia(_load_json(path))
    except ModelValidationError as exc:
        lines = "\n".join(f"  {i}" for i in exc.issues)
        raise SystemExit_(EXIT_VALIDATION, f"{path}: invalid model:\n{lines}")


def _load_model(path: str, kind: str):
    try:
        return validate_error_model(_load_json(path), kind=kind)
    except ModelValidationError as exc:
        lines = "\n".join(f"  {i}" for i in exc.issues)
        raise SystemExit_(EXIT_VALIDATION,
                          f"{path}: invalid error model:\n{lines}")


def _models(args):
    if args.output_errors:
        mo = _load_model(args.output_errors, "output")
    else:
        print("warning: no --output-errors given; using the identity model "
              "(the distance degenerates toward the boolean verdict)",
              file=sys.stderr)
        mo = identity_model("output")
    if args.input_errors:
        mi = _load_model(args.input_errors, "input")
    else:
        print("warning: no --input-errors given; using the identity model "
              "(the distance degenerates toward the boolean verdict)",
              file=sys.stderr)
        mi = identity_model("input")
    return mo, mi


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _cmd_validate(args) -> int:
    doc = _load_json(args.file)
    try:
        if "states" in doc:
            validate_bia(doc)
            what = "automaton"
        elif "entries" in doc:
            validate_error_model(doc)
            what = f"{doc.get('kind', '?')} error model"
        elif "classes" in doc:
            Partition.from_dict(doc["classes"])
            what = "partition"
        else:
            raise SystemExit_(
                EXIT_VALIDATION,
                f"{args.file}: unrecognized document (no states/entries/classes)")
    except ModelValidationError as exc:
        print(f"{args.file}: INVALID", file=sys.stderr)
        for issue in exc.issues:
            print(f"  {issue}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.json:
        _emit_json({"file": args.file, "kind": what, "ok": True})
    else:
        print(f"OK ({what})")
    return EXIT_OK


def _cmd_refines(args) -> int:
    left = _load_bia(args.left)
    right = _load_bia(args.right)
    result = refines(left, right)
    if args.json:
        _emit_json({"left": left.name, "right": right.name,
                    "refines": result.holds, "reason": result.reason})
    else:
        print(f"refines: {'true' if result.holds else 'false'}")
        if result.reason:
            print(f"reason: {result.reason}")
    return EXIT_OK


def _cmd_distance(args) -> int:
    left = _load_bia(args.left)
    right = _load_bia(args.right)
    mo, mi = _models(args)
    if args.objective == "disc" and args.discount is None:
        raise SystemExit_(EXIT_USAGE,
                          "error: --objective disc requires --lambda")
    result = distance(left, mo, right, mi, objective=args.objective,
                      lam=args.discount, epsilon=args.epsilon)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(result.game))
    if args.json:
        _emit_json(result.to_json_dict())
    else:
        if args.objective == "limavg":
            v = Fraction(result.value)
            print(f"distance: {v.numerator}/{v.denominator} "
                  f"(= {result.decimal})")
        else:
            print(f"distance: {result.decimal} "
                  f"(lambda={args.discount}, +/- {args.epsilon})")
        print(f"refines: {'true' if result.boolean_refines else 'false'}")
        print(f"game: {len(result.game)} states, "
              f"{len(result.game.edges)} edges")
    return EXIT_OK


def _cmd_compose(args) -> int:
    left = _load_bia(args.left)
    right = _load_bia(args.right)
    composed, report = compose(left, right)
    doc = composed.to_json_dict()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.json:
        _emit_json({"composed": doc, "report": report.to_json_dict()})
    elif args.output:
        print(f"wrote {args.output}: {len(composed.states)} states, "
              f"{len(composed.transitions)} transitions")
    else:
        _emit_json(doc)
    return EXIT_OK


def _cmd_abstract(args) -> int:
    automaton = _load_bia(args.model)
    doc = _load_json(args.partition)
    if "classes" not in doc:
        raise SystemExit_(EXIT_VALIDATION,
                          f"{args.partition}: missing 'classes'")
    partition = Partition.from_dict(doc["classes"])
    mode = FORALL_EXISTS if args.mode == "forall-exists" else EXISTS_FORALL
    try:
        quotient = abstract(automaton, partition, mode)
    except NotAPartitionError as exc:
        raise SystemExit_(EXIT_VALIDATION, f"{args.partition}: {exc}")
    _emit_json(quotient.to_json_dict())
    return EXIT_OK


def _cmd_game(args) -> int:
    left = _load_bia(args.left)
    right = _load_bia(args.right)
    if args.boolean:
        game = build_boolean_game(left, right)
    else:
        mo, mi = _models(args)
        game = build_quantitative_game(left, mo, right, mi)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(game))
    if args.json:
        _emit_json(game.to_json_dict())
    else:
        print(f"game: {len(game)} states, {len(game.edges)} edges, "
              f"max weight {game.max_weight}")
        if args.dot:
            print(f"wrote {args.dot}")
    return EXIT_OK


def _add_model_flags(p):
    p.add_argument("--output-errors", metavar="FILE",
                   help="output error model M_O (applied to the left system)")
    p.add_argument("--input-errors", metavar="FILE",
                   help="input error model M_I (applied to the right system)")


def build_parser() -> _Parser:
    parser = _Parser(prog="ifsim",
                     description="simulation distances between broadcast "
                                 "interface automata")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a model file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("refines", help="boolean refinement check")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_refines)

    p = sub.add_parser("distance", help="quantitative simulation distance")
    p.add_argument("left")
    p.add_argument("right")
    _add_model_flags(p)
    p.add_argument("--objective", choices=["limavg", "disc"],
                   default="limavg")
    p.add_argument("--lambda", dest="discount", type=_fraction,
                   metavar="RATIONAL", help="discount factor in (0,1)")
    p.add_argument("--epsilon", type=_fraction, default=Fraction(1, 10**6),
                   metavar="RATIONAL", help="certified error bound (disc)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", metavar="FILE", help="dump the game as DOT")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("compose", help="parallel composition of two interfaces")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("-o", "--output", metavar="FILE")
    p.add_argument("--json", action="store_true",
                   help="emit composed model plus composition report")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("abstract", help="quotient abstraction of an interface")
    p.add_argument("model")
    p.add_argument("partition")
    p.add_argument("--mode", choices=["forall-exists", "exists-forall"],
                   required=True)
    p.set_defaults(func=_cmd_abstract)

    p = sub.add_parser("game", help="build and export a simulation game")
    p.add_argument("left")
    p.add_argument("right")
    _add_model_flags(p)
    p.add_argument("--boolean", action="store_true",
                   help="build the unweighted game instead")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", metavar="FILE")
    p.set_defaults(func=_cmd_game)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit_ as exc:
        if str(exc):
            print(exc, file=sys.stderr)
        return exc.code
    except (NotComposableError, IncompatibleError) as exc:
        kind = "not composable" if isinstance(exc, NotComposableError) \
            else "incompatible"
        print(f"{kind}: {exc}", file=sys.stderr)
        if isinstance(exc, IncompatibleError) and exc.witness:
            print(f"  witness outputs: {' '.join(exc.witness)}", file=sys.stderr)
        return EXIT_COMPOSITION
    except AlphabetPreconditionError as exc:
        print(f"alphabet precondition: {exc}", file=sys.stderr)
        return EXIT_ALPHABET
    except (ModelValidationError, NotAPartitionError,
            UnknownCheatTargetError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except TooLargeError as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
