"""Command-line front end.

Exit status: 0 on success, 1 when the input is well-formed but fails a
property (family not directed, set not representable), 2 on usage or parse
errors.  Diagnostics go to stderr; stdout carries only the result.
"""

from __future__ import annotations

import argparse
import json
import sys

from swisscheese.canonical import code_of, forest_to_json, level_sets, minimal_representative
from swisscheese.cheese import decompose, decomposition_to_json
from swisscheese.errors import FamilyError, NotRepresentableError
from swisscheese.expr import eval_mask, expr_from_json
from swisscheese.family import (
    BallFamily,
    balls_from_json,
    family_to_json,
    gen_crumb_laminar,
    gen_dyadic,
    gen_laminar,
    is_unpackable,
    mask_to_points,
    validate_directed,
)
from swisscheese.forest import to_dot
from swisscheese.quasi import cells_from_json, quasi_canonical, quasi_to_json


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e})") from None


def _load_balls(path: str):
    try:
        return balls_from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{path}: malformed family ({e})") from None


def _load_family(path: str) -> BallFamily:
    size, balls = _load_balls(path)
    return BallFamily(size, tuple(balls))


def _load_set(path: str, family: BallFamily) -> frozenset[int]:
    data = _load_json(path)
    try:
        expr = expr_from_json(data)
        return mask_to_points(eval_mask(expr, family))
    except (KeyError, ValueError, TypeError, AttributeError) as e:
        raise UsageError(f"{path}: bad expression ({e})") from None


def cmd_validate(args) -> int:
    size, balls = _load_balls(args.family)
    report = validate_directed(balls, size)
    print(dumps(report.to_json()))
    return 0 if report.ok else 1


def cmd_unpackable(args) -> int:
    ok, witness = is_unpackable(_load_family(args.family))
    print(dumps({"unpackable": ok, "witness": witness}))
    return 0


def cmd_decompose(args) -> int:
    family = _load_family(args.family)
    data = _load_json(args.expr)
    try:
        expr = expr_from_json(data)
        eval_mask(expr, family)
    except (KeyError, ValueError, TypeError, AttributeError) as e:
        raise UsageError(f"{args.expr}: bad expression ({e})") from None
    print(dumps(decomposition_to_json(decompose(expr, family), family)))
    return 0


def cmd_canonical(args) -> int:
    family = _load_family(args.family)
    forest = minimal_representative(_load_set(args.expr, family), family)
    if args.dot:
        sys.stdout.write(to_dot(forest))
    else:
        print(dumps(forest_to_json(forest)))
    return 0


def cmd_levels(args) -> int:
    family = _load_family(args.family)
    gammas = level_sets(_load_set(args.expr, family), family)
    print(dumps({"levels": [sorted(g) for g in gammas]}))
    return 0


def cmd_code(args) -> int:
    family = _load_family(args.family)
    print(dumps(code_of(_load_set(args.expr, family), family).to_json()))
    return 0


def cmd_quasi(args) -> int:
    family = _load_family(args.family)
    x = _load_set(args.expr, family)
    try:
        partition = cells_from_json(_load_json(args.cells))
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{args.cells}: malformed cells ({e})") from None
    problems = partition.problems(family.universe_size)
    if problems:
        raise UsageError(f"{args.cells}: " + "; ".join(problems))
    print(dumps(quasi_to_json(quasi_canonical(x, family, partition))))
    return 0


def cmd_gen(args) -> int:
    try:
        if args.kind == "dyadic":
            if args.depth is None:
                raise UsageError("gen --kind dyadic needs --depth")
            family = gen_dyadic(args.depth)
        else:
            if args.points is None or args.balls is None:
                raise UsageError(f"gen --kind {args.kind} needs --points and --balls")
            make = gen_crumb_laminar if args.kind == "crumb" else gen_laminar
            family = make(args.seed, args.points, args.balls)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(dumps(family_to_json(family)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swisscheese", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("validate", help="check that a family is directed")
    p.add_argument("family")
    p.set_defaults(func=cmd_validate)

    p = subs.add_parser("unpackable", help="test unpackability, with a packed ball as witness")
    p.add_argument("family")
    p.set_defaults(func=cmd_unpackable)

    for name, func, text in (
        ("decompose", cmd_decompose, "swiss cheese decomposition of an expression"),
        ("canonical", cmd_canonical, "minimal representative forest"),
        ("levels", cmd_levels, "level sets of the minimal representative"),
        ("code", cmd_code, "canonical code"),
        ("quasi", cmd_quasi, "per-cell minimal trace forests"),
    ):
        p = subs.add_parser(name, help=text)
        p.add_argument("family")
        p.add_argument("expr")
        p.set_defaults(func=func)
        if name == "canonical":
            p.add_argument("--dot", action="store_true", help="emit Graphviz instead of JSON")
        if name == "quasi":
            p.add_argument("--cells", required=True)

    p = subs.add_parser("gen", help="generate a test family")
    p.add_argument("--kind", choices=("dyadic", "crumb", "laminar"), required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=int)
    p.add_argument("--balls", type=int)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"swisscheese: {e}", file=sys.stderr)
        return 2
    except FamilyError as e:
        print(f"swisscheese: family is not directed: {e}", file=sys.stderr)
        return 1
    except NotRepresentableError as e:
        print(f"swisscheese: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
