"""Command-line front end.

Exit status: 0 for success or a true verdict, 1 for a false verdict, 2 for errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence, TextIO

from . import formats
from .baut import aut_order, element_to_json, pbaut_factors, structure_description
from .braid import BraidWord, braids_equal, normal_form
from .canonical import kappa_of_tree
from .errors import CircleConfError, DifferentComponentError
from .forest import format_tree, parse_shape, parse_tree, tree_of_configuration, tree_to_json
from .generators import random_config
from .motion import MotionPath, monodromy, validate_path
from .planner import plan_between, plan_to_canonical
from .render import render_svg

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def _load_config_or_path(filename: str):
    data = formats.load_file(filename)
    if isinstance(data, dict) and "keyframes" in data:
        return formats.path_from_json(data)
    return formats.config_from_json(data, check=False)


def cmd_validate(args, out: TextIO) -> int:
    obj = _load_config_or_path(args.file)
    if isinstance(obj, MotionPath):
        report = validate_path(obj)
        if report.ok:
            print("valid path", file=out)
            return EXIT_TRUE
        print(f"invalid path: {report.violation}", file=out)
        return EXIT_FALSE
    from .geometry import validate_configuration
    violations = validate_configuration(obj.circles)
    if not violations:
        print("valid configuration", file=out)
        return EXIT_TRUE
    for v in violations:
        print(f"invalid: {v}", file=out)
    return EXIT_FALSE


def cmd_tree(args, out: TextIO) -> int:
    config = formats.config_from_json(formats.load_file(args.file))
    t = tree_of_configuration(config)
    print(format_tree(t), file=out)
    print(formats.dumps(tree_to_json(t)), file=out)
    return EXIT_TRUE


def cmd_canonical(args, out: TextIO) -> int:
    print(formats.dumps(formats.config_to_json(kappa_of_tree(parse_tree(args.tree)))), file=out)
    return EXIT_TRUE


def cmd_components(args, out: TextIO) -> int:
    a = formats.config_from_json(formats.load_file(args.a))
    b = formats.config_from_json(formats.load_file(args.b))
    try:
        plan_between(a, b, labeled=args.labeled)
    except DifferentComponentError:
        print("different components", file=out)
        return EXIT_FALSE
    print("same component", file=out)
    return EXIT_TRUE


def cmd_group(args, out: TextIO) -> int:
    shape = parse_shape(args.tree)
    if args.what == "order":
        print(aut_order(shape), file=out)
    elif args.what == "factors":
        print(formats.dumps({"factors": pbaut_factors(shape),
                             "reduced": pbaut_factors(shape, reduced=True)}), file=out)
    else:
        print(structure_description(shape), file=out)
    return EXIT_TRUE


def cmd_braid(args, out: TextIO) -> int:
    w1 = BraidWord.parse(args.n, args.w1)
    if args.what == "nf":
        nf = normal_form(w1)
        print(formats.dumps({"infimum": nf.infimum, "factors": [list(f.images) for f in nf.factors]}), file=out)
        return EXIT_TRUE
    if args.w2 is None:
        raise CircleConfError("braid eq needs two words")
    same = braids_equal(w1, BraidWord.parse(args.n, args.w2))
    print("true" if same else "false", file=out)
    return EXIT_TRUE if same else EXIT_FALSE


def cmd_monodromy(args, out: TextIO) -> int:
    path = formats.path_from_json(formats.load_file(args.file))
    print(formats.dumps(element_to_json(monodromy(path))), file=out)
    return EXIT_TRUE


def cmd_plan(args, out: TextIO) -> int:
    a = formats.config_from_json(formats.load_file(args.a))
    if args.b is None:
        path = plan_to_canonical(a)
    else:
        b = formats.config_from_json(formats.load_file(args.b))
        path = plan_between(a, b, labeled=not args.unlabeled)
    print(formats.dumps(formats.path_to_json(path)), file=out)
    return EXIT_TRUE


def cmd_render(args, out: TextIO) -> int:
    obj = _load_config_or_path(args.file)
    svg = render_svg(obj, labels=args.labels)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.output}", file=out)
    return EXIT_TRUE


def cmd_random_config(args, out: TextIO) -> int:
    config = random_config(args.n, random.Random(args.seed))
    print(formats.dumps(formats.config_to_json(config)), file=out)
    return EXIT_TRUE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="circleconf", description="Configurations of disjoint circles in the plane.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check a configuration or path JSON file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("tree", help="labeled tree of a configuration")
    s.add_argument("file")
    s.set_defaults(func=cmd_tree)

    s = sub.add_parser("canonical", help="fixed configuration of a labeled tree, e.g. '(4(1,3),2)'")
    s.add_argument("tree")
    s.set_defaults(func=cmd_canonical)

    s = sub.add_parser("components", help="do two configurations lie in the same component?")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--labeled", action="store_true", help="compare labeled configurations")
    s.set_defaults(func=cmd_components)

    s = sub.add_parser("group", help="facts about the braided automorphism group of a tree")
    s.add_argument("what", choices=["order", "factors", "structure"])
    s.add_argument("tree", help="labeled tree text or a parenthesis code such as '(()())'")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("braid", help="braid word equality and normal form")
    s.add_argument("what", choices=["eq", "nf"])
    s.add_argument("n", type=int)
    s.add_argument("w1")
    s.add_argument("w2", nargs="?")
    s.set_defaults(func=cmd_braid)

    s = sub.add_parser("monodromy", help="group element of a loop given as path JSON")
    s.add_argument("file")
    s.set_defaults(func=cmd_monodromy)

    s = sub.add_parser("plan", help="path to the fixed configuration, or between two configurations")
    s.add_argument("a")
    s.add_argument("b", nargs="?")
    s.add_argument("--unlabeled", action="store_true", help="allow the labels to end permuted")
    s.set_defaults(func=cmd_plan)

    s = sub.add_parser("render", help="draw a configuration or path as SVG")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--labels", action="store_true")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("random-config", help="a random valid configuration")
    s.add_argument("n", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_random_config)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
    except _UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_ERROR
    except SystemExit as exc:  # --help
        return EXIT_TRUE if not exc.code else EXIT_ERROR
    try:
        return args.func(args, out)
    except CircleConfError as exc:
        print(f"error [{exc.code}]: {exc}", file=err)
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
