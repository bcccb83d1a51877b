"""Command-line interface.

Verbs: parse, shuffle-words, shuffle-trees, flatten, binarize, binarize-tree,
reduce, eval, polylog, associator, check.  Exit codes: 0 success, 1 failed
checks, 2 parse error, 3 domain error.  ``ARBOZETA_MAX_N`` overrides the
summation cap.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import suites, syntax
from .errors import ArbozetaError, ParseError
from .forest_algebra import associator, binarise_comb, flatten, shuffle_forests
from .lincomb import LinComb
from .trees import Forest
from .words import Word, binarise, shuffle_words
from .zeta import (
    eval_arborified_polylog,
    eval_combination,
    eval_mzv,
    eval_polylog,
    reduce_azv,
)

EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_DOMAIN_ERROR = 3


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _to_comb(expr, kind) -> LinComb:
    if isinstance(expr, kind):
        return LinComb.of(expr)
    if isinstance(expr, LinComb):
        for basis in expr:
            if not isinstance(basis, kind):
                raise ParseError(f"expected a {kind.__name__.lower()} expression")
        return expr
    raise ParseError(f"expected a {kind.__name__.lower()} expression")


def _forest_comb(text: str) -> LinComb[Forest]:
    return _to_comb(syntax.parse_expression(text), Forest)


def _word_comb(text: str) -> LinComb[Word]:
    expr = syntax.parse_expression(text)
    if isinstance(expr, Forest) and not expr:
        expr = Word()
    return _to_comb(expr, Word)


def _emit_lincomb(comb: LinComb, as_json: bool):
    if as_json:
        print(syntax.dumps(syntax.lincomb_to_json(comb)))
    else:
        print(syntax.format_lincomb(comb))


def _emit_eval(ev, as_json: bool):
    if as_json:
        print(syntax.dumps(syntax.eval_to_json(ev)))
    else:
        print(syntax.format_eval(ev))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arbozeta",
        description="decorated-forest shuffle combinatorics and arborified zeta evaluation",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb, **kwargs):
        p = sub.add_parser(verb, **kwargs)
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    p = add("parse", help="parse an expression and print its canonical form")
    p.add_argument("expr")

    for verb in ("shuffle-words", "shuffle-trees"):
        p = add(verb, help=f"lambda-shuffle of two {verb.split('-')[1]}")
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("--lambda", dest="lam", type=_fraction, default=Fraction(0))

    p = add("flatten", help="flattening map of weight lambda")
    p.add_argument("expr")
    p.add_argument("--lambda", dest="lam", type=_fraction, default=Fraction(0))

    p = add("binarize", help="composition to binary word")
    p.add_argument("expr")

    p = add("binarize-tree", help="branched binarisation of a forest")
    p.add_argument("expr")

    p = add("reduce", help="reduce an arborified zeta value to a zeta combination")
    p.add_argument("expr")
    p.add_argument("--flavor", choices=("stuffle", "star", "shuffle"), default="stuffle")

    p = add("eval", help="evaluate an arborified zeta value numerically")
    p.add_argument("expr")
    p.add_argument("--flavor", choices=("stuffle", "star", "shuffle"), default="stuffle")
    p.add_argument("--precision", type=float, default=1e-8)
    p.add_argument("--max-n", type=int, default=None)

    p = add("polylog", help="multiple polylogarithm of a composition or xy-forest")
    p.add_argument("expr")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--precision", type=float, default=1e-8)
    p.add_argument("--max-n", type=int, default=None)

    p = add("associator", help="associator of three forests for the tree shuffle")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("third")
    p.add_argument("--lambda", dest="lam", type=_fraction, default=Fraction(0))

    p = add("check", help="run identity suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--weight-bound", type=int, default=6)
    p.add_argument("--precision", type=float, default=1e-8)

    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    as_json = args.json

    if args.verb == "parse":
        expr = syntax.parse_expression(args.expr)
        if isinstance(expr, (Forest, Word)):
            expr = LinComb.of(expr)
        _emit_lincomb(expr, as_json)
        return 0

    if args.verb == "shuffle-words":
        result = shuffle_words(_word_comb(args.left), _word_comb(args.right), args.lam)
        _emit_lincomb(result, as_json)
        return 0

    if args.verb == "shuffle-trees":
        result = shuffle_forests(_forest_comb(args.left), _forest_comb(args.right), args.lam)
        _emit_lincomb(result, as_json)
        return 0

    if args.verb == "flatten":
        result = flatten(_forest_comb(args.expr), args.lam)
        _emit_lincomb(result, as_json)
        return 0

    if args.verb == "binarize":
        result = _word_comb(args.expr).map_basis(binarise)
        _emit_lincomb(result, as_json)
        return 0

    if args.verb == "binarize-tree":
        result = binarise_comb(_forest_comb(args.expr))
        _emit_lincomb(result, as_json)
        return 0

    if args.verb == "reduce":
        combination = reduce_azv(_forest_comb(args.expr), args.flavor)
        if as_json:
            print(syntax.dumps(syntax.combination_to_json(combination)))
        else:
            print(syntax.format_combination(combination))
        return 0

    if args.verb == "eval":
        combination = reduce_azv(_forest_comb(args.expr), args.flavor)
        ev = eval_combination(combination, args.precision, args.max_n)
        _emit_eval(ev, as_json)
        return 0

    if args.verb == "polylog":
        expr = syntax.parse_expression(args.expr)
        if isinstance(expr, Word):
            ev = eval_polylog(expr.letters, args.z, args.precision, args.max_n)
        else:
            comb = _to_comb(expr, Forest)
            ev = eval_arborified_polylog(comb, args.z, args.precision, args.max_n)
        _emit_eval(ev, as_json)
        return 0

    if args.verb == "associator":
        forests = []
        for text in (args.first, args.second, args.third):
            forest = syntax.parse_expression(text)
            if not isinstance(forest, Forest):
                raise ParseError("associator arguments must be single forests")
            forests.append(forest)
        result = associator(*forests, args.lam)
        _emit_lincomb(result, as_json)
        return 0

    if args.verb == "check":
        try:
            report = suites.run_suite(args.suite, args.weight_bound, args.precision)
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_PARSE_ERROR
        if as_json:
            print(syntax.dumps(report))
        else:
            for item in report:
                status = "PASS" if item["pass"] else "FAIL"
                print(f"[{status}] {item['suite']}: {item['instance']}")
            failed = sum(1 for item in report if not item["pass"])
            print(f"{len(report) - failed}/{len(report)} checks passed")
        return EXIT_CHECK_FAILED if any(not item["pass"] for item in report) else 0

    raise AssertionError(f"unhandled verb {args.verb}")


def main(argv=None) -> int:
    try:
        return run(argv)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except ArbozetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
