"""Command line: parse, batch, diff, lint.

Exit codes: 0 success, 1 grammar load error, 2 suite or profile error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from deepja.grammar.grammar import LoadError, load_grammar
from deepja.harness.items import SuiteError, read_items
from deepja.harness.profile import (
    SuiteMismatchError, compare_profiles, read_profile, run_profile, write_profile,
)
from deepja.mrs import check_wellformed, extract_mrs
from deepja.parser import EDGE_LIMIT, ParseOptions, ResourceLimitExceeded, parse, unpack_nbest
from deepja.preproc import SegmentationGapError, preprocess

EXIT_OK, EXIT_LOAD, EXIT_SUITE = 0, 1, 2


def _grammar(args):
    if args.grammar:
        return load_grammar(args.grammar)
    from deepja.fragment import load_fragment

    return load_fragment()


def _options(args) -> ParseOptions:
    return ParseOptions(qc=args.qc == "on", edge_limit=args.edge_limit)


def cmd_parse(args, out) -> int:
    g = _grammar(args)
    text, spans = preprocess(args.input)
    try:
        forest = parse(text, g, _options(args), spans=spans)
    except (ResourceLimitExceeded, SegmentationGapError) as exc:
        print(f"error: {exc}", file=out)
        return EXIT_OK
    readings = unpack_nbest(forest, args.nbest)
    print(f"input: {args.input}", file=out)
    if text != args.input:
        print(f"preprocessed: {text}", file=out)
    print(f"readings: {len(forest.roots)}", file=out)
    for k, r in enumerate(readings, 1):
        print(f"#{k} score {r.score}", file=out)
        print(r.tree, file=out)
        if args.mrs:
            try:
                m = extract_mrs(forest.root_sign(r.edge), g.hierarchy)
            except Exception as exc:  # noqa: BLE001 - reported, not fatal
                print(f"MRS: not extractable ({exc})", file=out)
                continue
            check = check_wellformed(m)
            print(m.text(properties=True), file=out)
            bg = " ".join(ep.text() for ep in m.background)
            print(f"CONTEXT: < {bg} >".replace("<  >", "< >"), file=out)
            if not check:
                print("ILL-FORMED: " + "; ".join(check.diagnostics), file=out)
    return EXIT_OK


def cmd_batch(args, out) -> int:
    g = _grammar(args)
    if args.suite:
        suite = read_items(args.suite)
    else:
        from deepja.fragment import fragment_regression_items

        suite = fragment_regression_items()
    profile = run_profile(suite, g, _options(args), jobs=args.jobs)
    print(profile.to_table(), end="", file=out)
    if args.profile:
        write_profile(profile, args.profile)
    return EXIT_OK


def cmd_diff(args, out) -> int:
    try:
        old, new = read_profile(args.old), read_profile(args.new)
    except OSError as exc:
        raise SuiteError(str(exc)) from None
    report = compare_profiles(old, new)
    print(report.text() or "no differences", end="" if report else "\n", file=out)
    return EXIT_OK


def cmd_lint(args, out) -> int:
    g = _grammar(args)
    print(f"ok: {len(g.hierarchy)} types, {len(g.lexicon)} entries, "
          f"{len(g.lexrules)} lexical rules, {len(g.rules)} rules, {len(g.roots)} roots", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grammar", help="grammar directory (default: bundled fragment)")
    common.add_argument("--qc", choices=("on", "off"), default="on", help="quick-check filter")
    common.add_argument("--edge-limit", type=int, default=EDGE_LIMIT)
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="deepja", description="Deep parsing of Japanese text.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("parse", parents=[common], help="parse one input")
    p.add_argument("input")
    p.add_argument("--nbest", type=int, default=None, help="show the k best readings")
    p.add_argument("--mrs", action="store_true", help="print the MRS of each reading")
    p.set_defaults(func=cmd_parse)
    b = sub.add_parser("batch", parents=[common], help="profile a test suite")
    b.add_argument("suite", nargs="?", help="suite TSV (default: bundled regression suite)")
    b.add_argument("--profile", help="write the TSV profile here")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_batch)
    d = sub.add_parser("diff", parents=[common], help="compare two profiles")
    d.add_argument("old")
    d.add_argument("new")
    d.set_defaults(func=cmd_diff)
    lt = sub.add_parser("lint", parents=[common], help="load a grammar and report problems")
    lt.set_defaults(func=cmd_lint)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except LoadError as exc:
        print(f"grammar error: {exc}", file=sys.stderr)
        return EXIT_LOAD
    except (SuiteError, SuiteMismatchError) as exc:
        print(f"suite error: {exc}", file=sys.stderr)
        return EXIT_SUITE


if __name__ == "__main__":
    sys.exit(main())
