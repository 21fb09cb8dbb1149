"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import (
    CatalogError,
    load_catalog,
    search_group,
    verify_all,
    verify_row,
)
from .constructions import ConstructionError, dillon16, menon16, verify_line_identities
from .designs import HADAMARD_36, DesignParams, classify, format_set, is_difference_set, read_sets
from .groups import EnumerationError, group_from_text
from .presentation import ParseError
from .repcheck import rep_diagnostics

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _catalog(args):
    return load_catalog(args.catalog)


def _group(args):
    cat = _catalog(args)
    if args.group not in cat.presentations:
        raise UsageError(f"unknown group {args.group!r}; catalog has {', '.join(cat.presentations)}")
    return cat.group(args.group)


def cmd_verify(args) -> int:
    cat = _catalog(args)
    reference = load_catalog() if args.reference is None else load_catalog(args.reference)
    report = verify_all(cat, allow_inverse=args.allow_inverse, reference=reference)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        print("\n".join(report.lines()))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_search(args) -> int:
    G = _group(args)
    try:
        result = search_group(G, args.method)
    except ConstructionError as exc:
        print(f"{args.group}: {exc}")
        print(f"{args.group}: 0 sets, 0 classes")
        return EXIT_OK
    classes = classify(G, result.sets, args.allow_inverse) if result.sets else []
    for k, v in result.summary().items():
        print(f"{k}: {v}")
    print(f"classes: {len(classes)}")
    for c in classes:
        print(f"  {format_set(G, c.representative)}  ({len(c.members)} sets)")
    return EXIT_OK


def cmd_classify(args) -> int:
    G = _group(args)
    with open(args.input) as fh:
        sets = read_sets(G, fh)
    if not sets:
        raise UsageError(f"{args.input}: no sets")
    bad = [s for s in sets if len(s) != HADAMARD_36.k or not is_difference_set(G, s, HADAMARD_36)]
    for s in bad:
        print(f"not a (36,15,6) difference set: {format_set(G, s)}")
    classes = classify(G, sets, args.allow_inverse)
    print(f"{len(sets)} sets, {len(classes)} classes")
    for i, c in enumerate(classes):
        print(f"class {i}: {len(c.members)} member(s), representative {format_set(G, c.representative)}")
    return EXIT_FAIL if bad else EXIT_OK


def cmd_identities(args) -> int:
    H = group_from_text("<a,b: a^3=b^3=[a,b]=1>")
    results = verify_line_identities(H)
    for name, ok in results.items():
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
    return EXIT_OK if all(results.values()) else EXIT_FAIL


def cmd_repcheck(args) -> int:
    cat = _catalog(args)
    try:
        row = cat.row(args.row)
    except KeyError:
        raise UsageError(f"no row labelled {args.row!r}") from None
    outcome = verify_row(cat, row)
    if outcome.transform is None:
        print(f"{row.label}: row does not construct ({outcome.message})")
        return EXIT_FAIL
    G = cat.group(row.group_id)
    try:
        diags = rep_diagnostics(G, outcome.transform)
    except ValueError as exc:
        raise UsageError(f"{row.label} lives in {row.group_id}: {exc}") from None
    ok = True
    for label, image, product in diags:
        good = product.is_scalar(G.order)
        ok &= good
        print(f"{label}: {'ok' if good else 'FAIL'}")
        print("  phi(S) =")
        print("\n".join("    " + line for line in image.render().splitlines()))
        print("  phi(S) phi(S)* =")
        print("\n".join("    " + line for line in product.render().splitlines()))
    print(f"{row.label}: {'all' if ok else 'not all'} {len(diags)} representations give 36 I")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_product(args) -> int:
    S, D = {"menon16": menon16, "dillon16": dillon16}[args.demo]()
    G = S.group
    ok = is_difference_set(G, D, DesignParams(16, 6, 2))
    print(f"group: {G.presentation.render() if G.presentation else G.label}")
    print(f"transform: {S.render()}")
    print(f"difference set: {{{format_set(G, D)}}}")
    print(f"(16,6,2) difference set: {ok}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(args) -> int:
    G = _group(args)
    try:
        result = search_group(G)
    except ConstructionError as exc:
        raise UsageError(str(exc)) from None
    sets = result.sets
    if not args.all:
        sets = [c.representative for c in classify(G, sets, args.allow_inverse)] if sets else []
    if args.format == "sets":
        print(f"# {args.group}: {len(sets)} set(s), element names are canonical words")
        for s in sets:
            print(format_set(G, s))
    else:
        print(f"# {args.group}: G - 2D, coefficients in element order")
        print("# " + " ".join(G.names))
        for s in sets:
            print("".join("-" if x in s else "+" for x in range(G.order)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hadamard36",
                                     description="(36,15,6) Hadamard difference sets in groups of order 36")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, catalog=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        if catalog:
            p.add_argument("--catalog", default=None,
                           help="catalog file (default: the bundled one)")
        return p

    p = add("verify", cmd_verify, "verify every catalog row and count classes")
    p.add_argument("--allow-inverse", action="store_true", help="also identify D with D^(-1)")
    p.add_argument("--reference", default=None, help="catalog whose classes rows must match")
    p.add_argument("--json", action="store_true")

    p = add("search", cmd_search, "exhaustive search in one group")
    p.add_argument("--group", required=True)
    p.add_argument("--method", choices=("spread", "rds"), default=None)
    p.add_argument("--allow-inverse", action="store_true")

    p = add("classify", cmd_classify, "classify sets read from a file")
    p.add_argument("--group", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--allow-inverse", action="store_true")

    add("identities", cmd_identities, "check the line identities in C3 x C3", catalog=False)

    p = add("repcheck", cmd_repcheck, "verify a row through irreducible representations")
    p.add_argument("--row", required=True)

    p = add("product", cmd_product, "product-theorem demos at order 16", catalog=False)
    p.add_argument("--demo", choices=("menon16", "dillon16"), required=True)

    p = add("export", cmd_export, "write searched sets or transforms")
    p.add_argument("--group", required=True)
    p.add_argument("--format", choices=("sets", "transforms"), default="sets")
    p.add_argument("--all", action="store_true", help="every distinct set, not one per class")
    p.add_argument("--allow-inverse", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CatalogError, ParseError, EnumerationError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
