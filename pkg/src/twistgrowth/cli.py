"""Command-line front end.

    twistgrowth validate GROUP
    twistgrowth growth GROUP [--terms N]
    twistgrowth twisted GROUP --endo NAME [--terms N]
    twistgrowth relative GROUP --endo NAME --element a,b,...
    twistgrowth oracle GROUP --endo NAME [--radius R]
    twistgrowth check GROUP --endo NAME [--radius R]

GROUP is a JSON description or the name of a bundled example.  Exit codes:
0 success, 1 pipeline/oracle mismatch, 2 bad input, 3 pattern cap exceeded,
4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .genfunc import ImproperWeightError
from .oracle import class_counts, growth_table, table_csv
from .patterns import DEFAULT_PATTERN_CAP, PatternCapError
from .ratfun import RationalSeries
from .relative import RelativePipeline, standard_growth_series
from .twisted import METHODS, InvariantBreach, TwistedPipeline, check_cumulative
from .vagroup import GroupDescription, GroupElement, GroupFormatError, InvalidGroupError, load_group

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_CAP, EXIT_INVARIANT = 0, 1, 2, 3, 4


def emit(series: RationalSeries, terms: int) -> dict:
    return {**series.to_json(), "coefficients": series.expand(terms)}


def parse_element(group: GroupDescription, text: str) -> GroupElement:
    """Comma-separated generator names or group letters (e1, E1, transversal labels)."""
    by_name = {g.name: s for g, (s, _) in zip(group.generators, group.sigma)}
    out = group.one
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        out = group.multiply(out, by_name[tok] if tok in by_name else group.letter(tok))
    return out


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistgrowth", description="Growth series of virtually abelian groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, endo: bool) -> None:
        p.add_argument("group", help="JSON description or bundled name (zn, z_phi_neg, dihedral, klein)")
        if endo:
            p.add_argument("--endo", required=True, help="endomorphism name from the description")
        p.add_argument("--terms", type=int, default=12)
        p.add_argument("--radius", type=int, default=6)
        p.add_argument("--pattern-cap", type=int, default=DEFAULT_PATTERN_CAP)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--reverse-order", action="store_true", help="process patterns in reverse order")
        p.add_argument("--literal", action="store_true", help="use the unreduced pattern set")
        p.add_argument("--debug-sets", action="store_true", help="include the polyhedral sets in the output")

    p = sub.add_parser("validate", help="check a group description")
    p.add_argument("group")
    common(sub.add_parser("growth", help="standard growth series"), endo=False)
    p = sub.add_parser("twisted", help="twisted conjugacy growth series")
    common(p, endo=True)
    p.add_argument("--method", choices=METHODS, default="canonical")
    p = sub.add_parser("relative", help="relative growth series of one twisted class")
    common(p, endo=True)
    p.add_argument("--element", required=True, help="comma-separated letters")
    common(sub.add_parser("oracle", help="brute-force table as CSV"), endo=True)
    common(sub.add_parser("check", help="compare the twisted series with the oracle"), endo=True)
    return ap


def _options(args) -> dict:
    return {"reduce": not args.literal, "order": "reverse" if args.reverse_order else "forward",
            "cap": args.pattern_cap, "seed": args.seed}


def _run(args, out) -> int:
    if args.command == "validate":
        group = load_group(args.group, validate=False)
        report = group.validate()
        print(json.dumps(report.to_json(), indent=1), file=out)
        return EXIT_OK if report.ok else EXIT_INPUT

    if args.terms < 1 or args.radius < 0:
        raise GroupFormatError("--terms must be >= 1 and --radius >= 0")
    group = load_group(args.group)
    if args.command == "growth":
        series = standard_growth_series(group, **_options(args))
        check_cumulative(series, args.terms)
        print(json.dumps(emit(series, args.terms)), file=out)
        return EXIT_OK

    endo = group.endo(args.endo)
    if args.command == "oracle":
        out.write(table_csv(growth_table(group, endo, args.radius)))
        return EXIT_OK

    if args.command == "relative":
        g = parse_element(group, args.element)
        series = RelativePipeline(group, endo, **_options(args)).series(g)
        check_cumulative(series, args.terms)
        print(json.dumps({**emit(series, args.terms), "element": str(g)}), file=out)
        return EXIT_OK

    pipe = TwistedPipeline(group, endo, **_options(args))
    method = getattr(args, "method", "canonical")
    result = pipe.canonical() if method == "canonical" else pipe.tuples()
    check_cumulative(result.series, max(args.terms, args.radius + 1))
    doc = {"series": result.series.to_json(), "coefficients": result.series.expand(args.terms),
           "tuples": result.tuples, "patterns": result.patterns}
    if args.debug_sets:
        doc["sets"] = {k: L.to_json() for k, L in result.languages}
    if args.command == "twisted":
        print(json.dumps(doc), file=out)
        return EXIT_OK
    pipeline = result.series.expand(args.radius + 1)
    oracle = class_counts(group, endo, args.radius)
    bad = [k for k in range(args.radius + 1) if pipeline[k] != oracle[k]]
    doc.update({"pipeline": pipeline, "oracle": oracle, "mismatch": bad})
    print(json.dumps(doc), file=out)
    return EXIT_MISMATCH if bad else EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _run(args, sys.stdout)
    except InvalidGroupError as exc:
        print(json.dumps(exc.report.to_json(), indent=1), file=sys.stderr)
        return EXIT_INPUT
    except (GroupFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PatternCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InvariantBreach, ImproperWeightError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
