"""Command-line interface.

Exit status is 0 for admissible / passing results, 1 for inadmissible /
failing ones and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Optional, Sequence

from . import __version__
from .constraints import enumerate_beta_partitions
from .engine import PROFILES, ConstraintProfile, admissible_l, check, paper_table_report
from .trees import ExceptionalTree, TreeError, TreeNode, tree_report

log = logging.getLogger("k3maps")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("text", "json", "csv", "markdown")


class InputError(Exception):
    """Bad input file; rendered on stderr with exit status 2."""


def _ints(values) -> str:
    return " ".join(map(str, values))


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return _ints(value)
    return str(value)


def render_records(records: list[dict], fmt: str) -> str:
    """Render flat records; every format carries the same cells."""
    if fmt == "json":
        return json.dumps(records, indent=2)
    keys = list(records[0]) if records else []
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        for r in records:
            writer.writerow([_cell(r[k]) for k in keys])
        return buf.getvalue().rstrip("\n")
    if fmt == "markdown":
        lines = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
        for r in records:
            lines.append("| " + " | ".join(_cell(r[k]) for k in keys) + " |")
        return "\n".join(lines)
    blocks = []
    for r in records:
        width = max(map(len, keys))
        blocks.append("\n".join(f"{k.ljust(width)}  {_cell(r[k])}" for k in keys))
    return "\n\n".join(blocks)


# -- tree files -----------------------------------------------------------------


def parse_tree_document(text: str) -> ExceptionalTree:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("nodes"), list):
        raise InputError('expected an object with a "nodes" list')
    seen: set[int] = set()
    nodes = []
    for pos, rec in enumerate(doc["nodes"], start=1):
        if not isinstance(rec, dict):
            raise InputError(f"node #{pos}: expected an object")
        extra = set(rec) - {"id", "parent", "gamma"}
        if extra:
            raise InputError(f"node #{pos}: unknown keys {sorted(extra)}")
        id_, parent, gamma = rec.get("id"), rec.get("parent"), rec.get("gamma")
        for key, val in (("id", id_), ("parent", parent), ("gamma", gamma)):
            if val is not None and (not isinstance(val, int) or isinstance(val, bool)):
                raise InputError(f"node #{pos}: {key} must be an integer")
        if id_ is None or id_ < 1:
            raise InputError(f"node #{pos}: id must be a positive integer")
        if id_ in seen:
            raise InputError(f"node #{pos}: duplicate id {id_}")
        if parent is not None and parent not in seen:
            raise InputError(
                f"node {id_}: parent {parent} must be listed (and blown up) before its child"
            )
        seen.add(id_)
        nodes.append(TreeNode(id_, parent, gamma))
    try:
        return ExceptionalTree(tuple(nodes))
    except TreeError as exc:
        raise InputError(str(exc)) from None


# -- commands -----------------------------------------------------------------


def cmd_check(args) -> int:
    v = check(args.g, args.deg, args.l, args.profile)
    if args.format == "json":
        print(json.dumps(v.to_dict(), indent=2))
    elif args.format == "text":
        status = "admissible" if v.admissible else f"inadmissible ({v.reason.value})"
        print(status)
        print(render_records([v.to_dict()], "text"))
    else:
        print(render_records([v.to_dict()], args.format))
    return EXIT_OK if v.admissible else EXIT_FAIL


def cmd_table(args) -> int:
    table = admissible_l(args.g, args.deg, args.l_max, args.profile, workers=args.workers)
    if args.format == "json":
        print(json.dumps(table.to_dict(), indent=2))
    elif args.format == "text":
        print(", ".join(map(str, table.admissible_l)))
    else:
        records = [
            {k: val for k, val in v.to_dict().items() if k not in ("g", "deg", "profile")}
            for v in table.verdicts
        ]
        print(render_records(records, args.format))
    return EXIT_OK


def cmd_paper_report(args) -> int:
    report = paper_table_report(args.terms)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
        return EXIT_OK
    records = []
    for row in report.rows:
        for res in row.results:
            records.append(
                {
                    "deg": row.deg,
                    "g": row.g,
                    "profile": res.profile,
                    "row_profile": res.profile == row.row_profile,
                    "paper": list(row.paper),
                    "computed": list(res.computed),
                    "status": res.status,
                }
            )
    if args.format == "text":
        print(f"{'deg':>3} {'g':>2}  {'paper':<14}", end="")
        for name in PROFILES:
            print(f"  {name:<24}", end="")
        print()
        for row in report.rows:
            print(f"{row.deg:>3} {row.g:>2}  {', '.join(map(str, row.paper)):<14}", end="")
            for res in row.results:
                mark = "*" if res.profile == row.row_profile else " "
                cell = f"{res.status}{mark} {', '.join(map(str, res.computed))}"
                print(f"  {cell:<24}", end="")
            print()
        print("(* = profile used for the row)")
        print()
        for line in report.narrative:
            print(line)
        flagged = report.flagged
        print()
        print(f"{len(report.rows) - len(flagged)} rows MATCH, {len(flagged)} flagged")
    else:
        print(render_records(records, args.format))
    return EXIT_OK


def cmd_partitions(args) -> int:
    parts = enumerate_beta_partitions(args.n, args.p_cap)
    if args.format == "json":
        print(json.dumps([list(p.parts) for p in parts]))
    elif args.format == "text":
        for p in parts:
            print(p)
    else:
        records = [{"parts": list(p.parts), "p": p.p, "sum": p.sum, "sum_sq": p.sum_sq} for p in parts]
        if records:
            print(render_records(records, args.format))
    return EXIT_OK


def cmd_tree_verify(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    tree = parse_tree_document(text)
    rep = tree_report(tree, args.deg)
    record = {
        "deg": args.deg,
        "depths": list(rep.depths),
        "tree_depth": rep.tree_depth,
        "betas": None if rep.betas is None else list(rep.betas),
        "minimal": rep.minimal,
        "depth_ok": rep.depth_ok,
        "width_ok": rep.width_ok,
        "leaf_pair_ok": rep.leaf_pair_ok,
        "passed": rep.passed,
    }
    if args.format == "json":
        print(json.dumps(record, indent=2))
    else:
        print(render_records([record], args.format))
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- argument parsing -----------------------------------------------------------


def _positive(minimum: int):
    def conv(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {value}")
        return value

    return conv


def _profile(text: str) -> ConstraintProfile:
    try:
        return ConstraintProfile.resolve(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3maps",
        description="Numerical admissibility of self-rational maps of generic polarized K3 surfaces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")

    prof = argparse.ArgumentParser(add_help=False)
    prof.add_argument(
        "--profile",
        type=_profile,
        default=PROFILES["basic"],
        help="basic, amerik, full, or a comma-separated subset of "
        "square,divisibility,partition,amerik,tree_shapes",
    )

    p = sub.add_parser("check", parents=[common, prof], help="decide one (g, deg, l) triple")
    p.add_argument("--g", type=_positive(2), required=True)
    p.add_argument("--deg", type=_positive(1), required=True)
    p.add_argument("--l", type=_positive(1), required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table", parents=[common, prof], help="admissible l in 2..l_max")
    p.add_argument("--g", type=_positive(2), required=True)
    p.add_argument("--deg", type=_positive(1), required=True)
    p.add_argument("--l-max", type=_positive(2), required=True)
    p.add_argument("--workers", type=_positive(1), default=1)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("paper-report", parents=[common], help="compare with the published tables")
    p.add_argument("--terms", type=_positive(3), default=3)
    p.set_defaults(func=cmd_paper_report)

    p = sub.add_parser("partitions", parents=[common], help="square partitions with even sum")
    p.add_argument("--n", type=_positive(1), required=True)
    p.add_argument("--p-cap", type=_positive(1), default=None)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("tree-verify", parents=[common], help="check an exceptional tree file")
    p.add_argument("file")
    p.add_argument("--deg", type=_positive(2), required=True)
    p.set_defaults(func=cmd_tree_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except InputError as exc:
        print(f"k3maps {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"k3maps {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
