"""Command line front end.

Payload flags accept either an inline value (``--tree "3 3 5 5 0"``) or a
file indirection (``--tree @tree.txt``).  Exit status convention: 0 when the
queried property holds (or the command simply succeeded), 1 when it fails,
2 on input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .bijections import borie_map, pair_to_prime, prime_to_pair
from .census import census as run_census
from .census import roundtrip_suite, theorem53_suite
from .errors import TreeParkError, UsageError
from .parking import is_parking_function, is_prime, park, used_edges
from .series import (
    IDENTITY_NAMES,
    check_identities,
    closed_counts,
)
from .trees import (
    format_plane_tree,
    format_rooted_tree,
    format_word,
    parse_permutation,
    parse_plane_tree,
    parse_preferences,
    parse_rooted_tree,
)


def _payload(value: str) -> str:
    if value.startswith("@"):
        try:
            return Path(value[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {value[1:]!r}: {exc}") from exc
    return value


def _cmd_park(args: argparse.Namespace) -> int:
    tree = parse_rooted_tree(_payload(args.tree))
    prefs = parse_preferences(_payload(args.seq))
    outcome = park(tree, prefs)
    print("spots: " + " ".join("-" if s is None else str(s) for s in outcome.spots))
    return 0 if outcome.all_parked else 1


def _cmd_check(args: argparse.Namespace) -> int:
    tree = parse_rooted_tree(_payload(args.tree))
    prefs = parse_preferences(_payload(args.seq))
    ok = is_parking_function(tree, prefs)
    print(f"parking-function: {'true' if ok else 'false'}")
    return 0 if ok else 1


def _cmd_prime(args: argparse.Namespace) -> int:
    tree = parse_rooted_tree(_payload(args.tree))
    prefs = parse_preferences(_payload(args.seq))
    ok = is_prime(tree, prefs)
    print(f"prime: {'true' if ok else 'false'}")
    return 0 if ok else 1


def _cmd_used_edges(args: argparse.Namespace) -> int:
    tree = parse_rooted_tree(_payload(args.tree))
    prefs = parse_preferences(_payload(args.seq))
    edges = used_edges(tree, prefs)
    print("used-edges: " + " ".join(f"{u}->{v}" for u, v in edges))
    return 0


def _cmd_psi(args: argparse.Namespace) -> int:
    tree = parse_rooted_tree(_payload(args.tree))
    prefs = parse_preferences(_payload(args.seq))
    word, plt = prime_to_pair(tree, prefs)
    print("sigma: " + format_word(word))
    print(format_plane_tree(plt))
    if args.check:
        back_tree, back_prefs = pair_to_prime(word, plt)
        if back_tree != tree or back_prefs != prefs:
            print("roundtrip: mismatch", file=sys.stderr)
            return 1
        print("roundtrip: ok")
    return 0


def _cmd_psi_inv(args: argparse.Namespace) -> int:
    word = parse_permutation(_payload(args.perm))
    plt = parse_plane_tree(_payload(args.ptree))
    tree, prefs = pair_to_prime(word, plt)
    print("tree: " + format_rooted_tree(tree))
    print("seq: " + format_word(prefs))
    if args.check:
        word2, plt2 = prime_to_pair(tree, prefs)
        if word2 != word or plt2 != plt:
            print("roundtrip: mismatch", file=sys.stderr)
            return 1
        print("roundtrip: ok")
    return 0


def _cmd_borie(args: argparse.Namespace) -> int:
    word = parse_permutation(_payload(args.perm))
    print("seq: " + format_word(borie_map(word)))
    return 0


def _cmd_series(args: argparse.Namespace) -> int:
    names = list(IDENTITY_NAMES) if args.identity == "all" else [args.identity]
    failed = False
    for result in check_identities(args.order, names):
        if result.first_bad is None:
            print(f"{result.name}: OK (zero to order {result.order})")
        elif result.expected_zero:
            k, value = result.first_bad
            print(f"{result.name}: FAIL first nonzero at x^{k} = {value}")
            failed = True
        else:
            k, value = result.first_bad
            print(f"{result.name}: INFO first nonzero at x^{k} = {value} (not expected to vanish)")
    return 1 if failed else 0


_COUNT_HEADER = ("n", "F", "P", "Ftilde", "Ptilde", "Pstar", "Fstar")


def _count_cells(row) -> tuple[int, ...]:
    return (
        row.n,
        row.parking,
        row.prime,
        row.distribution,
        row.prime_distribution,
        row.marked_prime,
        row.marked_distribution,
    )


def _cmd_counts(args: argparse.Namespace) -> int:
    table = closed_counts(args.max)
    if args.format == "json":
        payload = [dict(zip(_COUNT_HEADER, _count_cells(row))) for row in table.rows]
        print(json.dumps(payload, indent=None, separators=(",", ":")))
    else:
        print("\t".join(_COUNT_HEADER))
        for row in table.rows:
            print("\t".join(str(c) for c in _count_cells(row)))
    return 0


def _verify_rows(args: argparse.Namespace) -> list[dict]:
    rows: list[dict] = []
    suites = ["census", "roundtrip", "thm53"] if args.suite == "all" else [args.suite]

    if "census" in suites:
        top = min(args.max_n or 5, 6 if args.allow_large else 5)
        for n in range(1, top + 1):
            report = run_census(n, allow_large=args.allow_large)
            for col in report.columns:
                rows.append(
                    {
                        "suite": "census",
                        "n": n,
                        "metric": col.name,
                        "counted": col.counted,
                        "expected": col.expected,
                        "status": "PASS" if col.passed else "FAIL",
                    }
                )
    if "roundtrip" in suites:
        for n in range(1, min(args.max_n or 4, 4) + 1):
            report = roundtrip_suite(n)
            rows.append(_suite_row(report))
    if "thm53" in suites:
        for n in range(1, min(args.max_n or 6, 7) + 1):
            report = theorem53_suite(n)
            rows.append(_suite_row(report))
    return rows


def _suite_row(report) -> dict:
    detail = report.failures[0] if report.failures else ""
    return {
        "suite": report.name,
        "n": report.n,
        "metric": "cases",
        "counted": report.cases,
        "expected": report.cases if report.passed else detail,
        "status": "PASS" if report.passed else "FAIL",
    }


def _cmd_verify(args: argparse.Namespace) -> int:
    rows = _verify_rows(args)
    if args.format == "json":
        print(json.dumps(rows, indent=None, separators=(",", ":")))
    else:
        print("\t".join(("suite", "n", "metric", "counted", "expected", "status")))
        for row in rows:
            print(
                "\t".join(
                    str(row[k]) for k in ("suite", "n", "metric", "counted", "expected", "status")
                )
            )
    return 0 if all(row["status"] == "PASS" for row in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treepark",
        description="Parking functions on rooted trees: simulate, map, count, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    for name, func, help_ in (
        ("park", _cmd_park, "run the parking procedure and print the spots"),
        ("check", _cmd_check, "is the pair a parking function?"),
        ("prime", _cmd_prime, "is the pair a prime parking function?"),
        ("used-edges", _cmd_used_edges, "edges used by a parking function, in crossing order"),
    ):
        p = add(name, func, help_)
        p.add_argument("--tree", required=True, help="parent list, 0 marks the root (or @file)")
        p.add_argument("--seq", required=True, help="preference sequence (or @file)")

    p = add("psi", _cmd_psi, "map a prime pair to (permutation, labeled plane tree)")
    p.add_argument("--tree", required=True, help="parent list (or @file)")
    p.add_argument("--seq", required=True, help="preference sequence (or @file)")
    p.add_argument("--check", action="store_true", help="also run the inverse and compare")

    p = add("psi-inv", _cmd_psi_inv, "map (permutation, labeled plane tree) to a prime pair")
    p.add_argument("--perm", required=True, help="one-line permutation (or @file)")
    p.add_argument("--ptree", required=True, help="plane tree, e.g. *[2[1]] (or @file)")
    p.add_argument("--check", action="store_true", help="also run the forward map and compare")

    p = add("borie", _cmd_borie, "statistic map from a 132-avoiding permutation")
    p.add_argument("--perm", required=True, help="one-line permutation (or @file)")

    p = add("series", _cmd_series, "verify generating-function identities")
    p.add_argument("--order", type=int, default=12, help="truncation order (default 12)")
    p.add_argument(
        "--identity",
        default="all",
        choices=("all",) + IDENTITY_NAMES,
        help="which identity to check (default: all)",
    )

    p = add("counts", _cmd_counts, "exact count table")
    p.add_argument("--max", type=int, default=12, help="largest n (default 12)")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")

    p = add("verify", _cmd_verify, "run exhaustive verification suites")
    p.add_argument("--suite", choices=("census", "roundtrip", "thm53", "all"), default="all")
    p.add_argument("--max-n", type=int, default=None, help="cap the sizes each suite visits")
    p.add_argument("--allow-large", action="store_true", help="unlock the n=6 census")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except TreeParkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
