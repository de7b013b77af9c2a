"""Command-line interface.

    multisec analyze <card.json> [--json]
    multisec hilbert <card.json> --ring T|R|omegaT|omegaR [--box lo:hi[,lo:hi...]]
    multisec verify <name|all>
    multisec cards dump <dir>

Exit codes: 0 success, 1 failed verification, 2 validation error,
3 hypothesis failure, 4 missing section oracle.
"""

from __future__ import annotations

import argparse
import sys

from .cards import CardValidationError, card_to_setup, dump_builtin_cards, load_card
from .core import HypothesisFailed, compute_U
from .geometry import NoOracle
from .hilbert import (
    MARKER_OMEGA_T,
    MARKERS,
    DegreeWindow,
    default_window,
    hilbert,
)
from .report import analyze_card, render_json, render_text
from .suites import SUITES, run_suites

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_VALIDATION = 2
EXIT_HYPOTHESIS = 3
EXIT_NO_ORACLE = 4


def _cmd_analyze(args) -> int:
    card = load_card(args.card)
    report = analyze_card(card)
    sys.stdout.write(render_json(report) if args.json else render_text(report))
    return EXIT_OK if report.hypothesis_T else EXIT_HYPOTHESIS


def _parse_box(spec: str, arity: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    parts = spec.split(",")
    if len(parts) == 1:
        parts = parts * arity
    if len(parts) != arity:
        raise CardValidationError(
            f"--box needs 1 or {arity} lo:hi ranges, got {len(parts)}"
        )
    lo, hi = [], []
    for part in parts:
        pieces = part.split(":")
        if len(pieces) != 2:
            raise CardValidationError(f"--box range {part!r} is not of the form lo:hi")
        try:
            lo.append(int(pieces[0]))
            hi.append(int(pieces[1]))
        except ValueError as exc:
            raise CardValidationError(f"--box range {part!r}: {exc}") from exc
    return tuple(lo), tuple(hi)


def _cmd_hilbert(args) -> int:
    card = load_card(args.card)
    setup = card_to_setup(card)
    marker = args.ring
    u_set = compute_U(setup) if marker == MARKER_OMEGA_T else frozenset()
    if args.box is None:
        window = default_window(setup, marker)
    else:
        lo, hi = _parse_box(args.box, setup.s)
        window = DegreeWindow(u_set=u_set, lo=lo, hi=hi)
    table = hilbert(setup, marker, window)
    sys.stdout.write(table.to_csv())
    return EXIT_OK


def _cmd_verify(args) -> int:
    names = sorted(SUITES) if args.name == "all" else [args.name]
    return EXIT_OK if run_suites(names) else EXIT_VERIFY_FAILED


def _cmd_cards_dump(args) -> int:
    for path in dump_builtin_cards(args.directory):
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multisec",
        description="Divisor class groups and graded canonical modules of "
        "multi-section rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze a card")
    analyze.add_argument("card", help="path to a JSON card")
    analyze.add_argument("--json", action="store_true", help="emit JSON")
    analyze.set_defaults(func=_cmd_analyze)

    hilbert_cmd = sub.add_parser("hilbert", help="tabulate graded dimensions")
    hilbert_cmd.add_argument("card", help="path to a JSON card")
    hilbert_cmd.add_argument("--ring", required=True, choices=MARKERS)
    hilbert_cmd.add_argument(
        "--box",
        help="per-coordinate ranges lo:hi[,lo:hi...]; a single range is "
        "applied to every coordinate",
    )
    hilbert_cmd.set_defaults(func=_cmd_hilbert)

    verify = sub.add_parser("verify", help="run builtin verification suites")
    verify.add_argument("name", choices=sorted(SUITES) + ["all"])
    verify.set_defaults(func=_cmd_verify)

    cards = sub.add_parser("cards", help="card utilities")
    cards_sub = cards.add_subparsers(dest="cards_command", required=True)
    dump = cards_sub.add_parser("dump", help="export the builtin cards")
    dump.add_argument("directory")
    dump.set_defaults(func=_cmd_cards_dump)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CardValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except HypothesisFailed as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except NoOracle as exc:
        print(f"no oracle: {exc}", file=sys.stderr)
        return EXIT_NO_ORACLE


if __name__ == "__main__":
    sys.exit(main())
