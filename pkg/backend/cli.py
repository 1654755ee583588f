"""
Command-line surface for SET-style deck hand theory.

Examples:
  python main.py classify "0000 1111 2222"
  python main.py iso "0000 0001 0002" "0000 0010 0020"
  python main.py table --n-max 4
  python main.py burnside --method cycle-index --k 4 --d 9 --max-n 11
  python main.py count stun
  python main.py deal --size 12 --seed 1
  python main.py verify
"""

import argparse
import dataclasses
import logging
import sys
from typing import List, Optional, Tuple

from config import config
from deck_system import DeckSystem
from errors import CapacityError, DeckError
from hand_parser import HandParser
from models import DeckSpec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=None, help="values per attribute")
    common.add_argument("--d", type=int, default=None, help="number of attributes")
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--seed", type=int, default=1, help="random seed")
    common.add_argument("--cap-group", type=int, default=None, help="group size cap")
    common.add_argument(
        "--cap-subsets", type=int, default=None, help="subset enumeration cap"
    )
    return common


def _goal_options(parser: argparse.ArgumentParser) -> None:
    target = parser.add_mutually_exclusive_group(required=True)
    target.add_argument("--goal", choices=["set", "stun", "quad", "soot"])
    target.add_argument("--goal-hand", help="collect hands isomorphic to this hand")


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="set-hands",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="class of a hand")
    p.add_argument("hand", help='hand text, e.g. "0000 1111 2222"')

    p = sub.add_parser("iso", parents=[common], help="decide isomorphism")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("table", parents=[common], help="classes of n-card hands")
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--strategy", choices=["auto", "scan", "augment"], default="auto")

    p = sub.add_parser("burnside", parents=[common], help="class counts by Burnside")
    p.add_argument("--method", choices=["element", "cycle-index"], default="element")
    p.add_argument("--max-n", type=int, default=None)

    p = sub.add_parser("find", parents=[common], help="goal hands on a board")
    p.add_argument("board_file", help="board file, '-' for stdin")
    _goal_options(p)

    p = sub.add_parser("deal", parents=[common], help="deal a seeded board")
    p.add_argument("--size", type=int, default=12)

    p = sub.add_parser("partition", parents=[common], help="split a board into goals")
    p.add_argument("board_file", help="board file, '-' for stdin")
    _goal_options(p)

    p = sub.add_parser("count", parents=[common], help="goal hands in the whole deck")
    p.add_argument("goal", nargs="?", choices=["set", "stun", "quad", "soot"])
    p.add_argument("--goal-hand", default=None)

    p = sub.add_parser("inducers", parents=[common], help="elements inducing a map")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("mapping_file", help="'x->y' lines, '-' for stdin")
    p.add_argument("--limit", type=int, default=None)

    sub.add_parser("verify", parents=[common], help="run the self-check battery")
    return parser


def _read_input(path: str, spec: DeckSpec) -> str:
    if path == "-":
        return sys.stdin.read()
    return HandParser(spec).read_file(path)


def _system_for(args: argparse.Namespace) -> DeckSystem:
    overrides = {}
    if args.cap_group is not None:
        overrides["GROUP_CAP"] = args.cap_group
    if args.cap_subsets is not None:
        overrides["SUBSET_CAP"] = args.cap_subsets
    return DeckSystem(dataclasses.replace(config, **overrides))


def _run(args: argparse.Namespace) -> Tuple[object, List[str], int]:
    """Dispatch a parsed command; returns (report, text lines, exit code)"""
    system = _system_for(args)
    deck = {"k": args.k, "d": args.d}
    command = args.command

    if command == "classify":
        report = system.classify(args.hand, **deck)
        return report, [report.line, f"automorphisms={report.automorphisms}"], EXIT_OK

    if command == "iso":
        report = system.compare(args.first, args.second, **deck)
        if not report.isomorphic:
            return report, [f"not isomorphic: {report.reason}"], EXIT_OK
        lines = ["isomorphic", report.element, *report.table, *report.mapping]
        return report, lines, EXIT_OK

    if command == "table":
        report = system.class_table(args.n_min, args.n_max, args.strategy, **deck)
        lines = []
        for row in report.rows:
            lines.append(f"n={row.n} classes={row.classes} total={row.total}")
            lines.extend(f"  {record}" for record in row.records)
        return report, lines, EXIT_OK

    if command == "burnside":
        report = system.burnside(args.method, args.max_n, **deck)
        lines = [f"{n} {count}" for n, count in enumerate(report.counts)]
        if report.palindrome is not None:
            lines.append(f"palindrome: {'yes' if report.palindrome else 'no'}")
        return report, lines, EXIT_OK

    if command in ("find", "partition"):
        spec = system.spec(**deck)
        board = _read_input(args.board_file, spec)
        if command == "find":
            report = system.find(board, args.goal, args.goal_hand, **deck)
            lines = [*report.hands, f"{len(report.hands)} of {report.scanned} hands"]
            return report, lines, EXIT_OK
        report = system.partition(board, args.goal, args.goal_hand, **deck)
        return report, [" | ".join(report.blocks or []) or "none"], EXIT_OK

    if command == "deal":
        report = system.deal(args.size, args.seed, **deck)
        return report, [report.hand], EXIT_OK

    if command == "count":
        report = system.count(args.goal, args.goal_hand, **deck)
        return report, [report.text], EXIT_OK

    if command == "inducers":
        spec = system.spec(**deck)
        mapping = _read_input(args.mapping_file, spec)
        report = system.inducers(args.first, args.second, mapping, args.limit, **deck)
        return report, [f"count={report.count}", *report.elements], EXIT_OK

    report = system.verify(**deck)
    lines = [
        f"{'PASS' if c.passed else 'FAIL'} {c.name}: "
        + (c.actual if c.passed else f"expected {c.expected}, got {c.actual}")
        for c in report.checks
    ]
    return report, lines, EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=config.LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    try:
        report, lines, code = _run(args)
    except CapacityError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DeckError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
