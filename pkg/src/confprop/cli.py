"""Command line: compute measures, run the proposition audit, check fixtures.

Exit codes: 0 success, 1 input error, 2 a measure is undefined, 3 a verdict
grid or fixture value differs from its reference.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
from typing import List, Optional, Sequence

from .automata.dfa import parse_dfa
from .eventlog import read_log
from .measures import BASELINE_IDS, MEASURES, TABLE_IDS, MeasureConfig, evaluate, get_measure, parse_ids
from .negev import MAX
from .procmodel import read_net
from .values import ConfpropError

EXIT_OK, EXIT_INPUT, EXIT_UNDEFINED, EXIT_MISMATCH = 0, 1, 2, 3


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _window(text: str):
    return MAX if text.lower() == "max" else _positive(text)


def _seeds(text: str) -> List[int]:
    try:
        seeds = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None
    if not seeds:
        raise argparse.ArgumentTypeError("empty seed list")
    return seeds


class _Parser(argparse.ArgumentParser):
    """Argument errors are input errors; exit 2 is reserved for undefined measures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="confprop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="evaluate measures on one log and one model")
    m.add_argument("--log", required=True, help="event log file")
    src = m.add_mutually_exclusive_group(required=True)
    src.add_argument("--net", help="Petri net file")
    src.add_argument("--dfa", help="automaton file")
    m.add_argument("--measure", action="append", required=True,
                   help="measure id; repeat or separate with commas")
    m.add_argument("--k", type=_positive, default=2, help="subset size for projected measures")
    m.add_argument("--window", type=_window, default=MAX, help="negative-event window or 'max'")
    m.add_argument("--policy-seed", type=int, default=0, help="replay tie-breaking seed")
    m.add_argument("--etc-variant", choices=("one", "all", "rep"), default="one")

    s = sub.add_parser("suite", help="audit measures against the propositions")
    s.add_argument("--measures", default=None, help="comma-separated measure ids")
    s.add_argument("--props", default="all", help="'all', a comma list, or a range like RecPro1..5")
    s.add_argument("--all", action="store_true", help="every table and baseline measure")
    s.add_argument("--budget", type=_positive, default=500, help="random instances per cell")
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--eps", type=float, default=None, help="comparison tolerance override")
    s.add_argument("--workers", type=_positive, default=None)
    s.add_argument("--policies", type=_seeds, default=[0, 1, 2, 3],
                   help="replay seeds for determinism checks")
    s.add_argument("--no-fixtures", action="store_true", help="random instances only")
    s.add_argument("--expect", default=None,
                   help="reference grid csv; a bare name falls back to the packaged copy")
    s.add_argument("--format", choices=("csv", "markdown", "json-lines"), default="markdown")
    s.add_argument("--output", default=None, help="write the grid here instead of stdout")
    s.add_argument("--witness-dir", default=None, help="serialize every violation here")

    f = sub.add_parser("fixtures", help="list or verify the shipped fixtures")
    g = f.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--verify", action="store_true")
    f.add_argument("--pins", default=None,
                   help="csv (fixture,measure,log,model,value,policy_seed) replacing the shipped pins")
    return parser


def _err(msg: str) -> None:
    print(f"confprop: error: {msg}", file=sys.stderr)


def cmd_measure(args) -> int:
    try:
        ids = parse_ids(args.measure)
        log = read_log(args.log)
        if args.net:
            model = read_net(args.net)
        else:
            with open(args.dfa, encoding="utf-8") as fh:
                model = parse_dfa(fh.read())
    except (OSError, KeyError, ConfpropError, ValueError) as exc:
        _err(str(exc.args[0]) if isinstance(exc, KeyError) else str(exc))
        return EXIT_INPUT
    config = MeasureConfig(policy_seed=args.policy_seed, k=args.k, window=args.window,
                           etc_variant=args.etc_variant)
    status = EXIT_OK
    for mid in ids:
        if args.dfa and get_measure(mid).needs_net:
            _err(f"{mid} needs a Petri net model")
            return EXIT_INPUT
        try:
            v = evaluate(mid, log, model, config)
        except ConfpropError as exc:
            _err(f"{mid}: {exc}")
            return EXIT_INPUT
        print(f"{mid}\t{v.format(6)}")
        if not v.defined:
            status = EXIT_UNDEFINED
    return status


def _expected_path(name: str) -> Optional[str]:
    if os.path.exists(name):
        return name
    if os.path.basename(name) == "tables_paper.csv":
        return None
    raise FileNotFoundError(name)


def cmd_suite(args) -> int:
    from .propositions import (compare, grid_csv, grid_jsonl, grid_markdown, implication_conflicts,
                               load_expected, parse_props, run_suite, write_witnesses)
    try:
        if args.all:
            measures = list(TABLE_IDS) + list(BASELINE_IDS)
            props = parse_props("all")
        else:
            measures = parse_ids([args.measures or ",".join(TABLE_IDS + BASELINE_IDS)])
            props = parse_props(args.props)
        expected = load_expected(_expected_path(args.expect)) if args.expect else None
    except (OSError, KeyError, ValueError) as exc:
        _err(str(exc.args[0]) if isinstance(exc, KeyError) else str(exc))
        return EXIT_INPUT
    if not measures or not props:
        _err("need at least one measure and one proposition")
        return EXIT_INPUT

    result = run_suite(measures, props, budget=args.budget, seed=args.seed, eps=args.eps,
                       workers=args.workers, policies=args.policies,
                       use_fixtures=not args.no_fixtures)
    render = {"csv": grid_csv, "markdown": grid_markdown, "json-lines": grid_jsonl}[args.format]
    text = render(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.witness_dir:
        write_witnesses(result, args.witness_dir)
    for line in implication_conflicts(result):
        print(f"implication conflict: {line}", file=sys.stderr)

    if expected is None:
        return EXIT_OK
    diffs = compare(result, expected)
    for d in diffs:
        print(f"diff: {d}", file=sys.stderr)
    return EXIT_MISMATCH if diffs else EXIT_OK


def _read_pins(path: str):
    from .propositions.fixtures import Pin
    pins = {}
    with open(path, encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            pin = Pin(row["measure"], row["log"], row["model"], row["value"],
                      int(row.get("policy_seed") or 0))
            pins.setdefault(row["fixture"], []).append(pin)
    return {k: tuple(v) for k, v in pins.items()}


def cmd_fixtures(args) -> int:
    from .propositions.fixtures import FIXTURES, verify
    if args.list:
        for f in FIXTURES:
            props = ",".join(sorted({i.prop for i in f.instances})) or "-"
            print(f"{f.name}\t{len(f.pins)} pins\t{props}\t{f.description}")
        return EXIT_OK
    try:
        pins = _read_pins(args.pins) if args.pins else None
    except (OSError, KeyError, ValueError) as exc:
        _err(f"cannot read pins: {exc}")
        return EXIT_INPUT
    drift = verify(pins=pins)
    for d in drift:
        p = d.pin
        print(f"drift: {d.fixture}: {p.measure}({p.log}, {p.model}, seed {p.policy_seed}) "
              f"pinned {p.value}, got {d.got}")
    if drift:
        return EXIT_MISMATCH
    print(f"{len(FIXTURES)} fixtures verified")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"measure": cmd_measure, "suite": cmd_suite, "fixtures": cmd_fixtures}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
