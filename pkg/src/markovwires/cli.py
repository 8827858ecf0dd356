"""Command-line interface: ``markovwires {eval,analyze,reproduce,export-dot}``."""

from __future__ import annotations

import argparse
import re
import sys

from .analysis import (
    AnalysisReport,
    check_pf_hypotheses,
    deadlock_states,
    probability_series,
    reachable_part,
    seat_eating,
)
from .core import is_markov
from .dsl import Environment, load_source, parse
from .errors import AutomatonError
from .names import parse_name
from .reproduce import DEFAULT_SEED, SUITES, check_lemmas
from .serialize import automaton_to_json, report_to_json, to_dot


class UsageError(Exception):
    pass


def _load(location: str, name: str):
    return Environment(parse(load_source(location)))(name)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_AT = re.compile(r"^at\[(\d+)\]=(.+)$")


def make_predicate(text: str):
    """Target predicates: ``eating``, ``state=NAME`` or ``at[i]=V`` (0-based component)."""
    if text == "eating":
        return lambda q: seat_eating(q) > 0
    if text.startswith("state="):
        want = parse_name(text[len("state="):])
        return lambda q: q == want
    m = _AT.match(text)
    if m:
        i, value = int(m.group(1)), parse_name(m.group(2))
        return lambda q: isinstance(q, tuple) and len(q) > i and q[i] == value
    raise UsageError(f"unknown predicate {text!r}; use eating, state=NAME or at[i]=V")


def cmd_eval(args) -> int:
    _emit(automaton_to_json(_load(args.file, args.name)), args.out)
    return 0


def cmd_analyze(args) -> int:
    if args.steps < 0:
        raise UsageError("--steps must be non-negative")
    aut = _load(args.file, args.name)
    q0 = parse_name(args.initial)
    if args.target == "deadlock":
        predicate = None
    elif args.target.startswith("pred:"):
        predicate = make_predicate(args.target[len("pred:"):])
    else:
        raise UsageError("--target must be 'deadlock' or 'pred:EXPR'")

    closed = len(aut.left) == 1 and len(aut.right) == 1 and is_markov(aut)
    if predicate is None and not closed:
        deadlock_states(aut)  # raises the precise NotClosed / NotMarkov error
    sub, report = reachable_part(aut, q0)
    if closed:
        report = check_pf_hypotheses(aut, q0)
    if predicate is None:
        predicate = set(report.deadlocks).__contains__
    report = AnalysisReport(
        report.initial, report.reachable, report.transition_count, report.deadlocks,
        report.pf_verdict, probability_series(sub, q0, predicate, args.steps, args.mode),
    )
    _emit(report_to_json(report), args.out)
    return 0


def cmd_reproduce(args) -> int:
    if args.which == "lemmas":
        checks = check_lemmas(args.seed, args.count)
    else:
        checks = SUITES[args.which]()
    for c in checks:
        print(c.line())
    return 0 if all(c.ok for c in checks) else 1


def cmd_export_dot(args) -> int:
    _emit(to_dot(_load(args.file, args.name), args.name), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="markovwires", description="Compose and analyse weighted automata with interfaces."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a declaration and print its serialized form")
    p.add_argument("file", help="model file path or builtin:NAME")
    p.add_argument("--name", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("analyze", help="reachability, deadlocks and a probability series")
    p.add_argument("file")
    p.add_argument("--name", required=True)
    p.add_argument("--initial", required=True, help="initial state, e.g. (1,1,1,1)")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--target", default="deadlock", help="deadlock or pred:EXPR")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reproduce", help="run a reference suite")
    p.add_argument("which", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--count", type=int, default=200, help="instances for the lemmas suite")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("export-dot", help="write a Graphviz digraph")
    p.add_argument("file")
    p.add_argument("--name", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        parser.error(str(err))  # exits 2
    except (AutomatonError, OSError, ValueError) as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
