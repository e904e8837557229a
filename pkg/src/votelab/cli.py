"""Command-line front end.

Exit codes: 0 success, 1 bad input or usage, 2 tie under ``--require-winner``,
3 reproduction mismatch.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import reproduce, scenarios
from .ballots import candidate_labels, pairwise_tally
from .criteria import Criterion, SearchSpace, search_violations
from .experiments import StudyConfig, run_full_study
from .io import BallotFileError, outcome_to_dict, read_ballots, report_to_dict
from .rules import get_rule
from .strategy import discretize_profile, min_flippers

EXIT_OK, EXIT_INPUT, EXIT_TIE, EXIT_MISMATCH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _rule(args):
    return get_rule(args.rule, args.metric if args.rule == "minimax" else None)


def _stamp(args, extra: dict) -> list[str]:
    lines = []
    if not args.deterministic:
        lines.append(f"generated {datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds')}")
    lines.append("config " + json.dumps(extra, sort_keys=True))
    return lines


def _names(outcome, names):
    if outcome.winner is not None:
        return names[outcome.winner]
    return "tie: " + ", ".join(names[c] for c in sorted(outcome.tied))


def cmd_tally(args) -> int:
    try:
        profile, names = read_ballots(args.input)
    except BallotFileError as e:
        print(f"{args.input}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"{args.input}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT
    if args.grades:
        profile = discretize_profile(profile, args.bin_width, args.grades)
    try:
        outcome = _rule(args)(profile)
    except ValueError as e:
        print(f"{args.input}: {e}", file=sys.stderr)
        return EXIT_INPUT
    tally = pairwise_tally(profile)
    if args.format == "json":
        doc = outcome_to_dict(outcome, names)
        doc["pairwise"] = tally.n.tolist()
        doc["candidates"] = names
        print(json.dumps(doc, indent=2))
    else:
        print(f"winner: {_names(outcome, names)}")
        for key, value in outcome.trace.items():
            if isinstance(value, tuple) and len(value) == len(names):
                value = "  ".join(f"{n}={_short(v)}" for n, v in zip(names, value))
            elif isinstance(value, dict):
                value = "  ".join(f"{names[c]}={_short(v)}" for c, v in value.items())
            print(f"{key}: {value}")
        width = max(len(n) for n in names)
        print("pairwise (row preferred to column):")
        print(" " * width + "  " + "  ".join(f"{n:>{width}}" for n in names))
        for n, row in zip(names, tally.n):
            print(f"{n:>{width}}  " + "  ".join(f"{x:>{width}}" for x in row))
    if args.require_winner and outcome.winner is None:
        return EXIT_TIE
    return EXIT_OK


def _short(v):
    if isinstance(v, float):
        return f"{v:g}" if v.is_integer() else f"{v:.4f}"
    return str(v)


def cmd_reproduce(args) -> int:
    fn = reproduce.TARGETS[args.target]
    if args.target == "study":
        checks = fn(seed=args.seed, trials=args.trials, jobs=args.jobs)
    else:
        checks = fn()
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_simulate(args) -> int:
    config = StudyConfig(tuple(args.voters), tuple(args.b_pos), args.trials, args.seed)
    result = run_full_study(config, jobs=args.jobs)
    stamp = _stamp(args, {"voters": config.voter_counts, "b_pos": config.b_positions,
                          "trials": config.trials_per_cell, "seed": config.master_seed})
    if args.format == "json":
        out = result.to_json()
    elif args.format == "csv":
        out = result.to_csv(tuple(stamp))
    else:
        out = "\n".join(f"# {s}" for s in stamp) + "\n" + _table(result)
    _emit(out, args.output)
    return EXIT_OK


def _table(result) -> str:
    head = f"{'voters':>6} {'B':>5} {'MR only':>8} {'MJD only':>9} {'both A':>7} {'both B':>7} {'ties':>5} {'ratio':>7}"
    lines = [head]
    for c in result.cells:
        lines.append(f"{c.n_voters:>6} {c.b_pos:>5.2f} {c.mr_only:>8} {c.mjd_only:>9} {c.both_a:>7} "
                     f"{c.neither_a:>7} {c.tie_trials:>5} {c.ratio:>7.2f}")
    return "\n".join(lines) + "\n"


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _candidate(token: str, names: list[str]) -> int:
    if token in names:
        return names.index(token)
    try:
        return int(token)
    except ValueError:
        raise BallotFileError(f"unknown candidate {token!r}") from None


def cmd_attack(args) -> int:
    if args.input:
        try:
            profile, names = read_ballots(args.input)
        except (BallotFileError, OSError) as e:
            print(f"{args.input}: {e}", file=sys.stderr)
            return EXIT_INPUT
    else:
        profile, names = scenarios.spatial_percentile_profile(), ["A", "B"]
    try:
        favored, opponent = _candidate(args.favored, names), _candidate(args.opponent, names)
    except BallotFileError as e:
        print(str(e), file=sys.stderr)
        return EXIT_INPUT
    rule = _rule(args)
    if args.grades:
        base = rule
        rule = lambda p: base(discretize_profile(p, args.bin_width, args.grades))  # noqa: E731
    try:
        k = min_flippers(profile, rule, favored, opponent)
    except ValueError as e:
        print(str(e), file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        print(json.dumps({"rule": args.rule, "favored": names[favored], "opponent": names[opponent],
                          "min_flippers": k}))
    else:
        print("none" if k is None else k)
    return EXIT_OK


def cmd_criteria(args) -> int:
    space = SearchSpace(args.candidates, args.min_voters, args.max_voters, args.ballots,
                        args.grades_space, args.truncated, args.blocs)
    try:
        report = search_violations(_rule(args), args.criterion, space,
                                   np.random.default_rng(args.seed), args.budget)
    except ValueError as e:
        print(str(e), file=sys.stderr)
        return EXIT_INPUT
    names = candidate_labels(args.candidates)
    if args.format == "json":
        doc = report_to_dict(report, names) if report else {"criterion": args.criterion, "violated": False}
        doc["search"] = {"rule": args.rule, "seed": args.seed, "budget": args.budget,
                         "space": space.__dict__}
        print(json.dumps(doc, indent=2))
    elif report is None:
        print(f"no {args.criterion} violation found within {args.budget} profiles")
    else:
        w = report.witness
        print(f"{report.criterion.value} violated: {w.detail}")
        for p, o in zip(w.profiles, w.outcomes):
            pn = names
            if p.candidate_count < len(names):
                pn = [n for c, n in enumerate(names) if c != w.detail["removed"]]
            print(f"  profile {p!r} -> {_names(o, pn)}")
            for i in range(len(p)):
                b = p.ballot(i)
                shown = ">".join(pn[c] for c in b) if not p.is_rated else " ".join(f"{x:g}" for x in b)
                print(f"    {int(p.weights[i])} x {shown}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="votelab", description="Voting rules, criteria and spatial simulations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def rule_opts(p, default="minimax"):
        p.add_argument("--rule", default=default,
                       choices=["majority", "mr", "approval", "range", "rv", "mj", "mjd", "minimax"])
        p.add_argument("--metric", default="margin", choices=["margin", "winning-votes"],
                       help="minimax loss metric")
        p.add_argument("--format", default="text", choices=["text", "csv", "json"])

    p = sub.add_parser("tally", help="tally a ballot file")
    p.add_argument("input")
    rule_opts(p)
    p.add_argument("--grades", type=int, default=0, help="bin ratings into this many grades first")
    p.add_argument("--bin-width", type=float, default=0.5)
    p.add_argument("--require-winner", action="store_true")
    p.set_defaults(func=cmd_tally)

    p = sub.add_parser("reproduce", help="regenerate a worked example and check its numbers")
    p.add_argument("target", choices=sorted(reproduce.TARGETS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("simulate", help="MR vs MJD spatial Monte Carlo study")
    p.add_argument("--voters", type=int, nargs="+", default=[15, 55, 95])
    p.add_argument("--b-pos", type=float, nargs="+", default=[0.1, 0.2, 0.3, 0.4, 0.5])
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", default="csv", choices=["text", "csv", "json"])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--deterministic", action="store_true", help="omit the timestamp line")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("attack", help="fewest strategic voters needed to flip a rule")
    p.add_argument("input", nargs="?", help="rated ballot file (default: 99-voter percentile profile)")
    rule_opts(p, default="mjd")
    p.add_argument("--favored", default="B")
    p.add_argument("--opponent", default="A")
    p.add_argument("--grades", type=int, default=0, help="bin ratings into this many grades before the rule")
    p.add_argument("--bin-width", type=float, default=0.5)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("criteria", help="search for a criterion violation")
    rule_opts(p)
    p.add_argument("--criterion", required=True, choices=[c.value for c in Criterion])
    p.add_argument("--candidates", type=int, default=3)
    p.add_argument("--min-voters", type=int, default=1)
    p.add_argument("--max-voters", type=int, default=5)
    p.add_argument("--ballots", default="ranked", choices=["ranked", "rated"])
    p.add_argument("--grades-space", type=int, default=3, help="grades for rated search spaces")
    p.add_argument("--truncated", action="store_true")
    p.add_argument("--blocs", type=int, default=0)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_criteria)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
