"""Regenerate the worked examples and compare with their published numbers.

Real-valued figures are published to three decimals and compared with an
absolute tolerance of 5e-4; counts, grades and row numbers must match
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import scenarios
from .ballots import pairwise_tally
from .criteria import check_scc
from .experiments import StudyConfig, run_full_study
from .rules import approval_winner, majority_rule, minimax, mj_winner, mjd_winner, range_winner
from .strategy import AttackSpec, apply_strategic_voters, discretize_profile, global_rating_extremes, min_flippers

TOL = 5e-4
A, B, C = 0, 1, 2


@dataclass(frozen=True)
class Check:
    label: str
    expected: object
    actual: object
    tol: Optional[float] = None

    @property
    def passed(self) -> bool:
        if self.tol is None:
            return self.expected == self.actual
        return abs(float(self.expected) - float(self.actual)) <= self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.label}: expected {self.expected}, got {_fmt(self.actual)}"


def _fmt(x):
    return f"{x:.4f}" if isinstance(x, float) else str(x)


def example1() -> list[Check]:
    p = scenarios.lopsided_grades_profile()
    mj = mj_winner(p)
    mr = majority_rule(p)
    return [
        Check("MJ median grade of A", 3, int(mj.trace["medians"][A])),
        Check("MJ median grade of B", 4, int(mj.trace["medians"][B])),
        Check("MJ winner", "B", "AB"[mj.winner]),
        Check("voters preferring A / B", (98, 1), mr.trace["votes"]),
        Check("MR winner", "A", "AB"[mr.winner]),
    ]


def approval() -> list[Check]:
    ratings = scenarios.approval_nine_voter_ratings()
    out = approval_winner(scenarios.approvals_from_ratings(ratings, 5))
    n = pairwise_tally(ratings).n
    return [
        Check("approvals for X / Y", (5, 4), out.trace["approvals"]),
        Check("approval winner", "X", "XY"[out.winner]),
        Check("voters preferring Y to X", 8, int(n[1, 0])),
    ]


def example2() -> list[Check]:
    p = scenarios.one_extreme_rater_profile()
    rv = range_winner(p)
    mr = majority_rule(p)
    totals = rv.trace["totals"]
    return [
        Check("RV total of B minus total of A", 1, int(totals[B] - totals[A])),
        Check("RV winner", "B", "AB"[rv.winner]),
        Check("voters preferring A / B", (98, 1), mr.trace["votes"]),
        Check("MR winner", "A", "AB"[mr.winner]),
    ]


def example3() -> list[Check]:
    p = scenarios.spatial_percentile_profile()
    voters = scenarios.SPATIAL_PERCENTILE.voters()
    n = pairwise_tally(p).n
    rv, mjd = range_winner(p), mjd_winner(p)
    lo, hi = global_rating_extremes(p)
    checks = [
        Check("voters left of B", 69, int((voters < 0.5).sum())),
        Check("voters preferring A / B", (59, 40), (int(n[A, B]), int(n[B, A]))),
        Check("MR margin (percent)", 19.2, 100 * (n[A, B] - n[B, A]) / 99, 0.05),
        Check("lowest sincere rating", 0.174, lo, TOL),
        Check("highest sincere rating", 3.000, hi, TOL),
        Check("sincere RV mean of A", 2.224, rv.trace["means"][A], TOL),
        Check("sincere RV mean of B", 2.125, rv.trace["means"][B], TOL),
        Check("sincere MJD median of A", 2.326, mjd.trace["medians"][A], TOL),
        Check("sincere MJD median of B", 2.247, mjd.trace["medians"][B], TOL),
    ]
    six = apply_strategic_voters(p, AttackSpec(B, A, 6))
    five = apply_strategic_voters(p, AttackSpec(B, A, 5))
    rv6, mjd6 = range_winner(six), mjd_winner(six)
    checks += [
        Check("RV mean of A after 6 strategic voters", 2.166, rv6.trace["means"][A], TOL),
        Check("RV mean of B after 6 strategic voters", 2.208, rv6.trace["means"][B], TOL),
        Check("MJD median of A after 6 strategic voters", 2.326, mjd6.trace["medians"][A], TOL),
        Check("MJD median of B after 6 strategic voters", 2.349, mjd6.trace["medians"][B], TOL),
        Check("RV / MJD winners after 6 strategic voters", ("B", "B"), ("AB"[rv6.winner], "AB"[mjd6.winner])),
        Check("RV / MJD winners after 5 strategic voters", ("B", "A"),
              ("AB"[range_winner(five).winner], "AB"[mjd_winner(five).winner])),
        Check("fewest strategic voters to flip MJD", 6, min_flippers(p, mjd_winner, B, A)),
    ]
    sincere = mj_winner(discretize_profile(p))
    attacked = mj_winner(discretize_profile(six))
    checks += [
        Check("6-grade MJ decisive row (sincere)", 39, sincere.trace.get("decisive_row")),
        Check("6-grade MJ grades in that row (A, B)", (6, 5),
              tuple(int(sincere.trace["decisive_grades"][c]) for c in (A, B))),
        Check("6-grade MJ decisive row (6 strategic voters)", 41, attacked.trace.get("decisive_row")),
        Check("6-grade MJ grades in that row (A, B)", (5, 6),
              tuple(int(attacked.trace["decisive_grades"][c]) for c in (A, B))),
        Check("6-grade MJ winners sincere / strategic", ("A", "B"), ("AB"[sincere.winner], "AB"[attacked.winner])),
    ]
    return checks


def league() -> list[Check]:
    p = scenarios.league_profile()
    mm = minimax(p)
    report = check_scc(p, minimax)
    detail = report.witness.detail if report.violated else {}
    return [
        Check("games won by A / B / C", (13, 9, 5), tuple(int(x) for x in pairwise_tally(p).n.sum(axis=1))),
        Check("minimax champion", "A", "ABC"[mm.winner]),
        Check("largest losses A / B / C (margin)", (1, 9, 9), mm.trace["largest_loss"]),
        Check("recount after dropping B violates SCC", True, report.violated and detail["removed"] == B),
        Check("recount champion", "C", "ABC"[detail["recount_winner"]] if detail else None),
    ]


def study(seed: int = 0, trials: int = 10_000, jobs: int = 1) -> list[Check]:
    res = run_full_study(StudyConfig(trials_per_cell=trials, master_seed=seed), jobs=jobs)
    far, near = res.cell(95, 0.5), res.cell(15, 0.1)
    checks = [Check(f"MR alone right more often than MJD alone, n={c.n_voters} B={c.b_pos}",
                    True, c.mr_only > c.mjd_only) for c in res.cells]
    if trials == 10_000:
        excess = near.mr_only / near.mjd_only - 1
        checks += [
            Check("n=95 B=0.5: MR-only trials in [1300, 1800]", True, 1300 <= far.mr_only <= 1800),
            Check("n=95 B=0.5: MJD-only trials in [50, 150]", True, 50 <= far.mjd_only <= 150),
            Check("n=95 B=0.5: ratio at least 10", True, far.ratio >= 10),
            Check("n=15 B=0.1: both counts in [1500, 2400]", True,
                  1500 <= near.mr_only <= 2400 and 1500 <= near.mjd_only <= 2400),
            Check("n=15 B=0.1: relative excess in [10%, 40%]", True, 0.10 <= excess <= 0.40),
        ]
    return checks


TARGETS: dict[str, Callable[..., list[Check]]] = {
    "example1": example1,
    "example2": example2,
    "approval": approval,
    "example3": example3,
    "league": league,
    "study": study,
}
