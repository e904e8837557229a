"""Single-winner voting rules.

Every rule maps a :class:`~votelab.ballots.Profile` (minimax also accepts a
:class:`~votelab.ballots.PairwiseTally`) to an :class:`Outcome`.  Ties are
never broken at random; they come back as an explicit tied set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Union

import numpy as np

from .ballots import PairwiseTally, Profile, ScaleKind, condorcet_winner, pairwise_tally


@dataclass(frozen=True)
class Outcome:
    """Result of one election.

    Exactly one of ``winner`` / ``tied`` is populated.  ``trace`` carries the
    numbers the rule used (means, medians, loss vector, decisive row, ...).
    """

    winner: Optional[int]
    tied: frozenset = frozenset()
    trace: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tied", frozenset(int(c) for c in self.tied))
        if (self.winner is None) == (not self.tied):
            raise ValueError("an outcome has either a winner or a non-empty tie set")

    @classmethod
    def from_best(cls, best, trace: dict) -> "Outcome":
        best = [int(c) for c in best]
        if len(best) == 1:
            return cls(best[0], frozenset(), trace)
        return cls(None, frozenset(best), trace)

    @property
    def top(self) -> frozenset:
        """Candidates sharing first place."""
        return frozenset([self.winner]) if self.winner is not None else self.tied

    def same_result(self, other: "Outcome") -> bool:
        return self.winner == other.winner and self.tied == other.tied


class LossMetric(str, Enum):
    MARGIN = "margin"
    WINNING_VOTES = "winning_votes"


Rule = Callable[[Profile], Outcome]


def _require_ballots(profile: Profile):
    if len(profile) == 0:
        raise ValueError("empty profile")


def _require_complete(profile: Profile):
    if not profile.is_rated:
        raise ValueError("rule needs rated ballots")
    if np.isnan(profile.ratings).any():
        raise ValueError("rule needs every candidate rated on every ballot")


def majority_rule(profile: Profile) -> Outcome:
    """Two-candidate majority rule on strict preferences."""
    if profile.candidate_count != 2:
        raise ValueError("majority rule requires exactly two candidates")
    tally = pairwise_tally(profile)
    votes = (int(tally.n[0, 1]), int(tally.n[1, 0]))
    if votes[0] == votes[1]:
        best = [0, 1]
    else:
        best = [int(votes[1] > votes[0])]
    return Outcome.from_best(best, {"votes": votes, "abstained": tally.total_voters - sum(votes)})


def approval_winner(profile: Profile) -> Outcome:
    """Most approvals wins; ballots must hold 0/1 ratings."""
    _require_ballots(profile)
    _require_complete(profile)
    r = profile.ratings
    if not np.isin(r, (0.0, 1.0)).all():
        raise ValueError("not an approval profile")
    counts = profile.weights @ r.astype(np.int64)
    best = np.flatnonzero(counts == counts.max())
    return Outcome.from_best(best, {"approvals": tuple(int(c) for c in counts)})


def range_winner(profile: Profile) -> Outcome:
    """Highest mean rating wins."""
    _require_ballots(profile)
    _require_complete(profile)
    if profile.scale.kind is ScaleKind.GRADED:
        raise ValueError("range voting needs a numeric scale")
    totals = profile.weights @ profile.ratings
    best = np.flatnonzero(totals == totals.max())
    means = totals / profile.total_weight
    return Outcome.from_best(best, {"totals": tuple(totals.tolist()), "means": tuple(means.tolist())})


# --- median rules -----------------------------------------------------------

def median_position(voters: int) -> int:
    """1-based row of the (lower) median in a high-to-low sort."""
    return voters // 2 + 1


def lower_median(values) -> float:
    v = np.sort(np.asarray(values, dtype=float))[::-1]
    return v[median_position(len(v)) - 1]


def row_scan_order(voters: int) -> list[int]:
    """1-based rows by distance from the median row, the lower row first on ties."""
    m = median_position(voters)
    order = [m]
    for d in range(1, voters):
        for row in (m + d, m - d):
            if 1 <= row <= voters:
                order.append(row)
    return order


def matrix_tiebreak(columns: np.ndarray) -> tuple[Optional[int], Optional[int]]:
    """Break a median tie among the columns of a ``(V, k)`` rating matrix.

    Each column is sorted high to low; rows are visited outward from the
    median row, the row below before the row above at equal distance.  The
    first row in which a single column holds the strictly highest value
    decides.  Returns ``(column index, 1-based row)`` or ``(None, None)``.
    """
    s = -np.sort(-columns, axis=0)
    for row in row_scan_order(s.shape[0]):
        vals = s[row - 1]
        top = np.flatnonzero(vals == vals.max())
        if len(top) == 1:
            return int(top[0]), row
    return None, None


def _median_rule(profile: Profile) -> Outcome:
    _require_ballots(profile)
    _require_complete(profile)
    r = profile.expanded_ratings()
    medians = np.array([lower_median(r[:, c]) for c in range(profile.candidate_count)])
    trace = {"medians": tuple(medians.tolist()), "median_row": median_position(len(r))}
    best = np.flatnonzero(medians == medians.max())
    if len(best) == 1:
        return Outcome(int(best[0]), frozenset(), trace)
    col, row = matrix_tiebreak(r[:, best])
    if col is None:
        return Outcome(None, frozenset(best.tolist()), trace)
    s = -np.sort(-r[:, best], axis=0)
    trace.update(decisive_row=row, decisive_grades=dict(zip(best.tolist(), s[row - 1].tolist())))
    return Outcome(int(best[col]), frozenset(), trace)


def mj_winner(profile: Profile) -> Outcome:
    """Majority judgment on graded (or integer) ballots.

    The highest median grade wins; a median tie goes to the sorted-matrix
    tie-break.  When it is used, ``trace["decisive_row"]`` is the 1-based row
    that decided and ``trace["decisive_grades"]`` maps candidate to grade.
    """
    if profile.is_rated and profile.scale.kind is ScaleKind.CONTINUOUS:
        raise ValueError("majority judgment needs a graded or integer scale")
    return _median_rule(profile)


def mjd_winner(profile: Profile) -> Outcome:
    """Median rule on raw continuous ratings, matrix tie-break on exact ties."""
    if profile.is_rated and profile.scale.kind is ScaleKind.GRADED:
        raise ValueError("MJD needs a numeric scale")
    return _median_rule(profile)


# --- minimax ----------------------------------------------------------------

def largest_loss(tally: PairwiseTally, c: int, metric: LossMetric = LossMetric.MARGIN) -> float:
    """Size of candidate ``c``'s worst two-way defeat (0 when it loses none)."""
    metric = LossMetric(metric)
    if tally.candidate_count < 2:
        raise ValueError("largest loss needs at least two candidates")
    n = tally.n
    against, for_ = n[:, c], n[c, :]
    lost = against > for_
    if not lost.any():
        return 0
    if metric is LossMetric.MARGIN:
        return int((against - for_)[lost].max())
    return int(against[lost].max())


def minimax_winner(tally: PairwiseTally, metric: LossMetric = LossMetric.MARGIN) -> Outcome:
    """Condorcet winner if any, else the smallest largest loss."""
    metric = LossMetric(metric)
    ll = np.array([largest_loss(tally, c, metric) for c in range(tally.candidate_count)])
    trace = {"largest_loss": tuple(int(x) for x in ll), "metric": metric.value}
    cw = condorcet_winner(tally)
    if cw is not None:
        return Outcome(cw, frozenset(), trace)
    return Outcome.from_best(np.flatnonzero(ll == ll.min()), trace)


def minimax(profile: Union[Profile, PairwiseTally], metric: LossMetric = LossMetric.MARGIN) -> Outcome:
    tally = profile if isinstance(profile, PairwiseTally) else pairwise_tally(profile)
    return minimax_winner(tally, metric)


def minimax_winning_votes(profile: Profile) -> Outcome:
    return minimax(profile, LossMetric.WINNING_VOTES)


RULES: dict[str, Rule] = {
    "majority": majority_rule,
    "approval": approval_winner,
    "range": range_winner,
    "mj": mj_winner,
    "mjd": mjd_winner,
    "minimax": minimax,
    "minimax-wv": minimax_winning_votes,
}


def get_rule(name: str, metric: Union[str, LossMetric, None] = None) -> Rule:
    """Look up a rule by name; ``metric`` only applies to ``minimax``."""
    key = {"rv": "range", "mr": "majority"}.get(name, name)
    if key not in RULES:
        raise KeyError(f"unknown rule {name!r}; choose from {sorted(RULES)}")
    if key == "minimax" and metric is not None:
        m = LossMetric(str(metric).replace("-", "_"))
        return minimax if m is LossMetric.MARGIN else minimax_winning_votes
    return RULES[key]
