"""Checkers and a counterexample search for five electoral criteria.

Each ``check_*`` function answers whether a single profile (or a pair of
district profiles) exhibits a violation of one criterion under a given rule,
and returns the concrete before/after profiles when it does.  A voter
"benefits" from a change when the new outcome has a sole winner that the
voter strictly prefers to every candidate at the top of the old outcome.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

import numpy as np

from .ballots import Profile, RatingScale, merge_profiles
from .rules import Outcome, Rule


class Criterion(str, Enum):
    NO_SHOW = "no_show"
    TWIN = "twin"
    TRUNCATION = "truncation"
    MULTIPLE_DISTRICTS = "multiple_districts"
    SCC = "scc"


@dataclass(frozen=True)
class Witness:
    """Profiles and the outcomes the rule gave them.

    Layout by criterion: no-show, twin, truncation and SCC store
    ``(original, changed)``; multiple districts stores
    ``(district 1, district 2, merged)``.  ``detail`` names the manipulating
    ballot, the prefix, or the removed candidate.
    """

    profiles: tuple
    outcomes: tuple
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CriterionReport:
    criterion: Criterion
    violated: bool
    witness: Optional[Witness] = None

    def __post_init__(self):
        if self.violated and self.witness is None:
            raise ValueError("a violation needs a witness")


def replay(report: CriterionReport, rule: Rule) -> bool:
    """Re-run ``rule`` on the witness profiles; True when every outcome matches."""
    if report.witness is None:
        return True
    return all(rule(p).same_result(o) for p, o in zip(report.witness.profiles, report.witness.outcomes))


def benefits(profile: Profile, i: int, before: Outcome, after: Outcome) -> bool:
    """Would the voter casting ballot ``i`` welcome the move from ``before`` to ``after``?"""
    w = after.winner
    if w is None or w in before.top:
        return False
    return all(profile.prefers(i, w, c) for c in before.top)


def _clean(criterion) -> CriterionReport:
    return CriterionReport(Criterion(criterion), False)


def _abstention(profile: Profile, rule: Rule, criterion: Criterion, indices) -> CriterionReport:
    before = rule(profile)
    for i in indices:
        reduced = profile.without_one(i)
        if reduced.total_weight == 0:
            continue
        after = rule(reduced)
        if benefits(profile, i, before, after):
            return CriterionReport(criterion, True, Witness(
                (profile, reduced), (before, after), {"ballot": int(i)}))
    return _clean(criterion)


def check_no_show(profile: Profile, rule: Rule) -> CriterionReport:
    """Can one voter get a preferred winner by staying home?"""
    if profile.total_weight < 2:
        raise ValueError("no-show check needs at least two voters")
    return _abstention(profile, rule, Criterion.NO_SHOW, range(len(profile)))


def _ballot_key(profile: Profile, i: int):
    b = profile.ballot(i)
    if profile.is_rated:
        return tuple(np.where(np.isnan(b), np.inf, b).tolist())
    return b


def check_twin(profile: Profile, rule: Rule) -> CriterionReport:
    """Can one of two identical voters get a preferred winner by abstaining?"""
    if profile.total_weight < 2:
        raise ValueError("twin check needs at least two voters")
    counts: dict = {}
    for i in range(len(profile)):
        key = _ballot_key(profile, i)
        counts[key] = counts.get(key, 0) + int(profile.weights[i])
    twins = [i for i in range(len(profile)) if counts[_ballot_key(profile, i)] >= 2]
    return _abstention(profile, rule, Criterion.TWIN, twins)


def check_truncation(profile: Profile, rule: Rule) -> CriterionReport:
    """Can one voter get a preferred winner by listing only a prefix of their ranking?"""
    if profile.is_rated:
        raise ValueError("truncation requires ranked ballots")
    before = rule(profile)
    for i, ballot in enumerate(profile.rankings):
        for length in range(1, len(ballot)):
            changed = profile.split_one(i, ballot[:length])
            after = rule(changed)
            if benefits(profile, i, before, after):
                return CriterionReport(Criterion.TRUNCATION, True, Witness(
                    (profile, changed), (before, after), {"ballot": i, "prefix": ballot[:length]}))
    return _clean(Criterion.TRUNCATION)


def check_multiple_districts(p1: Profile, p2: Profile, rule: Rule) -> CriterionReport:
    """Does a candidate who wins both districts fail to win them combined?"""
    merged = merge_profiles(p1, p2)
    o1, o2 = rule(p1), rule(p2)
    if o1.winner is None or o1.winner != o2.winner:
        return _clean(Criterion.MULTIPLE_DISTRICTS)
    om = rule(merged)
    if om.winner == o1.winner:
        return _clean(Criterion.MULTIPLE_DISTRICTS)
    return CriterionReport(Criterion.MULTIPLE_DISTRICTS, True, Witness(
        (p1, p2, merged), (o1, o2, om), {"district_winner": o1.winner}))


def check_scc(profile: Profile, rule: Rule) -> CriterionReport:
    """Does dropping a losing candidate and recounting change the result?"""
    if profile.candidate_count < 3:
        raise ValueError("SCC check needs at least three candidates")
    before = rule(profile)
    for c in range(profile.candidate_count):
        if c in before.top:
            continue
        reduced = profile.without_candidate(c)
        after = rule(reduced)
        keep = [x for x in range(profile.candidate_count) if x != c]
        top = frozenset(keep[x] for x in after.top)
        sole = after.winner is not None
        if top != before.top or sole != (before.winner is not None):
            recount = keep[after.winner] if sole else None
            return CriterionReport(Criterion.SCC, True, Witness(
                (profile, reduced), (before, after),
                {"removed": c, "recount_winner": recount, "recount_top": sorted(top)}))
    return _clean(Criterion.SCC)


def check(criterion, profile: Profile, rule: Rule) -> CriterionReport:
    """Dispatch a single-profile criterion by name."""
    fn = {
        Criterion.NO_SHOW: check_no_show,
        Criterion.TWIN: check_twin,
        Criterion.TRUNCATION: check_truncation,
        Criterion.SCC: check_scc,
    }[Criterion(criterion)]
    return fn(profile, rule)


# --- search -----------------------------------------------------------------

# Spaces up to this many profiles are enumerated; larger ones are sampled.
EXHAUSTIVE_LIMIT = 10**7


@dataclass(frozen=True)
class SearchSpace:
    """Profiles with ``candidates`` candidates and ``min_voters..max_voters`` voters.

    Ranked spaces use strict full rankings, plus every non-empty prefix when
    ``truncated`` is set.  Rated spaces use integer grades ``1..grades``.
    With ``blocs > 1``, random sampling picks between 2 and ``blocs`` distinct
    ballots and splits the voters among them with Dirichlet proportions,
    which produces the lopsided cyclic profiles that uniform sampling rarely
    reaches.
    """

    candidates: int
    min_voters: int
    max_voters: int
    ballot_kind: str = "ranked"
    grades: int = 3
    truncated: bool = False
    blocs: int = 0

    def __post_init__(self):
        if self.candidates < 2:
            raise ValueError("need at least two candidates")
        if not 1 <= self.min_voters <= self.max_voters:
            raise ValueError("need 1 <= min_voters <= max_voters")
        if self.ballot_kind not in ("ranked", "rated"):
            raise ValueError("ballot_kind is 'ranked' or 'rated'")

    def ballot_types(self) -> list:
        c = self.candidates
        if self.ballot_kind == "rated":
            return list(itertools.product(range(1, self.grades + 1), repeat=c))
        perms = list(itertools.permutations(range(c)))
        if not self.truncated:
            return perms
        return sorted({p[:k] for p in perms for k in range(1, c + 1)}, key=lambda b: (len(b), b))

    def size(self) -> int:
        """Number of distinct anonymous profiles in the space."""
        t = len(self.ballot_types())
        return sum(math.comb(t + v - 1, v) for v in range(self.min_voters, self.max_voters + 1))

    def build(self, types: list, counts) -> Profile:
        ballots = [b for b, n in zip(types, counts) if n]
        weights = [n for n in counts if n]
        if self.ballot_kind == "rated":
            return Profile.rated(ballots, scale=RatingScale.integer(1, self.grades), weights=weights,
                                 candidate_count=self.candidates)
        return Profile.ranked(ballots, self.candidates, weights=weights)

    def enumerate(self) -> Iterator[Profile]:
        """Every anonymous profile, fewest voters first."""
        types = self.ballot_types()
        for v in range(self.min_voters, self.max_voters + 1):
            for combo in itertools.combinations_with_replacement(range(len(types)), v):
                counts = np.bincount(combo, minlength=len(types))
                yield self.build(types, counts)

    def sample(self, rng: np.random.Generator) -> Profile:
        types = self.ballot_types()
        v = int(rng.integers(self.min_voters, self.max_voters + 1))
        if self.blocs > 1:
            k = int(rng.integers(2, min(self.blocs, len(types)) + 1))
            counts = np.zeros(len(types), dtype=np.int64)
            chosen = rng.choice(len(types), size=k, replace=False)
            counts[chosen] = rng.multinomial(v, rng.dirichlet(np.ones(k)))
        else:
            counts = np.bincount(rng.integers(0, len(types), size=v), minlength=len(types))
        return self.build(types, counts)


def search_violations(rule: Rule, criterion, space: SearchSpace,
                      rng: Optional[np.random.Generator] = None,
                      budget: int = 10_000) -> Optional[CriterionReport]:
    """First violation found within ``budget`` profiles (or district pairs).

    Small spaces are walked exhaustively in a fixed order; larger ones are
    sampled from ``rng``.  Returns ``None`` when the budget runs out.
    """
    criterion = Criterion(criterion)
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if criterion is Criterion.SCC and space.candidates < 3:
        raise ValueError("SCC check needs at least three candidates")
    if criterion is Criterion.TRUNCATION and space.ballot_kind != "ranked":
        raise ValueError("truncation requires ranked ballots")
    if rng is None:
        rng = np.random.default_rng(0)

    pairs = criterion is Criterion.MULTIPLE_DISTRICTS
    size = space.size() ** 2 if pairs else space.size()
    if size <= EXHAUSTIVE_LIMIT:
        if pairs:
            profiles = list(space.enumerate())
            candidates = itertools.product(profiles, profiles)
        else:
            candidates = space.enumerate()
    elif pairs:
        candidates = ((space.sample(rng), space.sample(rng)) for _ in itertools.count())
    else:
        candidates = (space.sample(rng) for _ in itertools.count())

    for item in itertools.islice(candidates, budget):
        if pairs:
            report = check_multiple_districts(item[0], item[1], rule)
        elif item.total_weight < 2 and criterion is not Criterion.SCC:
            continue
        else:
            report = check(criterion, item, rule)
        if report.violated:
            return report
    return None
