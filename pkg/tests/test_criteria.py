import numpy as np
import pytest

from votelab.ballots import Profile, RatingScale, condorcet_winner, pairwise_tally
from votelab.criteria import (
    SearchSpace,
    benefits,
    check,
    check_multiple_districts,
    check_no_show,
    check_scc,
    check_truncation,
    check_twin,
    replay,
    search_violations,
)
from votelab.rules import LossMetric, Outcome, majority_rule, minimax, minimax_winning_votes, mj_winner, range_winner
from votelab.scenarios import league_profile

import oracles

A, B, C = 0, 1, 2


# --- single profiles --------------------------------------------------------

def test_majority_rule_has_no_no_show_violation():
    p = Profile.ranked([(A, B)] * 3 + [(B, A)] * 2, 2)
    assert not check_no_show(p, majority_rule).violated


def test_condorcet_winner_profiles_are_clean():
    p = Profile.ranked([(A, B, C), (B, A, C), (A, C, B), (C, A, B)], 3)
    assert condorcet_winner(pairwise_tally(p)) == A
    for crit in ("no_show", "twin", "truncation", "scc"):
        assert not check(crit, p, minimax).violated


def test_twin_vacuous_without_duplicates():
    p = Profile.ranked([(A, B, C), (B, C, A), (C, A, B)], 3)
    assert not check_twin(p, minimax).violated


def test_unanimous_profile_is_clean():
    p = Profile.ranked([(A, B, C)], 3, weights=[5])
    assert not check_twin(p, minimax).violated
    assert not check_no_show(p, minimax).violated


def test_checks_need_two_voters():
    p = Profile.ranked([(A, B)], 2)
    with pytest.raises(ValueError):
        check_no_show(p, majority_rule)
    with pytest.raises(ValueError):
        check_twin(p, majority_rule)


def test_truncation_needs_ranked_ballots():
    with pytest.raises(ValueError, match="ranked ballots"):
        check_truncation(Profile.rated([[1, 2], [2, 1]]), range_winner)


def test_benefit_requires_sole_preferred_winner():
    def out(*best):
        return Outcome.from_best(best, {})

    p = Profile.ranked([(B, A, C)], 3)
    assert benefits(p, 0, out(A), out(B))
    assert not benefits(p, 0, out(A), out(B, C))
    assert not benefits(p, 0, out(A, B), out(C))
    assert not benefits(p, 0, out(B), out(A))


def test_league_scc_violation():
    report = check_scc(league_profile(), minimax)
    assert report.violated
    assert report.witness.detail["removed"] == B
    assert report.witness.detail["recount_winner"] == C
    assert replay(report, minimax)


def test_scc_needs_three_candidates():
    with pytest.raises(ValueError):
        check_scc(Profile.ranked([(A, B)], 2), majority_rule)


@pytest.mark.parametrize("rule", [minimax, minimax_winning_votes, range_winner])
def test_identical_districts_never_violate(rule):
    rng = np.random.default_rng(3)
    space = SearchSpace(3, 1, 9, ballot_kind="rated" if rule is range_winner else "ranked")
    for _ in range(200):
        p = space.sample(rng)
        assert not check_multiple_districts(p, p, rule).violated


def test_multiple_districts_needs_common_winner():
    p1 = Profile.ranked([(A, B)], 2)
    p2 = Profile.ranked([(B, A)], 2)
    assert not check_multiple_districts(p1, p2, majority_rule).violated


# --- search -----------------------------------------------------------------

def test_search_space_sizes():
    assert len(SearchSpace(3, 1, 1).ballot_types()) == 6
    assert len(SearchSpace(3, 1, 1, truncated=True).ballot_types()) == 15
    assert len(SearchSpace(3, 1, 1, ballot_kind="rated", grades=3).ballot_types()) == 27
    space = SearchSpace(3, 1, 3)
    assert space.size() == sum(1 for _ in space.enumerate()) == 6 + 21 + 56


def test_search_scc_small_space():
    report = search_violations(minimax, "scc", SearchSpace(3, 1, 5))
    assert report is not None and report.violated
    assert replay(report, minimax)


def test_search_exhausts_clean_space():
    # minimax never rewards abstention among three candidates and few voters
    assert search_violations(minimax, "no_show", SearchSpace(3, 2, 4, truncated=True)) is None


@pytest.mark.parametrize("criterion", ["no_show", "twin", "truncation"])
def test_search_finds_winning_votes_witnesses(criterion):
    space = SearchSpace(4, 20, 40, truncated=True, blocs=4)
    report = search_violations(minimax_winning_votes, criterion, space, np.random.default_rng(3), budget=60_000)
    assert report is not None and report.violated
    assert replay(report, minimax_winning_votes)
    original = report.witness.profiles[0]
    assert condorcet_winner(pairwise_tally(original)) is None


def test_search_finds_district_witness():
    space = SearchSpace(4, 3, 25)
    report = search_violations(minimax, "multiple_districts", space, np.random.default_rng(0), budget=20_000)
    assert report is not None
    p1, p2, merged = report.witness.profiles
    o1, o2, om = report.witness.outcomes
    assert o1.winner == o2.winner is not None and om.winner != o1.winner
    assert replay(report, minimax)


def test_search_validates_arguments():
    with pytest.raises(ValueError):
        search_violations(minimax, "scc", SearchSpace(2, 1, 3))
    with pytest.raises(ValueError):
        search_violations(range_winner, "truncation", SearchSpace(3, 1, 3, ballot_kind="rated"))
    with pytest.raises(ValueError):
        search_violations(minimax, "no_show", SearchSpace(3, 1, 3), budget=0)


def test_search_is_seed_deterministic():
    space = SearchSpace(4, 20, 40, truncated=True, blocs=4)
    a = search_violations(minimax_winning_votes, "no_show", space, np.random.default_rng(3), budget=5_000)
    b = search_violations(minimax_winning_votes, "no_show", space, np.random.default_rng(3), budget=5_000)
    assert a is not None and a.witness.profiles[0] == b.witness.profiles[0]


# --- soundness against a brute-force re-checker ------------------------------

def _top(rule, voters, c, rated, scale):
    if rated:
        p = Profile.rated(voters, scale=scale, candidate_count=c)
    else:
        p = Profile.ranked(voters, c)
    out = rule(p)
    return out.top, out.winner


def _gains(ballot, before_top, after, rated):
    top, winner = after
    if winner is None or winner in before_top:
        return False
    return all(oracles.prefers(ballot, winner, t, rated) for t in before_top)


def _oracle(criterion, voters, c, rule, rated, scale):
    before_top, _ = _top(rule, voters, c, rated, scale)
    distinct = []
    for v in voters:
        if v not in distinct:
            distinct.append(v)
    if criterion in ("no_show", "twin"):
        for b in distinct:
            if criterion == "twin" and voters.count(b) < 2:
                continue
            rest = list(voters)
            rest.remove(b)
            if rest and _gains(b, before_top, _top(rule, rest, c, rated, scale), rated):
                return True
        return False
    if criterion == "truncation":
        for b in distinct:
            for k in range(1, len(b)):
                changed = list(voters)
                changed[changed.index(b)] = b[:k]
                if _gains(b, before_top, _top(rule, changed, c, rated, scale), rated):
                    return True
        return False
    before = _top(rule, voters, c, rated, scale)
    for x in range(c):
        if x in before_top:
            continue
        keep = [y for y in range(c) if y != x]
        if rated:
            reduced = [[v[y] for y in keep] for v in voters]
        else:
            reduced = [tuple(keep.index(y) for y in v if y != x) for v in voters]
        top, winner = _top(rule, reduced, c - 1, rated, scale)
        if {keep[y] for y in top} != set(before_top) or (winner is None) != (before[1] is None):
            return True
    return False


# The last field says whether violations must show up; range voting passes
# both participation and candidate-removal tests, so its space stays clean.
SOUNDNESS_CASES = [
    ("minimax", minimax, SearchSpace(3, 2, 4, truncated=True), ["no_show", "twin", "truncation", "scc"], True),
    ("winning_votes", minimax_winning_votes, SearchSpace(3, 2, 4), ["no_show", "scc"], True),
    ("mj", mj_winner, SearchSpace(3, 2, 3, ballot_kind="rated", grades=3), ["no_show", "twin", "scc"], True),
    ("range", range_winner, SearchSpace(3, 2, 3, ballot_kind="rated", grades=3), ["no_show", "scc"], False),
]


@pytest.mark.parametrize("name, rule, space, criteria, fires", SOUNDNESS_CASES, ids=[c[0] for c in SOUNDNESS_CASES])
def test_checkers_agree_with_brute_force(name, rule, space, criteria, fires):
    rated = space.ballot_kind == "rated"
    scale = RatingScale.integer(1, space.grades) if rated else None
    seen = {c: 0 for c in criteria}
    for p in space.enumerate():
        voters = oracles.expand(p)
        if not rated:
            voters = [tuple(v) for v in voters]
        for crit in criteria:
            report = check(crit, p, rule)
            assert report.violated == _oracle(crit, voters, space.candidates, rule, rated, scale), (crit, p)
            if report.violated:
                seen[crit] += 1
                assert replay(report, rule)
    # guard against a vacuous comparison
    assert any(seen.values()) == fires


@pytest.mark.parametrize("metric", list(LossMetric))
def test_minimax_no_show_only_in_paradox_profiles(metric):
    rule = lambda p: minimax(p, metric)  # noqa: E731
    for p in SearchSpace(3, 2, 4, truncated=True).enumerate():
        if check_no_show(p, rule).violated:
            assert condorcet_winner(pairwise_tally(p)) is None
