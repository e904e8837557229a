"""Small constructed elections used throughout the tests and demos.

Each builder returns a fresh :class:`~votelab.ballots.Profile`; candidate 0 is
A (or X), candidate 1 is B (or Y), candidate 2 is C.
"""

import numpy as np

from .ballots import Profile, RatingScale
from .spatial import PercentileGrid, SpatialConfig, generate_rated_profile

SIX_GRADES = RatingScale.graded([str(g) for g in range(1, 7)])


def lopsided_grades_profile() -> Profile:
    """99 voters on a 1..6 scale: 49 give (A=2, B=1), 49 give (6, 5), one gives (3, 4).

    98 voters prefer A, yet B has the higher median grade.
    """
    return Profile.rated([[2, 1], [6, 5], [3, 4]], scale=SIX_GRADES, weights=[49, 49, 1])


def approval_nine_voter_ratings() -> Profile:
    """Sincere 0..10 ratings behind the nine-voter approval example (average is 5).

    Four voters like X and like Y more, four dislike Y and dislike X more, and
    the middle voter puts X slightly above average and Y slightly below.
    """
    return Profile.rated([[7, 8], [2, 3], [6, 4]], scale=RatingScale.integer(0, 10), weights=[4, 4, 1])


def approvals_from_ratings(profile: Profile, threshold: float) -> Profile:
    """Approve every candidate rated strictly above ``threshold``."""
    a = (profile.ratings > threshold).astype(float)
    return Profile.rated(a, scale=RatingScale.integer(0, 1), weights=profile.weights)


def one_extreme_rater_profile() -> Profile:
    """0..99 scale: 98 voters rate A one point above B, one voter gives A=0, B=99."""
    return Profile.rated([[50, 49], [0, 99]], scale=RatingScale.integer(0, 99), weights=[98, 1])


SPATIAL_PERCENTILE = SpatialConfig(candidate_positions=(0.0, 0.5), placement=PercentileGrid(99))


def spatial_percentile_profile() -> Profile:
    """99 voters at the normal percentile points, A at 0 and B at +0.5, rating = 3 - distance."""
    return generate_rated_profile(SPATIAL_PERCENTILE)


def league_profile() -> Profile:
    """A three-team league as 27 one-game ballots.

    Each pair of teams plays 9 games: A beats B in all 9, B beats C in all 9,
    C beats A 5 games to 4.  A game ballot rates the winner 1, the loser 0,
    and leaves the idle team unrated.
    """
    nan = np.nan
    games = [[1, 0, nan], [nan, 1, 0], [0, nan, 1], [1, nan, 0]]
    return Profile.rated(games, scale=RatingScale.integer(0, 1), weights=[9, 9, 5, 4])
