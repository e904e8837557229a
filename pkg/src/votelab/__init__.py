"""Voting rules, electoral-criterion checkers, strategic ballots and spatial simulations."""

from .ballots import (
    PairwiseTally,
    Profile,
    RatingScale,
    ScaleKind,
    condorcet_winner,
    merge_profiles,
    pairwise_tally,
)
from .rules import (
    LossMetric,
    Outcome,
    approval_winner,
    get_rule,
    largest_loss,
    majority_rule,
    minimax,
    minimax_winner,
    mj_winner,
    mjd_winner,
    range_winner,
)

__version__ = "0.1.0"
