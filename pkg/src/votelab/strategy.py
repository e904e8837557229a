"""Insincere ballot construction and rating discretization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ballots import Profile, RatingScale
from .rules import Rule


@dataclass(frozen=True)
class AttackSpec:
    """``k`` supporters of ``favored`` exaggerate against ``opponent``."""

    favored: int
    opponent: int
    k: int = 0

    def __post_init__(self):
        if self.favored == self.opponent:
            raise ValueError("favored and opponent must differ")
        if self.k < 0:
            raise ValueError("k must be non-negative")


def global_rating_extremes(profile: Profile) -> tuple[float, float]:
    """Lowest and highest rating any voter gave any candidate."""
    if len(profile) == 0:
        raise ValueError("empty profile")
    if not profile.is_rated:
        raise ValueError("rated profile required")
    return float(np.nanmin(profile.ratings)), float(np.nanmax(profile.ratings))


def sympathizers(profile: Profile, favored: int, opponent: int) -> np.ndarray:
    """Ballot indices preferring ``favored``, lowest opponent rating first.

    Ties on the opponent rating keep ballot order.  Each ballot must carry
    weight 1 since every selected voter changes their own ballot.
    """
    r = profile.ratings
    idx = np.flatnonzero(r[:, favored] > r[:, opponent])
    return idx[np.argsort(r[idx, opponent], kind="stable")]


def apply_strategic_voters(profile: Profile, spec: AttackSpec) -> Profile:
    """Let the ``spec.k`` most hostile supporters of ``favored`` max/min their ballots.

    Each chosen voter gives ``favored`` the highest and ``opponent`` the lowest
    rating sincerely given by anyone in ``profile``; other ratings on the
    ballot are left alone.
    """
    if (profile.weights != 1).any():
        raise ValueError("strategic voting needs one ballot per voter")
    chosen = sympathizers(profile, spec.favored, spec.opponent)
    if spec.k > len(chosen):
        raise ValueError(f"only {len(chosen)} voters prefer candidate {spec.favored}; k={spec.k}")
    if spec.k == 0:
        return profile
    lo, hi = global_rating_extremes(profile)
    r = profile.ratings.copy()
    rows = chosen[:spec.k]
    r[rows, spec.favored] = hi
    r[rows, spec.opponent] = lo
    return Profile.rated(r, scale=profile.scale)


def min_flippers(profile: Profile, rule: Rule, favored: int, opponent: int) -> Optional[int]:
    """Fewest strategic voters that make ``favored`` the sole winner under ``rule``.

    Scans k upward from 1 and returns ``None`` if even every sympathizer
    voting strategically is not enough.
    """
    if rule(profile).winner == favored:
        raise ValueError("favored candidate already wins sincerely")
    available = len(sympathizers(profile, favored, opponent))
    for k in range(1, available + 1):
        attacked = apply_strategic_voters(profile, AttackSpec(favored, opponent, k))
        if rule(attacked).winner == favored:
            return k
    return None


def discretize_ratings(ratings, bin_width: float = 0.5, grade_count: int = 6) -> np.ndarray:
    r = np.asarray(ratings, dtype=float)
    top = grade_count * bin_width
    if (r < 0).any() or (r > top).any():
        raise ValueError(f"rating outside [0, {top}]")
    return np.minimum(grade_count, np.floor(r / bin_width) + 1).astype(np.int64)


def discretize_profile(profile: Profile, bin_width: float = 0.5, grade_count: int = 6) -> Profile:
    """Bin ratings into grades ``1..grade_count``; a boundary value goes to the upper bin."""
    grades = discretize_ratings(profile.ratings, bin_width, grade_count)
    labels = [str(g) for g in range(1, grade_count + 1)]
    return Profile.rated(grades, scale=RatingScale.graded(labels), weights=profile.weights)
