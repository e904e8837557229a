"""Ballots, profiles and pairwise tallies.

A :class:`Profile` is the input to every rule in the package.  It holds either
rated ballots (one rating per candidate, stored as a ``(V, C)`` float array)
or ranked ballots (tuples of candidate indices in preference order, possibly
truncated).  Candidates are plain integer indices ``0..C-1``.

Rated ballots may contain ``nan`` for a candidate the voter left unrated.  Such
a voter expresses no preference on any pair involving that candidate, which is
how a single game result (or any one-pair opinion) is written as a ballot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

RATED = "rated"
RANKED = "ranked"


class ScaleKind(str, Enum):
    CONTINUOUS = "continuous"
    INTEGER = "integer"
    GRADED = "graded"


@dataclass(frozen=True)
class RatingScale:
    """Range of valid ratings.

    Graded scales store integer codes ``1..G``; ``grades`` holds the labels
    from lowest to highest.
    """

    kind: ScaleKind
    min: float
    max: float
    grades: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", ScaleKind(self.kind))
        if not self.min < self.max:
            raise ValueError(f"scale needs min < max, got [{self.min}, {self.max}]")
        if self.kind is ScaleKind.GRADED:
            if len(self.grades) < 2:
                raise ValueError("graded scale needs at least two labels")
            if (self.min, self.max) != (1, len(self.grades)):
                raise ValueError("graded scale codes must run 1..G")

    @classmethod
    def graded(cls, labels: Sequence[str]) -> "RatingScale":
        labels = tuple(str(g) for g in labels)
        return cls(ScaleKind.GRADED, 1, len(labels), labels)

    @classmethod
    def integer(cls, lo: int, hi: int) -> "RatingScale":
        return cls(ScaleKind.INTEGER, lo, hi)

    @classmethod
    def continuous(cls, lo: float, hi: float) -> "RatingScale":
        return cls(ScaleKind.CONTINUOUS, float(lo), float(hi))

    @property
    def is_discrete(self) -> bool:
        return self.kind is not ScaleKind.CONTINUOUS

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "min": self.min, "max": self.max}
        if self.grades:
            d["grades"] = list(self.grades)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RatingScale":
        kind = ScaleKind(d["kind"])
        if kind is ScaleKind.GRADED:
            return cls.graded(d["grades"])
        return cls(kind, d["min"], d["max"])


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Profile:
    """An election: candidate count, homogeneous ballots and integer weights.

    Build one with :meth:`Profile.rated` or :meth:`Profile.ranked`.  Arrays are
    made read-only, so a profile can be shared freely.
    """

    candidate_count: int
    kind: str
    ratings: Optional[np.ndarray] = None
    rankings: Optional[tuple[tuple[int, ...], ...]] = None
    weights: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    scale: Optional[RatingScale] = None

    @classmethod
    def rated(cls, ratings, scale: Optional[RatingScale] = None,
              weights: Optional[Iterable[int]] = None,
              candidate_count: Optional[int] = None) -> "Profile":
        r = np.array(ratings, dtype=float)
        if r.size == 0:
            if candidate_count is None:
                raise ValueError("candidate_count is required for an empty rated profile")
            r = r.reshape(0, candidate_count)
        if r.ndim != 2:
            raise ValueError("rated ballots must form a 2-D array (voters x candidates)")
        if candidate_count is not None and r.shape[1] != candidate_count:
            raise ValueError("ballot length does not match candidate count")
        w = _weights(weights, r.shape[0])
        finite = r[~np.isnan(r)]
        if np.isinf(finite).any():
            raise ValueError("ratings must be finite")
        if scale is None:
            scale = _infer_scale(finite)
        if finite.size and (finite.min() < scale.min or finite.max() > scale.max):
            raise ValueError(
                f"rating outside scale [{scale.min}, {scale.max}]")
        if scale.is_discrete and not np.all(finite == np.round(finite)):
            raise ValueError("discrete scale requires integer ratings")
        return cls(r.shape[1], RATED, ratings=_frozen(r), weights=_frozen(w), scale=scale)

    @classmethod
    def ranked(cls, rankings: Iterable[Sequence[int]], candidate_count: int,
               weights: Optional[Iterable[int]] = None) -> "Profile":
        rows = tuple(tuple(int(c) for c in b) for b in rankings)
        for b in rows:
            if len(set(b)) != len(b):
                raise ValueError(f"duplicate candidate in ranking {b}")
            if any(c < 0 or c >= candidate_count for c in b):
                raise ValueError(f"unknown candidate in ranking {b}")
        w = _weights(weights, len(rows))
        return cls(candidate_count, RANKED, rankings=rows, weights=_frozen(w))

    def __post_init__(self):
        if self.candidate_count < 1:
            raise ValueError("a profile needs at least one candidate")

    # --- basic views -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def total_weight(self) -> int:
        return int(self.weights.sum())

    @property
    def is_rated(self) -> bool:
        return self.kind == RATED

    def ballot(self, i: int):
        if self.is_rated:
            return self.ratings[i]
        return self.rankings[i]

    def ballots(self) -> list:
        return [self.ballot(i) for i in range(len(self))]

    def expanded_ratings(self) -> np.ndarray:
        """One row per voter (weights unrolled)."""
        return np.repeat(self.ratings, self.weights, axis=0)

    def preference_scores(self) -> np.ndarray:
        """Per-ballot scores where a higher score means more preferred.

        Rated ballots return their ratings.  Ranked ballots return minus the
        list position and ``-inf`` for unlisted candidates, so a listed
        candidate beats every unlisted one and unlisted pairs compare equal.
        """
        if self.is_rated:
            return self.ratings
        s = np.full((len(self), self.candidate_count), -np.inf)
        for i, b in enumerate(self.rankings):
            for pos, c in enumerate(b):
                s[i, c] = -pos
        return s

    def prefers(self, i: int, a: int, b: int) -> bool:
        """Does ballot ``i`` strictly prefer candidate ``a`` to ``b``?"""
        if self.is_rated:
            r = self.ratings[i]
            return bool(r[a] > r[b])
        rank = self.rankings[i]
        if a not in rank:
            return False
        return b not in rank or rank.index(a) < rank.index(b)

    # --- derived profiles -------------------------------------------------

    def _replace(self, *, ratings=None, rankings=None, weights=None,
                 candidate_count=None, scale=None) -> "Profile":
        cc = self.candidate_count if candidate_count is None else candidate_count
        w = self.weights if weights is None else weights
        if self.is_rated:
            r = self.ratings if ratings is None else ratings
            return Profile.rated(r, scale=scale or self.scale, weights=w, candidate_count=cc)
        rk = self.rankings if rankings is None else rankings
        return Profile.ranked(rk, cc, weights=w)

    def with_ballot(self, i: int, ballot) -> "Profile":
        """Copy with ballot ``i`` replaced (all of its weight)."""
        if self.is_rated:
            r = self.ratings.copy()
            r[i] = ballot
            return self._replace(ratings=r)
        rk = list(self.rankings)
        rk[i] = tuple(ballot)
        return self._replace(rankings=rk)

    def without_one(self, i: int) -> "Profile":
        """Copy with one unit of weight removed from ballot ``i``."""
        w = self.weights.copy()
        w[i] -= 1
        keep = w > 0
        if self.is_rated:
            return self._replace(ratings=self.ratings[keep], weights=w[keep])
        rk = [b for b, k in zip(self.rankings, keep) if k]
        return self._replace(rankings=rk, weights=w[keep])

    def split_one(self, i: int, ballot) -> "Profile":
        """Copy where one unit of ballot ``i`` is cast as ``ballot`` instead."""
        reduced = self.without_one(i)
        if self.is_rated:
            r = np.vstack([reduced.ratings, np.asarray(ballot, dtype=float)[None, :]])
            return reduced._replace(ratings=r, weights=np.append(reduced.weights, 1))
        rk = list(reduced.rankings) + [tuple(ballot)]
        return reduced._replace(rankings=rk, weights=np.append(reduced.weights, 1))

    def without_candidate(self, c: int) -> "Profile":
        """Drop candidate ``c``; later candidates shift down one index."""
        if self.candidate_count < 2:
            raise ValueError("cannot remove the only candidate")
        if self.is_rated:
            r = np.delete(self.ratings, c, axis=1)
            return self._replace(ratings=r, candidate_count=self.candidate_count - 1)
        rk = [tuple(x - (x > c) for x in b if x != c) for b in self.rankings]
        return self._replace(rankings=rk, candidate_count=self.candidate_count - 1)

    def permuted(self, order: Sequence[int]) -> "Profile":
        """Reorder ballots (candidates unchanged)."""
        order = list(order)
        w = self.weights[order]
        if self.is_rated:
            return self._replace(ratings=self.ratings[order], weights=w)
        return self._replace(rankings=[self.rankings[i] for i in order], weights=w)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Profile):
            return NotImplemented
        if (self.kind, self.candidate_count, self.scale) != (other.kind, other.candidate_count, other.scale):
            return False
        if not np.array_equal(self.weights, other.weights):
            return False
        if self.is_rated:
            return np.array_equal(self.ratings, other.ratings, equal_nan=True)
        return self.rankings == other.rankings

    __hash__ = None

    def __repr__(self) -> str:
        return (f"Profile({self.kind}, candidates={self.candidate_count}, "
                f"ballots={len(self)}, voters={self.total_weight})")


def _weights(weights, n: int) -> np.ndarray:
    if weights is None:
        return np.ones(n, dtype=np.int64)
    w = np.asarray(list(weights), dtype=np.int64)
    if w.shape != (n,):
        raise ValueError("one weight per ballot required")
    if (w < 1).any():
        raise ValueError("weights must be positive integers")
    return w


def _infer_scale(finite: np.ndarray) -> RatingScale:
    if finite.size == 0:
        return RatingScale.continuous(0.0, 1.0)
    lo, hi = float(finite.min()), float(finite.max())
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    if np.all(finite == np.round(finite)):
        return RatingScale.integer(int(np.floor(lo)), int(np.ceil(hi)))
    return RatingScale.continuous(lo, hi)


@dataclass(frozen=True, eq=False)
class PairwiseTally:
    """``n[i, j]`` is the number of voters strictly preferring ``i`` to ``j``."""

    n: np.ndarray
    total_voters: int

    def __post_init__(self):
        n = np.array(self.n, dtype=np.int64)
        if n.ndim != 2 or n.shape[0] != n.shape[1]:
            raise ValueError("tally must be a square matrix")
        if (n < 0).any() or np.diag(n).any():
            raise ValueError("tally entries must be non-negative with a zero diagonal")
        if (n + n.T > self.total_voters).any():
            raise ValueError("n[i, j] + n[j, i] exceeds the number of voters")
        object.__setattr__(self, "n", _frozen(n))

    @property
    def candidate_count(self) -> int:
        return self.n.shape[0]

    def margin(self, i: int, j: int) -> int:
        return int(self.n[i, j] - self.n[j, i])

    def __add__(self, other: "PairwiseTally") -> "PairwiseTally":
        return PairwiseTally(self.n + other.n, self.total_voters + other.total_voters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairwiseTally):
            return NotImplemented
        return self.total_voters == other.total_voters and np.array_equal(self.n, other.n)

    __hash__ = None


def pairwise_tally(profile: Profile) -> PairwiseTally:
    """Count, for every ordered pair, the voters strictly preferring one to the other."""
    if len(profile) == 0:
        raise ValueError("empty profile")
    s = profile.preference_scores()
    # nan and equal scores compare False in both directions: no preference.
    beats = s[:, :, None] > s[:, None, :]
    n = np.einsum("v,vij->ij", profile.weights, beats.astype(np.int64))
    return PairwiseTally(n, profile.total_weight)


def condorcet_winner(tally: PairwiseTally) -> Optional[int]:
    """The candidate winning every two-way race by a strict majority, if any."""
    n = tally.n
    wins = n > n.T
    np.fill_diagonal(wins, True)
    rows = np.flatnonzero(wins.all(axis=1))
    return int(rows[0]) if len(rows) == 1 else None


def merge_profiles(p1: Profile, p2: Profile) -> Profile:
    """Concatenate the ballots of two compatible profiles."""
    if (p1.kind != p2.kind or p1.candidate_count != p2.candidate_count
            or (p1.is_rated and p1.scale != p2.scale)):
        raise ValueError("incompatible profiles")
    w = np.concatenate([p1.weights, p2.weights])
    if p1.is_rated:
        r = np.vstack([p1.ratings, p2.ratings])
        return Profile.rated(r, scale=p1.scale, weights=w, candidate_count=p1.candidate_count)
    return Profile.ranked(p1.rankings + p2.rankings, p1.candidate_count, weights=w)


def candidate_labels(count: int) -> list[str]:
    """Default display names: A, B, C, ..., Z, C26, C27, ..."""
    return [chr(ord("A") + i) if i < 26 else f"C{i}" for i in range(count)]
