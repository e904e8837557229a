"""One-dimensional spatial voter model.

Voters and candidates sit on a single left-right axis.  A voter's sincere
rating of a candidate is ``offset - |voter - candidate|``, and in a
two-candidate majority vote each voter backs the nearer candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .ballots import Profile, RatingScale

# Wichura (1988), algorithm AS 241, PPND16: relative accuracy about 1e-16.
_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _poly(coef, x):
    acc = 0.0
    for c in reversed(coef):
        acc = acc * x + c
    return acc


def inverse_normal_cdf(p: float) -> float:
    """Standard normal quantile: the ``z`` with ``Phi(z) = p``."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"probability must lie in (0, 1), got {p}")
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _poly(_A, r) / _poly(_B, r)
    r = math.sqrt(-math.log(min(p, 1.0 - p)))
    if r <= 5.0:
        r -= 1.6
        z = _poly(_C, r) / _poly(_D, r)
    else:
        r -= 5.0
        z = _poly(_E, r) / _poly(_F, r)
    return -z if q < 0 else z


@dataclass(frozen=True)
class PercentileGrid:
    """``n`` voters at the quantiles ``i / (n + 1)`` of the standard normal."""
    n: int


@dataclass(frozen=True)
class NormalSample:
    """``n`` voters drawn from the standard normal with a seeded generator."""
    n: int
    seed: int


@dataclass(frozen=True)
class SpatialConfig:
    candidate_positions: tuple[float, ...]
    placement: Union[PercentileGrid, NormalSample]
    rating_offset: float = 3.0

    def __post_init__(self):
        object.__setattr__(self, "candidate_positions", tuple(float(x) for x in self.candidate_positions))
        if not self.candidate_positions:
            raise ValueError("need at least one candidate")
        if self.placement.n < 1:
            raise ValueError("need at least one voter")
        if not math.isfinite(self.rating_offset):
            raise ValueError("rating offset must be finite")

    def voters(self) -> np.ndarray:
        if isinstance(self.placement, PercentileGrid):
            return percentile_grid(self.placement.n)
        return sample_voters(self.placement.n, np.random.default_rng(self.placement.seed))


def percentile_grid(n: int) -> np.ndarray:
    """Ascending voter positions at the normal quantiles ``1/(n+1) .. n/(n+1)``."""
    if n < 1:
        raise ValueError("need at least one voter")
    return np.array([inverse_normal_cdf(i / (n + 1)) for i in range(1, n + 1)])


def sample_voters(n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` independent standard-normal positions drawn from ``rng``."""
    if n < 1:
        raise ValueError("need at least one voter")
    return rng.standard_normal(n)


def sincere_rating(voter_pos, candidate_pos, offset: float = 3.0):
    return offset - np.abs(np.subtract(voter_pos, candidate_pos))


def rating_matrix(voters: np.ndarray, candidates: Sequence[float], offset: float = 3.0) -> np.ndarray:
    """``(V, C)`` array of sincere ratings."""
    return sincere_rating(np.asarray(voters)[:, None], np.asarray(candidates)[None, :], offset)


def generate_rated_profile(config: SpatialConfig) -> Profile:
    """Sincere rated profile, one ballot per voter placed by ``config``."""
    return rated_profile(config.voters(), config.candidate_positions, config.rating_offset)


def rated_profile(voters: np.ndarray, candidate_positions: Sequence[float], offset: float = 3.0) -> Profile:
    """Sincere ratings of the given voters.

    The scale is continuous and spans exactly the ratings that occur (padded
    by 0.5 each way when every rating is equal).
    """
    r = rating_matrix(voters, candidate_positions, offset)
    lo, hi = float(r.min()), float(r.max())
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    return Profile.rated(r, scale=RatingScale.continuous(lo, hi))


def nearest_candidate_ballot(voter_pos: float, candidate_positions: Sequence[float]) -> tuple[int, ...]:
    """Ranking by distance, nearest first.

    The ranking stops before the first group of equidistant candidates, so an
    equidistant voter abstains on those pairs (and, with two candidates,
    abstains outright).
    """
    if len(candidate_positions) < 2:
        raise ValueError("need at least two candidates")
    d = np.abs(np.asarray(candidate_positions, dtype=float) - voter_pos)
    order = np.argsort(d, kind="stable")
    ranking = []
    for k, c in enumerate(order):
        tied_next = k + 1 < len(order) and d[order[k + 1]] == d[c]
        tied_prev = k > 0 and d[order[k - 1]] == d[c]
        if tied_next or tied_prev:
            break
        ranking.append(int(c))
    return tuple(ranking)


def nearest_candidate_profile(voters: np.ndarray, candidate_positions: Sequence[float]) -> Profile:
    return Profile.ranked([nearest_candidate_ballot(v, candidate_positions) for v in voters],
                          len(candidate_positions))
