"""Monte Carlo comparison of majority rule and MJD on a two-candidate spatial model.

Candidate A sits at 0, the median of a standard-normal electorate, so A is
always the better candidate; B sits at ``b_pos``.  Each trial draws a fresh
sample of voters, and each cell counts how often the two rules disagree.

Random streams: cell ``(s, t)`` of a study gets the seed
``SeedSequence((master_seed, s, t)).generate_state(1, uint64)[0]``, and trial
``i`` of a cell draws from ``PCG64(SeedSequence((cell_seed, i)))``.  Results
therefore do not depend on how cells or trials are scheduled.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .rules import majority_rule, mjd_winner, row_scan_order
from .spatial import nearest_candidate_profile, rated_profile, sample_voters

A, B = 0, 1
RATING_OFFSET = 3.0


@dataclass(frozen=True)
class StudyConfig:
    voter_counts: tuple[int, ...] = (15, 55, 95)
    b_positions: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5)
    trials_per_cell: int = 10_000
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "voter_counts", tuple(int(n) for n in self.voter_counts))
        object.__setattr__(self, "b_positions", tuple(float(b) for b in self.b_positions))
        if any(n < 1 for n in self.voter_counts):
            raise ValueError("voter counts must be positive")
        if self.trials_per_cell < 0:
            raise ValueError("trial count must be non-negative")


@dataclass(frozen=True)
class CellResult:
    n_voters: int
    b_pos: float
    trials: int
    mr_only: int = 0
    mjd_only: int = 0
    both_a: int = 0
    neither_a: int = 0
    tie_trials: int = 0

    @property
    def ratio(self) -> float:
        """How many times more often MR alone picked A than MJD alone did."""
        if self.mjd_only == 0:
            return float("inf") if self.mr_only else float("nan")
        return self.mr_only / self.mjd_only


class TrialWinners(NamedTuple):
    """Winner of each rule in one trial; ``None`` marks a tie."""
    mr: Optional[int]
    mjd: Optional[int]


def trial_rng(cell_seed: int, trial_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((int(cell_seed), int(trial_index)))))


def cell_seed(master_seed: int, section: int, subsection: int) -> int:
    ss = np.random.SeedSequence((int(master_seed), int(section), int(subsection)))
    return int(ss.generate_state(1, np.uint64)[0])


def run_trial(n_voters: int, b_pos: float, rng: np.random.Generator) -> TrialWinners:
    """One trial, computed through the general rules."""
    voters = sample_voters(n_voters, rng)
    positions = (0.0, float(b_pos))
    mr = majority_rule(nearest_candidate_profile(voters, positions))
    mjd = mjd_winner(rated_profile(voters, positions, RATING_OFFSET))
    return TrialWinners(mr.winner, mjd.winner)


def _classify(n_voters: int, b_pos: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized winners for a ``(trials, voters)`` sample; -1 marks a tie."""
    da, db = np.abs(z), np.abs(z - b_pos)
    va, vb = (da < db).sum(axis=1), (db < da).sum(axis=1)
    mr = np.where(va > vb, A, np.where(vb > va, B, -1))

    sa = -np.sort(-(RATING_OFFSET - da), axis=1)
    sb = -np.sort(-(RATING_OFFSET - db), axis=1)
    # Column 0 of the reordered difference is the median row itself, so this
    # also covers the untied-median case.
    diff = (sa - sb)[:, np.array(row_scan_order(n_voters)) - 1]
    nz = diff != 0
    first = nz.argmax(axis=1)
    decided = nz.any(axis=1)
    sign = diff[np.arange(len(diff)), first]
    mjd = np.where(~decided, -1, np.where(sign > 0, A, B))
    return mr, mjd


def run_cell(n_voters: int, b_pos: float, trials: int, seed: int) -> CellResult:
    """Aggregate ``trials`` independent trials drawn from per-trial generators."""
    if trials == 0:
        return CellResult(n_voters, float(b_pos), 0)
    z = np.empty((trials, n_voters))
    for i in range(trials):
        z[i] = trial_rng(seed, i).standard_normal(n_voters)
    mr, mjd = _classify(n_voters, b_pos, z)
    tie = (mr < 0) | (mjd < 0)
    return CellResult(
        n_voters, float(b_pos), trials,
        mr_only=int(np.sum(~tie & (mr == A) & (mjd == B))),
        mjd_only=int(np.sum(~tie & (mr == B) & (mjd == A))),
        both_a=int(np.sum(~tie & (mr == A) & (mjd == A))),
        neither_a=int(np.sum(~tie & (mr == B) & (mjd == B))),
        tie_trials=int(tie.sum()),
    )


@dataclass
class StudyResult:
    config: StudyConfig
    cells: list[CellResult] = field(default_factory=list)

    COLUMNS = ("n_voters", "b_pos", "trials", "mr_only", "mjd_only", "both_a", "neither_a", "ties", "ratio")

    def cell(self, n_voters: int, b_pos: float) -> CellResult:
        for c in self.cells:
            if c.n_voters == n_voters and np.isclose(c.b_pos, b_pos):
                return c
        raise KeyError((n_voters, b_pos))

    def rows(self) -> list[tuple]:
        return [(c.n_voters, c.b_pos, c.trials, c.mr_only, c.mjd_only, c.both_a,
                 c.neither_a, c.tie_trials, round(c.ratio, 4)) for c in self.cells]

    def to_csv(self, header_lines: tuple[str, ...] = ()) -> str:
        buf = io.StringIO()
        for line in header_lines:
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.COLUMNS)
        w.writerows(self.rows())
        return buf.getvalue()

    def to_json(self) -> str:
        cfg = asdict(self.config)
        cells = [dict(zip(self.COLUMNS, r)) for r in self.rows()]
        for c in cells:
            if not np.isfinite(c["ratio"]):
                c["ratio"] = None
        return json.dumps({"config": cfg, "cells": cells}, indent=2)


def _cell_job(args):
    return run_cell(*args)


def run_full_study(config: StudyConfig = StudyConfig(), jobs: int = 1) -> StudyResult:
    """One cell per (voter count, B position); ``jobs > 1`` runs cells in worker processes."""
    tasks = [(n, b, config.trials_per_cell, cell_seed(config.master_seed, s, t))
             for s, n in enumerate(config.voter_counts)
             for t, b in enumerate(config.b_positions)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_cell_job, tasks))
    else:
        cells = [run_cell(*t) for t in tasks]
    return StudyResult(config, cells)
