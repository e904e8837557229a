"""Ballot files (CSV and JSON) and witness serialization.

CSV layout: a header row of candidate names, then one row per ballot.  Rated
files hold numbers (an empty cell means the candidate is unrated); ranked
files hold candidate names in preference order, with trailing blanks for a
truncated ranking.

JSON layout::

    {"candidates": ["A", "B"], "kind": "rated",
     "scale": {"kind": "integer", "min": 1, "max": 6},
     "ballots": [[2, 1], [6, 5]], "weights": [49, 49]}

Ranked JSON ballots are lists of candidate names; ``weights`` is optional and
``null`` stands for an unrated candidate.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .ballots import Profile, RatingScale, candidate_labels
from .rules import Outcome


class BallotFileError(ValueError):
    pass


def _number(cell: str) -> Optional[float]:
    try:
        return float(cell)
    except ValueError:
        return None


def parse_csv(text: str) -> tuple[Profile, list[str]]:
    rows = list(csv.reader(io.StringIO(text)))
    numbered = [(i + 1, [c.strip() for c in r]) for i, r in enumerate(rows) if any(c.strip() for c in r)]
    if not numbered:
        raise BallotFileError("line 1: empty ballot file")
    header_line, names = numbered[0]
    if any(not n for n in names) or len(set(names)) != len(names):
        raise BallotFileError(f"line {header_line}: header must list distinct candidate names")
    body = numbered[1:]
    if not body:
        raise BallotFileError(f"line {header_line + 1}: no ballots after the header")
    for line, cells in body:
        if len(cells) > len(names):
            raise BallotFileError(f"line {line}: {len(cells)} cells but {len(names)} candidates")

    filled = [c for _, cells in body for c in cells if c]
    if all(_number(c) is not None for c in filled):
        ratings = []
        for line, cells in body:
            cells = cells + [""] * (len(names) - len(cells))
            values = [_number(c) if c else math.nan for c in cells]
            if any(math.isinf(v) for v in values):
                raise BallotFileError(f"line {line}: ratings must be finite")
            ratings.append(values)
        try:
            return Profile.rated(ratings, candidate_count=len(names)), names
        except ValueError as e:
            raise BallotFileError(f"line {body[0][0]}: {e}") from None

    index = {n: i for i, n in enumerate(names)}
    rankings = []
    for line, cells in body:
        while cells and not cells[-1]:
            cells = cells[:-1]
        if "" in cells:
            raise BallotFileError(f"line {line}: blank cell inside a ranking")
        unknown = [c for c in cells if c not in index]
        if unknown:
            raise BallotFileError(f"line {line}: unknown candidate {unknown[0]!r}")
        if len(set(cells)) != len(cells):
            raise BallotFileError(f"line {line}: candidate listed twice")
        rankings.append([index[c] for c in cells])
    return Profile.ranked(rankings, len(names)), names


def parse_json(text: str) -> tuple[Profile, list[str]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise BallotFileError(f"line {e.lineno}: {e.msg}") from None
    try:
        names = [str(n) for n in doc["candidates"]]
        kind = doc.get("kind", "rated")
        ballots = doc["ballots"]
        weights = doc.get("weights")
        if kind == "ranked":
            index = {n: i for i, n in enumerate(names)}
            return Profile.ranked([[index[c] for c in b] for b in ballots], len(names), weights), names
        scale = RatingScale.from_dict(doc["scale"]) if doc.get("scale") else None
        r = [[math.nan if x is None else float(x) for x in b] for b in ballots]
        return Profile.rated(r, scale=scale, weights=weights, candidate_count=len(names)), names
    except (KeyError, TypeError, ValueError) as e:
        raise BallotFileError(f"line 1: malformed ballot document ({e})") from None


def read_ballots(path: Union[str, Path]) -> tuple[Profile, list[str]]:
    """Load a ballot file; JSON if the suffix is ``.json``, CSV otherwise."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return parse_json(text)
    return parse_csv(text)


def profile_to_dict(profile: Profile, names: Optional[Sequence[str]] = None) -> dict:
    names = list(names or candidate_labels(profile.candidate_count))
    doc = {"candidates": names, "kind": profile.kind}
    if profile.is_rated:
        doc["scale"] = profile.scale.to_dict()
        doc["ballots"] = [[None if np.isnan(x) else _plain(x) for x in row] for row in profile.ratings]
    else:
        doc["ballots"] = [[names[c] for c in b] for b in profile.rankings]
    doc["weights"] = [int(w) for w in profile.weights]
    return doc


def _plain(x: float):
    return int(x) if float(x).is_integer() else float(x)


def write_json(profile: Profile, names: Optional[Sequence[str]] = None) -> str:
    return json.dumps(profile_to_dict(profile, names), indent=2)


def write_csv(profile: Profile, names: Optional[Sequence[str]] = None) -> str:
    """CSV has no weights column, so weighted ballots are written out repeatedly."""
    names = list(names or candidate_labels(profile.candidate_count))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    for i in range(len(profile)):
        if profile.is_rated:
            row = ["" if np.isnan(x) else _plain(x) for x in profile.ratings[i]]
        else:
            b = profile.rankings[i]
            row = [names[c] for c in b] + [""] * (profile.candidate_count - len(b))
        w.writerows([row] * int(profile.weights[i]))
    return buf.getvalue()


def outcome_to_dict(outcome: Outcome, names: Optional[Sequence[str]] = None) -> dict:
    def label(c):
        return names[c] if names else c

    trace = {}
    for k, v in outcome.trace.items():
        if isinstance(v, dict):
            v = {str(label(c)): x for c, x in v.items()}
        elif isinstance(v, tuple):
            v = list(v)
        trace[k] = v
    return {
        "winner": None if outcome.winner is None else label(outcome.winner),
        "tied": sorted(label(c) for c in outcome.tied),
        "trace": trace,
    }


def report_to_dict(report, names: Optional[Sequence[str]] = None) -> dict:
    """JSON-ready form of a :class:`~votelab.criteria.CriterionReport`."""
    doc = {"criterion": report.criterion.value, "violated": report.violated}
    w = report.witness
    if w is not None:
        doc["detail"] = {k: (list(v) if isinstance(v, tuple) else v) for k, v in w.detail.items()}
        doc["profiles"] = []
        doc["outcomes"] = []
        for p, o in zip(w.profiles, w.outcomes):
            pnames = names if names and len(names) == p.candidate_count else None
            if names and "removed" in w.detail and p.candidate_count == len(names) - 1:
                pnames = [n for c, n in enumerate(names) if c != w.detail["removed"]]
            doc["profiles"].append(profile_to_dict(p, pnames))
            doc["outcomes"].append(outcome_to_dict(o, None))
    return doc
