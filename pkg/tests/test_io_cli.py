import json

import numpy as np
import pytest

from votelab.ballots import Profile, RatingScale, pairwise_tally
from votelab.cli import main
from votelab.criteria import check_scc, replay
from votelab.io import (
    BallotFileError,
    parse_csv,
    parse_json,
    profile_to_dict,
    read_ballots,
    report_to_dict,
    write_csv,
    write_json,
)
from votelab.rules import minimax, mj_winner
from votelab.scenarios import league_profile, lopsided_grades_profile

A, B, C = 0, 1, 2


@pytest.fixture
def example1_csv(tmp_path):
    path = tmp_path / "example1.csv"
    path.write_text(write_csv(lopsided_grades_profile(), ["A", "B"]))
    return path


# --- parsing ----------------------------------------------------------------

def test_parse_rated_csv():
    p, names = parse_csv("X,Y,Z\n1,2,3\n3,,1\n")
    assert names == ["X", "Y", "Z"] and p.is_rated
    assert np.isnan(p.ratings[1, 1])


def test_parse_ranked_csv_with_truncation():
    p, names = parse_csv("A,B,C\nB,A,C\nC,,\n")
    assert not p.is_rated and p.rankings == ((B, A, C), (C,))


@pytest.mark.parametrize("text, line, message", [
    ("", 1, "empty"),
    ("A,A\n1,2\n", 1, "distinct"),
    ("A,B\n", 2, "no ballots"),
    ("A,B\n1,2\n1,2,3\n", 3, "3 cells"),
    ("A,B,C\nA,,B\n", 2, "blank cell"),
    ("A,B\nA,D\n", 2, "unknown candidate"),
    ("A,B\nA,A\n", 2, "twice"),
    ("A,B\n1,inf\n", 2, "finite"),
])
def test_csv_errors_name_the_line(text, line, message):
    with pytest.raises(BallotFileError, match=rf"line {line}: .*{message}"):
        parse_csv(text)


def test_parse_json_rated_and_ranked():
    p, names = parse_json(json.dumps({
        "candidates": ["A", "B"], "kind": "rated", "scale": {"kind": "integer", "min": 1, "max": 6},
        "ballots": [[2, 1], [6, None]], "weights": [49, 2]}))
    assert p.total_weight == 51 and np.isnan(p.ratings[1, 1])
    q, _ = parse_json('{"candidates": ["A", "B", "C"], "kind": "ranked", "ballots": [["C", "A"]]}')
    assert q.rankings == ((C, A),)


@pytest.mark.parametrize("text", ['{"candidates": ["A"]', '{"ballots": []}', '{"candidates": ["A","B"], "kind": "ranked", "ballots": [["Q"]]}'])
def test_json_errors(text):
    with pytest.raises(BallotFileError, match="line"):
        parse_json(text)


@pytest.mark.parametrize("profile", [
    lopsided_grades_profile(),
    league_profile(),
    Profile.ranked([(A, B, C), (C,), (B, A)], 3, weights=[2, 1, 3]),
    Profile.rated([[0.25, 1.5], [2.0, 0.0]], scale=RatingScale.continuous(0, 3)),
])
def test_round_trip_preserves_tally(tmp_path, profile):
    for suffix, writer in ((".json", write_json), (".csv", write_csv)):
        path = tmp_path / f"ballots{suffix}"
        path.write_text(writer(profile))
        loaded, _ = read_ballots(path)
        assert pairwise_tally(loaded) == pairwise_tally(profile)
        assert loaded.total_weight == profile.total_weight


def test_witness_json_replays():
    report = check_scc(league_profile(), minimax)
    doc = json.loads(json.dumps(report_to_dict(report, ["A", "B", "C"])))
    assert doc["detail"]["removed"] == B
    reduced, names = parse_json(json.dumps(doc["profiles"][1]))
    assert names == ["A", "C"]
    assert minimax(reduced).winner == 1  # C, reindexed
    assert replay(report, minimax)


def test_profile_dict_uses_names():
    doc = profile_to_dict(Profile.ranked([(B, A)], 2), ["left", "right"])
    assert doc["ballots"] == [["right", "left"]]


# --- command line -----------------------------------------------------------

def test_tally_text(example1_csv, capsys):
    assert main(["tally", str(example1_csv), "--rule", "mj"]) == 0
    out = capsys.readouterr().out
    assert "winner: B" in out and "medians: A=3  B=4" in out


def test_tally_json(example1_csv, capsys):
    assert main(["tally", str(example1_csv), "--rule", "majority", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["winner"] == "A" and doc["pairwise"] == [[0, 98], [1, 0]]


def test_tally_bad_input(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert main(["tally", str(empty)]) == 1
    assert "line 1" in capsys.readouterr().err
    assert main(["tally", str(tmp_path / "missing.csv")]) == 1


def test_tally_rule_mismatch_is_input_error(tmp_path):
    path = tmp_path / "three.csv"
    path.write_text("A,B,C\nA,B,C\n")
    assert main(["tally", str(path), "--rule", "majority"]) == 1


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as e:
        main(["tally"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["tally", "x.csv", "--rule", "borda"])
    assert e.value.code == 1


def test_require_winner_tie(tmp_path):
    path = tmp_path / "cycle.csv"
    path.write_text("A,B,C\nA,B,C\nB,C,A\nC,A,B\n")
    assert main(["tally", str(path)]) == 0
    assert main(["tally", str(path), "--require-winner"]) == 2


def test_tally_with_grades(tmp_path, capsys):
    path = tmp_path / "r.csv"
    path.write_text("A,B\n0.2,2.9\n0.7,2.9\n3.0,0.1\n")
    assert main(["tally", str(path), "--rule", "mj", "--grades", "6"]) == 0
    assert "winner: B" in capsys.readouterr().out


@pytest.mark.parametrize("target", ["example1", "example2", "approval", "example3", "league"])
def test_reproduce_targets_pass(target, capsys):
    assert main(["reproduce", target]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "checks passed" in out


def test_reproduce_small_study_runs(capsys):
    assert main(["reproduce", "study", "--trials", "400"]) in (0, 3)
    assert "MR alone" in capsys.readouterr().out


def test_reproduce_mismatch_exit_code(monkeypatch, capsys):
    from votelab import reproduce
    monkeypatch.setitem(reproduce.TARGETS, "league", lambda: [reproduce.Check("forced", 1, 2)])
    assert main(["reproduce", "league"]) == 3
    assert "FAIL" in capsys.readouterr().out


def test_simulate_deterministic_output(tmp_path):
    args = ["simulate", "--voters", "15", "--b-pos", "0.1", "0.5", "--trials", "200", "--deterministic"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["-o", str(a)]) == 0
    assert main(args + ["-o", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0].startswith("# config") and lines[1].startswith("n_voters,b_pos")


def test_simulate_stamps_time_by_default(capsys):
    assert main(["simulate", "--voters", "5", "--b-pos", "0.3", "--trials", "10"]) == 0
    assert capsys.readouterr().out.startswith("# generated ")


def test_simulate_json(capsys):
    assert main(["simulate", "--voters", "5", "--b-pos", "0.3", "--trials", "10", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["cells"][0]["trials"] == 10


@pytest.mark.parametrize("extra, expected", [
    ([], "6"), (["--rule", "rv"], "5"), (["--rule", "mr"], "none"), (["--rule", "mj", "--grades", "6"], "5"),
])
def test_attack(extra, expected, capsys):
    assert main(["attack"] + extra) == 0
    assert capsys.readouterr().out.strip() == expected


def test_attack_unknown_candidate(capsys):
    assert main(["attack", "--favored", "Q"]) == 1


def test_criteria_scc_witness(capsys):
    assert main(["criteria", "--criterion", "scc", "--max-voters", "5", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["violated"] and "removed" in doc["detail"]
    before, after = doc["profiles"]
    assert len(after["candidates"]) == len(before["candidates"]) - 1


def test_criteria_none_found(capsys):
    assert main(["criteria", "--criterion", "no_show", "--max-voters", "3"]) == 0
    assert "no no_show violation" in capsys.readouterr().out


def test_criteria_rated_truncation_rejected(capsys):
    assert main(["criteria", "--criterion", "truncation", "--ballots", "rated", "--rule", "mj"]) == 1


def test_mj_file_matches_library(example1_csv):
    loaded, _ = read_ballots(example1_csv)
    assert mj_winner(loaded).winner == B
