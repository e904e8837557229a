"""
Searching for paradoxes
=======================

Every Condorcet-consistent rule fails some criteria: a voter can
occasionally help themselves by staying home, and so on.  The search walks
small profile spaces exhaustively and samples larger ones.  Such witnesses
are rare, and for minimax they only appear in profiles with no Condorcet
winner.
"""

import numpy as np

from votelab import condorcet_winner, minimax, pairwise_tally
from votelab.rules import minimax_winning_votes
from votelab.criteria import SearchSpace, search_violations


def show(report, names="ABCD"):
    removed = report.witness.detail.get("removed")
    for profile, outcome in zip(report.witness.profiles, report.witness.outcomes):
        labels = names[:profile.candidate_count] if profile is report.witness.profiles[0] or removed is None \
            else [n for c, n in enumerate(names[:profile.candidate_count + 1]) if c != removed]
        print(f"  {int(profile.total_weight)} voters -> top {[labels[c] for c in sorted(outcome.top)]}")
        for i in range(len(profile)):
            print(f"    {int(profile.weights[i]):>2} x {'>'.join(labels[c] for c in profile.ballot(i))}")


# %%
# Three candidates, up to five voters: walked exhaustively.  No-show never
# fires, but dropping a loser can change the minimax winner.
small = SearchSpace(candidates=3, min_voters=2, max_voters=5, truncated=True)
print("no-show witness among 3 candidates:", search_violations(minimax, "no_show", small))
report = search_violations(minimax, "scc", SearchSpace(3, 1, 5))
print("SCC witness:", report.witness.detail)
show(report)

# %%
# Four candidates, 20-40 voters, truncated ballots drawn in blocs: too many
# profiles to enumerate, so sample.
wide = SearchSpace(candidates=4, min_voters=20, max_voters=40, truncated=True, blocs=4)
report = search_violations(minimax_winning_votes, "no_show", wide, np.random.default_rng(3), budget=60_000)
print("\nno-show witness (winning-votes minimax):", report.witness.detail)
print("Condorcet winner in the original profile:", condorcet_winner(pairwise_tally(report.witness.profiles[0])))
show(report)
