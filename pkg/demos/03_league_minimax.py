"""
A three-team league and minimax
===============================

Teams A, B and C play 27 games.  A beats B 9-0, B beats C 9-0, and A and C
split 4-5.  Treat every game as a ballot ranking the winner over the loser:
minimax crowns A, whose worst result is a one-game deficit.  Drop B and
recount, though, and C wins the remaining head-to-head.
"""

from votelab import minimax, pairwise_tally
from votelab.criteria import check_scc
from votelab.scenarios import league_profile

names = "ABC"
p = league_profile()
t = pairwise_tally(p)
print("games won (row beat column):")
print(t.n)

out = minimax(p)
print("largest losses:", dict(zip(names, out.trace["largest_loss"])), "-> champion", names[out.winner])

# %%
# Removing a losing team and recounting should not change the champion.
report = check_scc(p, minimax)
d = report.witness.detail
print(f"\ndrop {names[d['removed']]} and recount -> {names[d['recount_winner']]}"
      f" (violation: {report.violated})")
