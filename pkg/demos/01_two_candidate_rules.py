"""
Two candidates, four rules
==========================

With only two candidates on the ballot, majority rule asks a single question:
which candidate do more voters prefer?  Grading and scoring rules ask
something else, and can answer against a 98-1 majority.
"""

from votelab import majority_rule, mj_winner, range_winner, approval_winner, pairwise_tally
from votelab.scenarios import (
    approval_nine_voter_ratings,
    approvals_from_ratings,
    lopsided_grades_profile,
    one_extreme_rater_profile,
)

# %%
# Majority judgment on six grades.  49 voters grade A=2, B=1; 49 grade
# A=6, B=5; one voter grades A=3, B=4.  Everyone except that one voter puts
# A ahead, yet B has the higher median grade.
p = lopsided_grades_profile()
mj = mj_winner(p)
mr = majority_rule(p)
print("medians (A, B):", mj.trace["medians"], "-> MJ elects", "AB"[mj.winner])
print("votes   (A, B):", mr.trace["votes"], "-> MR elects", "AB"[mr.winner])

# %%
# Range voting on a 0..99 scale.  98 voters put A one point above B; the
# last voter gives A 0 and B 99.  One voter's exaggeration outweighs the
# other 98.
p = one_extreme_rater_profile()
totals = range_winner(p).trace["totals"]
print("\nRV totals (A, B):", totals, "-> difference", totals[1] - totals[0])
print("MR elects", "AB"[majority_rule(p).winner])

# %%
# Approval voting: nine voters rate X and Y on 0..10 and approve anything
# rated 5 or more.  Eight of the nine prefer Y, but X collects more
# approvals.
ratings = approval_nine_voter_ratings()
out = approval_winner(approvals_from_ratings(ratings, 5))
print("\napprovals (X, Y):", out.trace["approvals"], "-> elects", "XY"[out.winner])
print("voters preferring Y to X:", pairwise_tally(ratings).n[1, 0], "of", ratings.total_weight)
