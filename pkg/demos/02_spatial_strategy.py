"""
Strategic voters on a left-right axis
=====================================

99 voters sit at the 1st..99th percentiles of a standard normal.  Candidate
A is at 0 (the median voter), candidate B at 0.5.  Each voter rates a
candidate ``3 - distance``.  A wins every rule sincerely, but a handful of
B's supporters exaggerating their ratings can hand B the win under range
voting and median grading, never under majority rule.
"""

import numpy as np

from votelab import majority_rule, mj_winner, mjd_winner, range_winner
from votelab.scenarios import spatial_percentile_profile
from votelab.strategy import AttackSpec, apply_strategic_voters, discretize_profile, min_flippers

A, B = 0, 1
p = spatial_percentile_profile()

# %%
# Sincere ballots.
print("sincere means  ", np.round(range_winner(p).trace["means"], 3))
print("sincere medians", np.round(mjd_winner(p).trace["medians"], 3))
print("MR votes       ", majority_rule(p).trace["votes"])

# %%
# The six rightmost B supporters give B the highest rating anyone gave and A
# the lowest.
six = apply_strategic_voters(p, AttackSpec(favored=B, opponent=A, k=6))
print("\nafter 6 strategic voters")
print("  means  ", np.round(range_winner(six).trace["means"], 3), "-> RV elects", "AB"[range_winner(six).winner])
print("  medians", np.round(mjd_winner(six).trace["medians"], 3), "-> MJD elects", "AB"[mjd_winner(six).winner])
print("  MR still elects", "AB"[majority_rule(six).winner])

# %%
# How few exaggerators does each rule need?
for name, rule in [("RV", range_winner), ("MJD", mjd_winner), ("MR", majority_rule)]:
    print(f"fewest strategic voters to flip {name}: {min_flippers(p, rule, B, A)}")

# %%
# Binning the ratings into six grades (width 0.5) ties the medians, so the
# row-scan tie-break decides.  The attack moves the decisive row.
for label, profile in [("sincere", p), ("6 strategic", six)]:
    out = mj_winner(discretize_profile(profile))
    grades = {"AB"[c]: int(g) for c, g in out.trace["decisive_grades"].items()}
    print(f"\n6-grade MJ, {label}: row {out.trace['decisive_row']} grades {grades} -> {'AB'[out.winner]}")
