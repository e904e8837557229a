"""
Which rule finds the centrist?
==============================

Voters are drawn from a standard normal; candidate A stands at 0 and B at
``b``.  A is always the better choice.  Across 10,000 trials per cell we
count how often majority rule and MJD disagree, and which of them picked A
when they did.
"""

import sys

from votelab.experiments import StudyConfig, run_full_study

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 10_000
result = run_full_study(StudyConfig(trials_per_cell=trials, master_seed=0))

print(f"{'voters':>6} {'B':>4} {'MR only':>8} {'MJD only':>9} {'ratio':>6}")
for c in result.cells:
    print(f"{c.n_voters:>6} {c.b_pos:>4.1f} {c.mr_only:>8} {c.mjd_only:>9} {c.ratio:>6.2f}")

# %%
# The gap widens with more voters and with B further from the centre.
far, near = result.cell(95, 0.5), result.cell(15, 0.1)
print(f"\nn=95, B=0.5: MR right {far.ratio:.1f}x as often as MJD")
print(f"n=15, B=0.1: MR right {100 * (near.ratio - 1):.0f}% more often")
