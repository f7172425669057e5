"""Mean expansivity: what fraction of pairs stays averaged-apart?

An observable is mean expansive at level delta when almost every pair of
points keeps its time-averaged gap above delta.  The doubling indicator
saturates (every typical pair averages to 1/2); the rotation character has
an exact arc-measure answer to compare against.
"""

import math

import ergolab as e

plan = e.RandomPlan(42)
PAIRS = 3000
N = 4096

dbl = e.make_system(e.doubling())
ind = e.CellIndicator(e.halves(), 0)
est = e.mean_expansivity_estimate(dbl, ind, delta=0.4, pair_count=PAIRS,
                                  horizon=N, plan=plan)
print(f"doubling indicator, delta=0.4: rate {est.value:.3f} "
      f"(nonconverged share {est.nonconverged_fraction:.2f})")

rot = e.make_system(e.rotation(e.GOLDEN))
est_r = e.mean_expansivity_estimate(rot, e.Character(1), delta=1.9,
                                    pair_count=PAIRS, horizon=N, plan=plan)
# for the rotation the gap is 2|sin(pi t)| with t uniform: closed form
closed = 1 - (2 / math.pi) * math.asin(0.95)
print(f"rotation character, delta=1.9: rate {est_r.value:.4f} "
      f"vs closed form {closed:.4f}")

# constants can never be expansive
z = e.mean_expansivity_estimate(rot, e.Constant(1.0), 0.1, 200, 64, plan)
print(f"constant observable: rate {z.value} (exactly zero)")
