"""Mean-equicontinuity partitions: few clusters vs. cluster blow-up.

A function f is mean equicontinuous when, for every eps, most of the space
splits into finitely many sets with pairwise time-averaged gap below eps.
The greedy finder recovers such clusters for the rotation and fails (by
budget) for the doubling map — and whenever it succeeds with k clusters,
the covering number at the same scale is at most k.
"""

import ergolab as e

plan = e.RandomPlan(7)
N = 256

rot = e.make_system(e.rotation(e.GOLDEN))
f = e.Character(1)
samples = rot.sample_measure(800, plan.child(1))

ep = e.find_equipartition(rot, f, eps=0.5, samples=samples, horizon=N)
print(f"rotation/character: {ep.k} clusters, mass {ep.covered_mass:.3f}, "
      f"max within-cluster gap {ep.diameter_bound:.3f}")

report = e.verify_equipartition(ep, rot, f, samples, mode="uniform")
print("uniform re-check:", "pass" if report.passed else "FAIL",
      f"(max pairwise fhat {report.max_pairwise:.3f})")

cover = e.estimate_cover_number(samples, N, 0.5, e.FbarKind(f), system=rot)
print(f"cover number on the same samples: {cover.count} <= k = {ep.k}")

# the doubling map scatters pairs at rate ~1/2: clusters degenerate
dbl = e.make_system(e.doubling())
d_samples = dbl.sample_measure(400, plan.child(2))
out = e.find_equipartition(dbl, f, eps=0.4, samples=d_samples, horizon=N,
                           k_max=100)
print("\ndoubling/character:", type(out).__name__,
      f"(covered only {out.covered_mass:.2f} with k_max=100)")

# name-word version of the same story
ep_h = e.hamming_equipartition(rot, e.halves(), 0.2, samples, N)
print(f"\nrotation/halves Hamming clusters: k = {ep_h.k}")
