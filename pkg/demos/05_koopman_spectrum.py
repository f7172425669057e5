"""Koopman orbit geometry: almost periodic or not.

U f = f o T acts on L2.  For the rotation, U multiplies each character by
a unimodular constant, so the orbit {U^n f} lies on a circle — totally
bounded, covering numbers flat in N.  For the doubling map U^n doubles the
frequency each step, producing an orthonormal (hence unbounded) orbit.
"""

import numpy as np

import ergolab as e

plan = e.RandomPlan(31337)
f = e.Character(1)

rot = e.make_system(e.rotation(e.GOLDEN))
dbl = e.make_system(e.doubling())

for label, system, horizons, r in [
    ("rotation", rot, [64, 256, 1024], 0.5),
    ("doubling", dbl, [16, 32, 64], 1.0),
]:
    counts = [
        e.orbit_covering_number(system, f, N, r, 800, plan).covering_count
        for N in horizons
    ]
    verdict = e.classify_almost_periodic(system, f, horizons, r, 800, plan)
    print(f"{label}: covering counts {counts} at r={r} -> {verdict}")

# eigenfunction check: character(1) IS an eigenfunction of the rotation
lam = np.exp(2j * np.pi * rot.theta)
res = e.eigen_residual(rot, f, lam, 4096, plan)
print(f"\n|| U f - lambda f || for the rotation: {res:.2e}")

# ... and is orthogonal to U f for the doubling map
res_d = e.eigen_residual(dbl, f, 1.0, 4096, plan)
print(f"same residual for doubling (should be ~sqrt(2)): {res_d:.3f}")

# Monte Carlo L2 geometry is exact on shared samples
print("\nl2(char1, char2) =", round(e.l2_distance(rot, e.Character(1),
                                                  e.Character(2), 10**5, plan), 4),
      "~ sqrt(2) =", round(np.sqrt(2), 4))
