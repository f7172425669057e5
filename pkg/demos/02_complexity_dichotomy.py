"""Bounded vs. growing covering complexity — the central dichotomy.

K(n, eps) counts the Hamming balls of radius eps needed to cover measure
> 1 - eps of the space, at name length n.  For the irrational rotation the
counts stay flat in n; for the bernoulli shift they blow up until the
sample budget saturates.  Bounded complexity is the combinatorial face of
discrete spectrum.
"""

import ergolab as e

plan = e.RandomPlan(42)
EPS = 0.1
M = 600

rot = e.make_system(e.rotation(e.GOLDEN))
curve_r = e.complexity_curve(
    rot, e.HammingKind(e.halves()), [16, 64, 256, 1024], EPS, M, plan
)

ber = e.make_system(e.bernoulli_shift(0.5))
curve_b = e.complexity_curve(
    ber, e.HammingKind(e.cylinder([0], 2)), [8, 16, 32, 64], EPS, M, plan
)

for label, curve in [("rotation", curve_r), ("bernoulli", curve_b)]:
    print(f"{label}:")
    for p in curve.points:
        print(f"  n={p.n:5d}  K={p.k_est:4d}  CI=[{p.k_lo:.0f}, {p.k_hi:.0f}]")
    print("  verdict:", e.classify_boundedness(curve))

# exact small-instance oracle, for calibration: uniform binary words, n=4
import itertools

dist = [(w, 1 / 16) for w in itertools.product((0, 1), repeat=4)]
print("\nexact K(n=4, eps=0.25) =", e.exact_cover_number_small(dist, 4, 0.25))
print("exact K(n=4, eps=0.30) =", e.exact_cover_number_small(dist, 4, 0.30))

e.emit_plot(curve_r, "/tmp/rotation_curve.svg")
print("\nwrote /tmp/rotation_curve.svg")
