"""Covering complexity of Birkhoff pseudo-metric balls.

The central quantity is the least number of radius-eps balls (in the
Hamming, fbar or fhat pseudo-metric at horizon n) whose union carries
measure strictly above 1 - eps.  Two routes are provided:

* ``estimate_cover_number`` -- greedy weighted set cover over
  sample-centered balls; an upper-biased estimate, deterministic
  given the inputs.
* ``exact_cover_number_small`` -- exhaustive branch-and-bound over a
  finite word distribution; the independent small-instance oracle.

Strict inequalities (< eps for ball membership, > 1-eps for covered
mass) follow the definitions exactly; mass comparisons are done in
exact rational arithmetic so boundary ties resolve to "not covered".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BudgetExhaustedError,
    InstanceTooLargeError,
    InvalidParameterError,
)
from .metrics import fbar_n, fhat_n, hamming_avg
from .observables import Observable
from .partitions import NameWord, Partition, name_symbols, name_word
from .rng import RandomPlan
from .systems import SystemHandle

_CHUNK = 64


# ---------------------------------------------------------------------------
# Metric kinds


@dataclass(frozen=True)
class HammingKind:
    partition: Partition
    label = "hamming"


@dataclass(frozen=True)
class FbarKind:
    observable: Observable
    label = "fbar"


@dataclass(frozen=True)
class FhatKind:
    observable: Observable
    label = "fhat"


MetricKind = HammingKind | FbarKind | FhatKind


def _sample_features(kind, system, samples, n) -> np.ndarray:
    """Per-sample horizon-n features: name symbols or orbit values."""
    if isinstance(kind, HammingKind):
        rows = []
        for s in samples:
            if isinstance(s, NameWord):
                arr = s.as_array()
                if arr.size != n:
                    raise InvalidParameterError("name word length differs from horizon")
                rows.append(arr)
            else:
                rows.append(name_symbols(system, kind.partition, s, n))
        return np.stack(rows)
    f = kind.observable
    return np.stack([f.orbit_values(system, s, n) for s in samples])


def _popcount(a: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(a)
    lut = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(1)
    return lut[a]


def _pairwise_hamming(labels: np.ndarray) -> np.ndarray:
    """Fraction of differing positions for every row pair."""
    m, n = labels.shape
    alpha = int(labels.max()) + 1 if m else 1
    mismatches = np.zeros((m, m), dtype=np.int64)
    if alpha <= 8:
        # pack the per-symbol indicator planes and count agreements by popcount
        agree = np.zeros((m, m), dtype=np.int64)
        planes = [np.packbits(labels == s, axis=1) for s in range(alpha)]
        for lo in range(0, m, _CHUNK):
            hi = min(lo + _CHUNK, m)
            for plane in planes:
                agree[lo:hi] += _popcount(
                    plane[lo:hi, None, :] & plane[None, :, :]
                ).sum(axis=2, dtype=np.int64)
        mismatches = n - agree
    else:
        for lo in range(0, m, _CHUNK):
            hi = min(lo + _CHUNK, m)
            mismatches[lo:hi] = (labels[lo:hi, None, :] != labels[None, :, :]).sum(
                axis=2
            )
    return mismatches / n


def _pairwise_fbar(values: np.ndarray) -> np.ndarray:
    m = values.shape[0]
    out = np.zeros((m, m))
    for lo in range(0, m, _CHUNK):
        hi = min(lo + _CHUNK, m)
        out[lo:hi] = np.abs(values[lo:hi, None, :] - values[None, :, :]).mean(axis=2)
    return out


def _pairwise_fhat(values: np.ndarray) -> np.ndarray:
    m, n = values.shape
    inv = 1.0 / np.arange(1, n + 1)
    out = np.zeros((m, m))
    chunk = max(1, _CHUNK // 4)
    for lo in range(0, m, chunk):
        hi = min(lo + chunk, m)
        gaps = np.abs(values[lo:hi, None, :] - values[None, :, :])
        prefix = np.cumsum(gaps, axis=2) * inv
        out[lo:hi] = prefix.max(axis=2)
    return out


def pairwise_distances(kind: MetricKind, system, samples, n: int) -> np.ndarray:
    feats = _sample_features(kind, system, samples, n)
    if isinstance(kind, HammingKind):
        return _pairwise_hamming(feats)
    if isinstance(kind, FbarKind):
        return _pairwise_fbar(feats)
    return _pairwise_fhat(feats)


def distance(kind: MetricKind, system, x, y, n: int) -> float:
    if isinstance(kind, HammingKind):
        wx = x if isinstance(x, NameWord) else name_word(system, kind.partition, x, n)
        wy = y if isinstance(y, NameWord) else name_word(system, kind.partition, y, n)
        return hamming_avg(wx, wy)
    if isinstance(kind, FbarKind):
        return fbar_n(system, kind.observable, x, y, n)
    return fhat_n(system, kind.observable, x, y, n)


def ball_member(center, candidate, n: int, eps: float, kind: MetricKind,
                system: Optional[SystemHandle] = None) -> bool:
    """Whether candidate lies in the open radius-eps ball around center."""
    if eps <= 0:
        raise InvalidParameterError("ball radius must be positive")
    return distance(kind, system, center, candidate, n) < eps


# ---------------------------------------------------------------------------
# Greedy cover


def _mass_exceeds(covered_units: int, total_units: int, eps: float) -> bool:
    # covered/total > 1 - eps, decided exactly
    feps = Fraction(eps)
    return covered_units * feps.denominator > total_units * (
        feps.denominator - feps.numerator
    )


def _greedy_cover(balls: np.ndarray, counts: np.ndarray, eps: float,
                  max_centers: int) -> tuple[list, int, int]:
    """Greedy weighted set cover; returns (centers, covered_units, total_units).

    Candidates are restricted to still-uncovered samples, which keeps the
    chosen centers pairwise at least eps apart and the run deterministic
    (ties break toward the lowest index).  Raises when the budget runs out.
    """
    m = balls.shape[0]
    total = int(counts.sum())
    uncovered = np.ones(m, dtype=bool)
    # upper bounds on gains; lazily refreshed (gains only ever shrink)
    gains = balls @ counts.astype(np.float64)
    covered = 0
    centers: list[int] = []
    while not _mass_exceeds(covered, total, eps):
        masked = np.where(uncovered, gains, -1.0)
        while True:
            i = int(np.argmax(masked))
            if masked[i] < 0:
                raise BudgetExhaustedError(
                    "no uncovered candidate can extend the cover",
                    centers=centers,
                    covered_mass=covered / total,
                )
            true_gain = int(counts[balls[i] & uncovered].sum())
            if true_gain >= masked[i] - 1e-9:
                break
            gains[i] = true_gain
            masked[i] = true_gain
        if len(centers) >= max_centers:
            raise BudgetExhaustedError(
                f"center budget {max_centers} exhausted",
                centers=centers,
                covered_mass=covered / total,
            )
        centers.append(i)
        covered += true_gain
        uncovered &= ~balls[i]
    return centers, covered, total


@dataclass(frozen=True)
class CoverResult:
    centers: tuple
    radius: float
    covered_mass: float
    sample_count: int
    horizon: int
    seed: int

    @property
    def count(self) -> int:
        return len(self.centers)


def estimate_cover_number(
    samples: Sequence,
    n: int,
    eps: float,
    kind: MetricKind,
    system: Optional[SystemHandle] = None,
    weights: Optional[Sequence[float]] = None,
    max_centers: Optional[int] = None,
    seed: int = 0,
) -> CoverResult:
    """Greedy estimate of the covering number on a sample set.

    ``weights`` may carry an explicit distribution over the samples (e.g.
    exact word masses); by default every sample counts 1/m.  The returned
    center count upper-bounds the exact optimum on the same sample set.
    """
    if n < 1:
        raise InvalidParameterError("horizon must be >= 1")
    if eps <= 0:
        raise InvalidParameterError("eps must be positive")
    m = len(samples)
    D = pairwise_distances(kind, system, samples, n)
    balls = D < eps
    if weights is None:
        counts = np.ones(m, dtype=np.int64)
    else:
        # scale rational weights to integer units for exact mass comparisons
        fracs = [Fraction(float(w)) for w in weights]
        denom = 1
        for f in fracs:
            denom = denom * f.denominator // gcd(denom, f.denominator)
        counts = np.array([int(f * denom) for f in fracs], dtype=object)
    budget = m if max_centers is None else max_centers
    centers, covered, total = _greedy_cover(balls, counts, eps, budget)
    return CoverResult(
        centers=tuple(centers),
        radius=eps,
        covered_mass=float(covered / total),
        sample_count=m,
        horizon=n,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Exact small-instance oracle


def exact_cover_number_small(word_distribution, n: int, eps: float) -> int:
    """True minimum number of open Hamming balls (centers among the listed
    words) whose union mass strictly exceeds 1 - eps.

    Branch and bound over center subsets; feasible for small word counts
    (the intended regime is alphabet**n up to ~2**16).
    """
    words = [np.asarray(w, dtype=np.int64) for w, _ in word_distribution]
    masses = [Fraction(float(m)) for _, m in word_distribution]
    W = len(words)
    if W == 0:
        raise InvalidParameterError("empty word distribution")
    if W > 65536:
        raise InstanceTooLargeError(f"{W} words exceeds the exact-oracle cap")
    if abs(float(sum(masses)) - 1.0) > 1e-9:
        raise InvalidParameterError("word masses must sum to 1")
    if any(len(w) != n for w in words):
        raise InvalidParameterError("all words must have length n")

    mat = np.stack(words)
    target = 1 - Fraction(eps)

    # ball of center i as a bitset over word indices
    ball_sets = []
    ball_mass = []
    for i in range(W):
        member = (mat != mat[i]).sum(axis=1) / n < eps
        bits = 0
        tot = Fraction(0)
        for j in np.nonzero(member)[0]:
            bits |= 1 << int(j)
            tot += masses[j]
        ball_sets.append(bits)
        ball_mass.append(tot)

    order = sorted(range(W), key=lambda i: (-ball_mass[i], i))
    sets_o = [ball_sets[i] for i in order]
    mass_f = [float(ball_mass[i]) for i in order]
    mass_x = np.array([float(m) for m in masses])

    def union_mass(bits: int) -> Fraction:
        tot = Fraction(0)
        j = 0
        while bits:
            if bits & 1:
                tot += masses[j]
            bits >>= 1
            j += 1
        return tot

    def feasible(k: int) -> bool:
        # DFS over index-increasing center combinations of size <= k
        def rec(start: int, chosen_bits: int, depth: int) -> bool:
            if union_mass(chosen_bits) > target:
                return True
            if depth == k:
                return False
            slots = k - depth
            for idx in range(start, W):
                # optimistic bound: add the largest remaining ball masses
                bound = float(union_mass(chosen_bits)) + sum(
                    mass_f[idx : idx + slots]
                )
                if bound <= float(target) - 1e-12:
                    return False
                if rec(idx + 1, chosen_bits | sets_o[idx], depth + 1):
                    return True
            return False

        return rec(0, 0, 0)

    # greedy upper bound guarantees termination
    greedy = estimate_cover_number(
        [NameWord(tuple(int(s) for s in w), int(mat.max()) + 1) for w in words],
        n,
        eps,
        HammingKind(trivial_partition_for(mat)),
        weights=[float(m) for m in masses],
    )
    for k in range(1, greedy.count + 1):
        if feasible(k):
            return k
    return greedy.count


def trivial_partition_for(mat: np.ndarray) -> Partition:
    # hamming distance between NameWords ignores the partition; any cylinder
    # stand-in with a matching alphabet works here
    from .partitions import cylinder

    return cylinder([0], max(2, int(mat.max()) + 1))


# ---------------------------------------------------------------------------
# Complexity curves


@dataclass(frozen=True)
class CurvePoint:
    n: int
    k_est: int
    k_lo: float
    k_hi: float
    budget_hit: bool
    covered_mass: float


@dataclass(frozen=True)
class ComplexityCurve:
    points: tuple
    eps: float
    metric_label: str
    sample_count: int
    seed: int

    @property
    def estimates(self) -> list:
        return [p.k_est for p in self.points]


_TAG_CURVE_SAMPLES = 31
_TAG_BOOTSTRAP = 33


def complexity_curve(
    system: SystemHandle,
    kind: MetricKind,
    horizons: Sequence[int],
    eps: float,
    sample_count: int,
    plan: RandomPlan,
    resamples: int = 20,
    max_centers: Optional[int] = None,
) -> ComplexityCurve:
    """Covering-number estimates over a ladder of horizons with bootstrap CIs.

    One sample set is shared across all horizons (common random numbers);
    a horizon whose greedy cover exhausts the center budget is recorded
    with budget_hit instead of aborting the curve.
    """
    horizons = [int(h) for h in horizons]
    if len(horizons) < 3 or any(b <= a for a, b in zip(horizons, horizons[1:])):
        raise InvalidParameterError("need >= 3 strictly increasing horizons")
    samples = system.sample_measure(sample_count, plan.child(_TAG_CURVE_SAMPLES))
    budget = sample_count if max_centers is None else max_centers
    pts = []
    for n in horizons:
        feats = _sample_features(kind, system, samples, n)
        if isinstance(kind, HammingKind):
            D = _pairwise_hamming(feats)
        elif isinstance(kind, FbarKind):
            D = _pairwise_fbar(feats)
        else:
            D = _pairwise_fhat(feats)
        balls = D < eps
        ones = np.ones(sample_count, dtype=np.int64)
        try:
            centers, covered, total = _greedy_cover(balls, ones, eps, budget)
            k_est = len(centers)
            covered_mass = covered / total
            budget_hit = False
        except BudgetExhaustedError as exc:
            k_est = budget
            covered_mass = exc.covered_mass or 0.0
            budget_hit = True
        if budget_hit or resamples == 0:
            k_lo = k_hi = float(k_est)
        else:
            rng = plan.generator(_TAG_BOOTSTRAP, n)
            boot = []
            for _ in range(resamples):
                idx = rng.integers(0, sample_count, sample_count)
                counts = np.bincount(idx, minlength=sample_count)
                try:
                    c, _, _ = _greedy_cover(balls, counts, eps, budget)
                    boot.append(len(c))
                except BudgetExhaustedError:
                    boot.append(budget)
            k_lo = float(min(np.percentile(boot, 10), k_est))
            k_hi = float(max(np.percentile(boot, 90), k_est))
        pts.append(
            CurvePoint(
                n=n,
                k_est=k_est,
                k_lo=k_lo,
                k_hi=k_hi,
                budget_hit=budget_hit,
                covered_mass=float(covered_mass),
            )
        )
    return ComplexityCurve(
        points=tuple(pts),
        eps=eps,
        metric_label=kind.label,
        sample_count=sample_count,
        seed=plan.master_seed,
    )


def classify_boundedness(curve) -> str:
    """'bounded' / 'growing' / 'inconclusive' verdict on a complexity curve.

    Bounded: the last three estimates lie within +1 of each other.
    Growing: estimates rise monotonically with the last at least twice
    the first.  Anything else is inconclusive.
    """
    ests = curve.estimates if hasattr(curve, "estimates") else [int(v) for v in curve]
    if len(ests) < 3:
        raise InvalidParameterError("need at least 3 curve points")
    tail = ests[-3:]
    if max(tail) - min(tail) <= 1:
        return "bounded"
    nondecreasing = all(b >= a for a, b in zip(ests, ests[1:]))
    if nondecreasing and ests[-1] > ests[0] and ests[-1] >= 2 * ests[0]:
        return "growing"
    return "inconclusive"


def curve_csv_rows(curve: ComplexityCurve) -> list:
    rows = [["n", "K_est", "K_lo", "K_hi", "eps", "samples", "seed", "budget_hit"]]
    for p in curve.points:
        rows.append(
            [
                p.n,
                p.k_est,
                p.k_lo,
                p.k_hi,
                curve.eps,
                curve.sample_count,
                curve.seed,
                int(p.budget_hit),
            ]
        )
    return rows
