"""Catalog of concrete invertible measure-preserving systems.

Each handle bundles the map T (with inverse), a compatible metric d, and a
deterministic sampler for the invariant measure.  Supported families:

* ``rotation(theta)``      -- circle rotation, Lebesgue measure
* ``doubling``             -- angle doubling realized on its natural
                              extension (two-sided fair-bit streams), so
                              negative iterates are well defined
* ``bernoulli_shift(p,k)`` -- two-sided i.i.d. shift on k symbols
* ``sturmian(theta)``      -- rotation coded by the partition
                              {[0,1-theta), [1-theta,1)}, seen as a subshift
* ``odometer(base)``       -- +1 adding machine with uniform digit measure
* ``identity``             -- identity on the circle
* ``product(a, b)``        -- direct product, max metric

Symbolic points are lazy two-sided streams keyed by (seed, index): repeated
reads of the same index always return the same symbol, and the backward
direction exists, which keeps every catalog map invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import InvalidParameterError
from .rng import RandomPlan, hash64, uniform01, zigzag

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0

# default comparison window for metrics on symbol streams
DEFAULT_WINDOW = 64

_TAG_POINT = 101
_TAG_SYMBOL = 7
_TAG_LEFT = 11
_TAG_RIGHT = 12


# ---------------------------------------------------------------------------
# Specs


@dataclass(frozen=True)
class SystemSpec:
    family: str
    params: tuple = ()
    description: str = ""

    def to_json(self) -> dict:
        return {"family": self.family, "params": _params_json(self)}


def _params_json(spec: SystemSpec) -> dict:
    f = spec.family
    p = spec.params
    if f in ("rotation", "sturmian"):
        return {"theta": p[0]}
    if f == "bernoulli_shift":
        return {"p": p[0], "alphabet_size": p[1]}
    if f == "odometer":
        return {"base": p[0]}
    if f == "product":
        return {"left": p[0].to_json(), "right": p[1].to_json()}
    return {}


def spec_from_json(obj: dict) -> SystemSpec:
    family = obj["family"]
    params = obj.get("params", {})
    if family == "rotation":
        return rotation(params["theta"])
    if family == "sturmian":
        return sturmian(params["theta"])
    if family == "doubling":
        return doubling()
    if family == "bernoulli_shift":
        return bernoulli_shift(params["p"], params.get("alphabet_size", 2))
    if family == "odometer":
        return odometer(params["base"])
    if family == "identity":
        return identity()
    if family == "product":
        return product(spec_from_json(params["left"]), spec_from_json(params["right"]))
    raise InvalidParameterError(f"unknown system family {family!r}")


def rotation(theta: float) -> SystemSpec:
    if not 0.0 <= theta < 1.0:
        raise InvalidParameterError(f"rotation angle must lie in [0,1), got {theta}")
    return SystemSpec("rotation", (float(theta),), f"circle rotation by {theta}")


def doubling() -> SystemSpec:
    return SystemSpec("doubling", (), "angle doubling (natural extension)")


def bernoulli_shift(p: float, alphabet_size: int = 2) -> SystemSpec:
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"bernoulli p must lie in (0,1), got {p}")
    if alphabet_size < 2:
        raise InvalidParameterError("alphabet_size must be >= 2")
    return SystemSpec(
        "bernoulli_shift",
        (float(p), int(alphabet_size)),
        f"bernoulli({p}) shift on {alphabet_size} symbols",
    )


def sturmian(theta: float) -> SystemSpec:
    if not 0.0 <= theta < 1.0:
        raise InvalidParameterError(f"sturmian angle must lie in [0,1), got {theta}")
    return SystemSpec("sturmian", (float(theta),), f"sturmian coding of rotation by {theta}")


def odometer(base: int) -> SystemSpec:
    if base < 2:
        raise InvalidParameterError(f"odometer base must be >= 2, got {base}")
    return SystemSpec("odometer", (int(base),), f"base-{base} odometer")


def identity() -> SystemSpec:
    return SystemSpec("identity", (), "identity map on the circle")


def product(left: SystemSpec, right: SystemSpec) -> SystemSpec:
    return SystemSpec("product", (left, right), "direct product")


def is_rational_angle(theta: float, max_den: int = 1000, tol: float = 1e-9) -> bool:
    """Whether theta is indistinguishable from a small-denominator rational.

    Every float is rational; the useful question is whether the orbit
    closes up at working precision.  A continued-fraction convergent with
    denominator <= max_den landing within tol is taken as a yes; badly
    approximable angles (e.g. the golden mean) stay 'irrational'.
    """
    frac = Fraction(theta).limit_denominator(max_den)
    return bool(abs(theta - float(frac)) < tol)


# ---------------------------------------------------------------------------
# Lazy two-sided streams


@dataclass(frozen=True)
class HashSymbols:
    """Two-sided i.i.d. symbol stream: symbol(i) = F(seed, i), recomputable."""

    seed: int
    thresholds: tuple  # cumulative probabilities, length alphabet-1

    def symbols(self, lo: int, hi: int) -> np.ndarray:
        idx = zigzag(np.arange(lo, hi, dtype=np.int64))
        u = uniform01(hash64(self.seed, _TAG_SYMBOL, idx))
        out = np.zeros(hi - lo, dtype=np.int64)
        for t in self.thresholds:
            out += u >= t
        return out


@dataclass(frozen=True)
class PrefixSymbols:
    """Finite symbol buffer at indices >= 0, extended lazily by a hash stream."""

    prefix: tuple
    tail: HashSymbols

    def symbols(self, lo: int, hi: int) -> np.ndarray:
        out = self.tail.symbols(lo, hi)
        n = len(self.prefix)
        for j in range(max(lo, 0), min(hi, n)):
            out[j - lo] = self.prefix[j]
        return out


@dataclass(frozen=True)
class HashBits:
    """Two-sided fair-bit stream for doubling points sampled from Lebesgue."""

    seed: int

    def bits(self, lo: int, hi: int) -> np.ndarray:
        idx = zigzag(np.arange(lo, hi, dtype=np.int64))
        return (hash64(self.seed, _TAG_SYMBOL, idx) >> np.uint64(63)).astype(np.int64)


@dataclass(frozen=True)
class FloatBits:
    """Binary expansion of a dyadic-precision real in [0,1); zero elsewhere."""

    numerator: int
    exponent: int  # value = numerator / 2**exponent

    @classmethod
    def from_float(cls, x: float) -> "FloatBits":
        if not 0.0 <= x < 1.0:
            raise InvalidParameterError(f"circle value must lie in [0,1), got {x}")
        num, den = float(x).as_integer_ratio()
        return cls(num, den.bit_length() - 1)

    def bits(self, lo: int, hi: int) -> np.ndarray:
        out = np.zeros(hi - lo, dtype=np.int64)
        for j in range(max(lo, 0), min(hi, self.exponent)):
            out[j - lo] = (self.numerator >> (self.exponent - 1 - j)) & 1
        return out


# ---------------------------------------------------------------------------
# Points

_VALUE_BITS = 53
_BIT_WEIGHTS = 0.5 ** np.arange(1, _VALUE_BITS + 1)


@dataclass(frozen=True)
class DoublingPoint:
    """Point of the doubling map's natural extension: a bit stream + origin."""

    source: Any
    offset: int = 0

    @property
    def value(self) -> float:
        b = self.source.bits(self.offset, self.offset + _VALUE_BITS)
        return float(b @ _BIT_WEIGHTS)

    def bits(self, lo: int, hi: int) -> np.ndarray:
        return self.source.bits(self.offset + lo, self.offset + hi)

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class ShiftPoint:
    """Point of a two-sided shift: a symbol stream read from a moving origin."""

    source: Any
    alphabet: int
    offset: int = 0

    def symbol(self, i: int) -> int:
        return int(self.source.symbols(self.offset + i, self.offset + i + 1)[0])

    def symbols(self, lo: int, hi: int) -> np.ndarray:
        return self.source.symbols(self.offset + lo, self.offset + hi)


@dataclass(frozen=True)
class SturmianPoint:
    """Sturmian sequence coded from a base angle; the shift moves the origin."""

    angle: float
    theta: float
    offset: int = 0

    def symbol(self, i: int) -> int:
        pos = (self.angle + (self.offset + i) * self.theta) % 1.0
        return int(pos >= 1.0 - self.theta)

    def symbols(self, lo: int, hi: int) -> np.ndarray:
        k = np.arange(self.offset + lo, self.offset + hi)
        pos = (self.angle + k * self.theta) % 1.0
        return (pos >= 1.0 - self.theta).astype(np.int64)


@dataclass(frozen=True)
class OdometerPoint:
    """Base-b digit stream plus an integer shift applied with carries."""

    source: Any
    base: int
    shift: int = 0

    def digits(self, n: int) -> np.ndarray:
        raw = self.source.symbols(0, n)
        out = np.empty(n, dtype=np.int64)
        carry = self.shift
        for i in range(n):
            total = int(raw[i]) + carry
            out[i] = total % self.base
            carry = total // self.base  # floor division handles borrows too
        return out

    def symbol(self, i: int) -> int:
        return int(self.digits(i + 1)[i])

    def symbols(self, lo: int, hi: int) -> np.ndarray:
        if lo < 0:
            raise InvalidParameterError("odometer digits have nonnegative indices")
        return self.digits(hi)[lo:hi]


def circle_value(x) -> float:
    """Position in [0,1) of a circle-family point."""
    if isinstance(x, DoublingPoint):
        return x.value
    return float(x) % 1.0


def _arc(a: float, b: float) -> float:
    t = abs(a - b) % 1.0
    return min(t, 1.0 - t)


def _first_difference_metric(a: np.ndarray, b: np.ndarray) -> float:
    diff = np.nonzero(a != b)[0]
    if diff.size == 0:
        return 0.0
    return 2.0 ** (-int(diff[0]))


# ---------------------------------------------------------------------------
# Handles


class SystemHandle:
    """Immutable bundle (T, T^{-1}, d, sampler) for one catalog family."""

    kind = "abstract"
    spec: SystemSpec

    def step(self, x, k: int = 1):
        raise NotImplementedError

    def orbit(self, x, n: int) -> list:
        if n < 1:
            raise InvalidParameterError("orbit length must be >= 1")
        return [self.step(x, i) for i in range(n)]

    def metric(self, x, y) -> float:
        raise NotImplementedError

    def sample_measure(self, count: int, plan: RandomPlan):
        raise NotImplementedError

    def value_orbit(self, x, n: int) -> np.ndarray:
        """Circle positions of x, Tx, ..., T^{n-1}x (circle families only)."""
        raise NotImplementedError(f"{self.kind} systems have no circle values")

    @property
    def has_circle_values(self) -> bool:
        return False


class RotationSystem(SystemHandle):
    kind = "circle"

    def __init__(self, spec: SystemSpec):
        self.spec = spec
        self.theta = spec.params[0]
        self.rational_angle = is_rational_angle(self.theta)

    def step(self, x, k: int = 1):
        return (circle_value(x) + k * self.theta) % 1.0

    def metric(self, x, y) -> float:
        return _arc(circle_value(x), circle_value(y))

    def sample_measure(self, count: int, plan: RandomPlan) -> np.ndarray:
        return plan.uniforms(_TAG_POINT, np.arange(count))

    def value_orbit(self, x, n: int) -> np.ndarray:
        return (circle_value(x) + np.arange(n) * self.theta) % 1.0

    @property
    def has_circle_values(self) -> bool:
        return True


class IdentitySystem(SystemHandle):
    kind = "circle"

    def __init__(self, spec: SystemSpec):
        self.spec = spec

    def step(self, x, k: int = 1):
        return circle_value(x)

    def metric(self, x, y) -> float:
        return _arc(circle_value(x), circle_value(y))

    def sample_measure(self, count: int, plan: RandomPlan) -> np.ndarray:
        return plan.uniforms(_TAG_POINT, np.arange(count))

    def value_orbit(self, x, n: int) -> np.ndarray:
        return np.full(n, circle_value(x))

    @property
    def has_circle_values(self) -> bool:
        return True


class DoublingSystem(SystemHandle):
    kind = "circle"

    def __init__(self, spec: SystemSpec):
        self.spec = spec

    def _as_point(self, x) -> DoublingPoint:
        if isinstance(x, DoublingPoint):
            return x
        return DoublingPoint(FloatBits.from_float(float(x)))

    def step(self, x, k: int = 1) -> DoublingPoint:
        p = self._as_point(x)
        return DoublingPoint(p.source, p.offset + k)

    def metric(self, x, y) -> float:
        return _arc(circle_value(self._as_point(x)), circle_value(self._as_point(y)))

    def sample_measure(self, count: int, plan: RandomPlan) -> list:
        seeds = hash64(plan.master_seed, _TAG_POINT, np.arange(count))
        return [DoublingPoint(HashBits(int(s))) for s in seeds]

    def value_orbit(self, x, n: int) -> np.ndarray:
        p = self._as_point(x)
        bits = p.bits(0, n + _VALUE_BITS - 1).astype(np.float64)
        windows = np.lib.stride_tricks.sliding_window_view(bits, _VALUE_BITS)
        return windows @ _BIT_WEIGHTS

    @property
    def has_circle_values(self) -> bool:
        return True


class BernoulliSystem(SystemHandle):
    kind = "shift"

    def __init__(self, spec: SystemSpec, window: int = DEFAULT_WINDOW):
        self.spec = spec
        self.p, self.alphabet = spec.params
        self.window = window
        if self.alphabet == 2:
            probs = (1.0 - self.p, self.p)
        else:
            # symbol 0 carries mass 1-p; the rest share p equally
            rest = self.p / (self.alphabet - 1)
            probs = (1.0 - self.p,) + (rest,) * (self.alphabet - 1)
        self.thresholds = tuple(np.cumsum(probs)[:-1])

    def point(self, symbols=(), seed: int = 0) -> ShiftPoint:
        src = PrefixSymbols(tuple(symbols), HashSymbols(seed, self.thresholds))
        return ShiftPoint(src, self.alphabet)

    def step(self, x: ShiftPoint, k: int = 1) -> ShiftPoint:
        return ShiftPoint(x.source, x.alphabet, x.offset + k)

    def metric(self, x: ShiftPoint, y: ShiftPoint) -> float:
        return _first_difference_metric(
            x.symbols(0, self.window), y.symbols(0, self.window)
        )

    def sample_measure(self, count: int, plan: RandomPlan) -> list:
        seeds = hash64(plan.master_seed, _TAG_POINT, np.arange(count))
        return [
            ShiftPoint(HashSymbols(int(s), self.thresholds), self.alphabet)
            for s in seeds
        ]


class SturmianSystem(SystemHandle):
    kind = "shift"

    def __init__(self, spec: SystemSpec, window: int = DEFAULT_WINDOW):
        self.spec = spec
        self.theta = spec.params[0]
        self.window = window
        self.rational_angle = is_rational_angle(self.theta)

    def point(self, angle: float) -> SturmianPoint:
        return SturmianPoint(float(angle) % 1.0, self.theta)

    def step(self, x: SturmianPoint, k: int = 1) -> SturmianPoint:
        return SturmianPoint(x.angle, x.theta, x.offset + k)

    def metric(self, x: SturmianPoint, y: SturmianPoint) -> float:
        return _first_difference_metric(
            x.symbols(0, self.window), y.symbols(0, self.window)
        )

    def sample_measure(self, count: int, plan: RandomPlan) -> list:
        angles = plan.uniforms(_TAG_POINT, np.arange(count))
        return [SturmianPoint(float(a), self.theta) for a in angles]


class OdometerSystem(SystemHandle):
    kind = "odometer"

    def __init__(self, spec: SystemSpec, window: int = DEFAULT_WINDOW):
        self.spec = spec
        self.base = spec.params[0]
        self.window = window
        self.thresholds = tuple(np.arange(1, self.base) / self.base)

    def point(self, digits=(), seed: int = 0) -> OdometerPoint:
        src = PrefixSymbols(tuple(digits), HashSymbols(seed, self.thresholds))
        return OdometerPoint(src, self.base)

    def step(self, x: OdometerPoint, k: int = 1) -> OdometerPoint:
        return OdometerPoint(x.source, x.base, x.shift + k)

    def metric(self, x: OdometerPoint, y: OdometerPoint) -> float:
        return _first_difference_metric(x.digits(self.window), y.digits(self.window))

    def sample_measure(self, count: int, plan: RandomPlan) -> list:
        seeds = hash64(plan.master_seed, _TAG_POINT, np.arange(count))
        return [
            OdometerPoint(HashSymbols(int(s), self.thresholds), self.base)
            for s in seeds
        ]


class ProductSystem(SystemHandle):
    kind = "product"

    def __init__(self, spec: SystemSpec):
        self.spec = spec
        self.left = make_system(spec.params[0])
        self.right = make_system(spec.params[1])

    def step(self, x, k: int = 1):
        return (self.left.step(x[0], k), self.right.step(x[1], k))

    def metric(self, x, y) -> float:
        return max(self.left.metric(x[0], y[0]), self.right.metric(x[1], y[1]))

    def sample_measure(self, count: int, plan: RandomPlan) -> list:
        ls = self.left.sample_measure(count, plan.child(_TAG_LEFT))
        rs = self.right.sample_measure(count, plan.child(_TAG_RIGHT))
        return list(zip(ls, rs))


_FAMILIES = {
    "rotation": RotationSystem,
    "identity": IdentitySystem,
    "doubling": DoublingSystem,
    "bernoulli_shift": BernoulliSystem,
    "sturmian": SturmianSystem,
    "odometer": OdometerSystem,
    "product": ProductSystem,
}


def make_system(spec: SystemSpec) -> SystemHandle:
    """Construct the handle for a validated spec; construction is pure."""
    try:
        cls = _FAMILIES[spec.family]
    except KeyError:
        raise InvalidParameterError(f"unknown system family {spec.family!r}") from None
    return cls(spec)


# Free-function forms of the handle operations.


def step(system: SystemHandle, x, k: int = 1):
    return system.step(x, k)


def orbit(system: SystemHandle, x, n: int) -> list:
    return system.orbit(x, n)


def metric(system: SystemHandle, x, y) -> float:
    return system.metric(x, y)


def sample_measure(system: SystemHandle, count: int, plan: RandomPlan):
    if count < 1:
        raise InvalidParameterError("count must be >= 1")
    return system.sample_measure(count, plan)
