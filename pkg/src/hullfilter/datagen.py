"""Seeded generators for the three benchmark distributions.

Random numbers come from a counter-based generator: the 64-bit word for
(seed, stream, i) is ``mix64(key(seed, stream) + (i + 1) * GOLDEN)`` where
``mix64`` is the SplitMix64 finaliser.  Point ``i`` only reads counter ``i``
of each stream it uses, so any slice of the output can be generated on its
own and the result is bit-identical however the index range is split.

Streams:
    0  angle (circle kinds) / first Box-Muller uniform (normal)
    1  radius (displaced) / second Box-Muller uniform (normal)
    2  displacement coin (displaced, probabilistic mode)

Uniform doubles are ``(word >> 11) * 2**-53`` in [0, 1).  Normal variates
use Box-Muller, one pair per point: x from the cosine branch, y from the sine
branch.  Everything is computed in float64 and rounded once to the storage
precision.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._parallel import chunk_ranges, map_ranges, resolve_threads
from .errors import InvalidSpec
from .geometry import PointSet, Precision

__all__ = [
    "Distribution",
    "DistributionSpec",
    "counter_words",
    "uniforms",
    "gen_normal",
    "gen_circle",
    "gen_displaced_circle",
    "generate",
]

GOLDEN = 0x9E3779B97F4A7C15
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


class Distribution(enum.Enum):
    NORMAL = "normal"
    CIRCLE = "circle"
    DISPLACED = "displaced"


@dataclass(frozen=True)
class DistributionSpec:
    kind: Distribution
    n: int
    seed: int = 0
    mu: float = 0.5
    sigma: float = math.sqrt(0.1)
    r: float = 0.25
    p: float = 0.0
    # "probabilistic": a point is displaced with probability p, to a radius
    # uniform in [r - rp, r + rp]; "band": every point's radius is uniform there.
    displacement: str = "probabilistic"

    def __post_init__(self):
        if not isinstance(self.kind, Distribution):
            object.__setattr__(self, "kind", Distribution(self.kind))

    def validate(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InvalidSpec(f"n must be a positive integer, got {self.n!r}")
        if not 0 <= self.seed <= _MASK64:
            raise InvalidSpec(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise InvalidSpec(f"sigma must be positive, got {self.sigma}")
        if not (self.r > 0 and math.isfinite(self.r)):
            raise InvalidSpec(f"r must be positive, got {self.r}")
        if not math.isfinite(self.mu):
            raise InvalidSpec(f"mu must be finite, got {self.mu}")
        if not 0.0 <= self.p <= 1.0:
            raise InvalidSpec(f"p must lie in [0, 1], got {self.p}")
        if self.displacement not in ("probabilistic", "band"):
            raise InvalidSpec(f"unknown displacement mode {self.displacement!r}")


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _key(seed: int, stream: int) -> np.uint64:
    s = np.array([(seed ^ ((stream + 1) * GOLDEN)) & _MASK64], dtype=np.uint64)
    return _mix64(s)[0]


def counter_words(seed: int, stream: int, start: int, stop: int) -> np.ndarray:
    """Raw 64-bit outputs for counters [start, stop) of one stream."""
    i = np.arange(start + 1, stop + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix64(_key(seed, stream) + i * np.uint64(GOLDEN))


def uniforms(seed: int, stream: int, start: int, stop: int) -> np.ndarray:
    words = counter_words(seed, stream, start, stop)
    return (words >> np.uint64(11)).astype(np.float64) * 2.0**-53


def _generate(spec: DistributionSpec, precision: Precision, threads, fn) -> PointSet:
    spec.validate()
    t = resolve_threads(threads, spec.n)
    xs = np.empty(spec.n, dtype=precision.dtype)
    ys = np.empty(spec.n, dtype=precision.dtype)

    def work(a, b):
        x, y = fn(spec, a, b)
        xs[a:b] = x
        ys[a:b] = y

    map_ranges(work, chunk_ranges(spec.n, t), t)
    return PointSet._trusted(xs, ys)


def _normal_block(spec, a, b):
    u1 = 1.0 - uniforms(spec.seed, 0, a, b)  # (0, 1]: log is finite
    u2 = uniforms(spec.seed, 1, a, b)
    rad = np.sqrt(-2.0 * np.log(u1))
    ang = 2.0 * np.pi * u2
    return spec.mu + spec.sigma * rad * np.cos(ang), spec.mu + spec.sigma * rad * np.sin(ang)


def _angles(spec, a, b):
    return 2.0 * np.pi * uniforms(spec.seed, 0, a, b)


def _circle_block(spec, a, b):
    theta = _angles(spec, a, b)
    return spec.r * np.cos(theta), spec.r * np.sin(theta)


def _displaced_block(spec, a, b):
    theta = _angles(spec, a, b)
    lo = spec.r - spec.r * spec.p
    width = 2.0 * spec.r * spec.p
    rho = lo + width * uniforms(spec.seed, 1, a, b)
    if spec.displacement == "probabilistic":
        moved = uniforms(spec.seed, 2, a, b) < spec.p
        rho = np.where(moved, rho, spec.r)
    return rho * np.cos(theta), rho * np.sin(theta)


def _require(spec: DistributionSpec, kind: Distribution) -> None:
    if spec.kind is not kind:
        raise InvalidSpec(f"expected a {kind.value} spec, got {spec.kind.value}")


def gen_normal(
    spec: DistributionSpec, precision: Precision = Precision.F32, threads: int | None = None
) -> PointSet:
    """x and y independently Normal(mu, sigma**2)."""
    _require(spec, Distribution.NORMAL)
    return _generate(spec, precision, threads, _normal_block)


def gen_circle(
    spec: DistributionSpec,
    precision: Precision = Precision.F32,
    threads: int | None = None,
    *,
    thetas=None,
) -> PointSet:
    """Points at radius r with uniform angle.

    ``thetas`` overrides the random angles (used by tests to place points
    at known positions).
    """
    _require(spec, Distribution.CIRCLE)
    if thetas is not None:
        spec.validate()
        theta = np.asarray(thetas, dtype=np.float64)
        if len(theta) != spec.n:
            raise InvalidSpec(f"{len(theta)} angles for n={spec.n}")
        return PointSet(spec.r * np.cos(theta), spec.r * np.sin(theta), precision)
    return _generate(spec, precision, threads, _circle_block)


def gen_displaced_circle(
    spec: DistributionSpec, precision: Precision = Precision.F32, threads: int | None = None
) -> PointSet:
    """Circle points pushed radially into the band [r - rp, r + rp].

    With p == 0 this reproduces :func:`gen_circle` bit for bit for the same seed.
    """
    _require(spec, Distribution.DISPLACED)
    return _generate(spec, precision, threads, _displaced_block)


_GENERATORS = {
    Distribution.NORMAL: gen_normal,
    Distribution.CIRCLE: gen_circle,
    Distribution.DISPLACED: gen_displaced_circle,
}


def generate(
    spec: DistributionSpec, precision: Precision = Precision.F32, threads: int | None = None
) -> PointSet:
    return _GENERATORS[spec.kind](spec, precision, threads)
