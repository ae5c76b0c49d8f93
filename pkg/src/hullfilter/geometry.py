"""Point containers and exact geometric predicates.

Coordinates live in structure-of-arrays form: a :class:`PointSet` holds one
contiguous array of x values and one of y values, both of the same floating
precision.  Orientation is always sign-exact, whatever the storage precision:
F32 values widen to F64 without loss, and the F64 evaluation falls back to
exact arithmetic whenever its rounding-error bound cannot certify the sign.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from .errors import EmptySet, NonFiniteCoordinate, PrecisionMismatch

__all__ = [
    "Point2",
    "Precision",
    "PointSet",
    "BoundingBox",
    "Orientation",
    "manhattan_distance",
    "orientation",
    "orientation_signs",
    "bounding_box",
]


class Point2(NamedTuple):
    x: float
    y: float


class Precision(enum.Enum):
    F32 = "f32"
    F64 = "f64"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.float32) if self is Precision.F32 else np.dtype(np.float64)

    @property
    def tag(self) -> int:
        """Byte tag used by the PTS2 file format."""
        return 0 if self is Precision.F32 else 1

    @classmethod
    def from_dtype(cls, dtype) -> "Precision":
        dtype = np.dtype(dtype)
        if dtype == np.float32:
            return cls.F32
        if dtype == np.float64:
            return cls.F64
        raise PrecisionMismatch(f"unsupported coordinate dtype {dtype}")

    @classmethod
    def from_tag(cls, tag: int) -> "Precision":
        for p in cls:
            if p.tag == tag:
                return p
        raise ValueError(f"unknown precision tag {tag}")


def _check_finite(arr: np.ndarray, axis: str) -> None:
    ok = np.isfinite(arr)
    if not ok.all():
        i = int(np.argmin(ok))
        raise NonFiniteCoordinate(f"{axis}[{i}] = {arr[i]!r} is not finite")


class PointSet:
    """Immutable 2D point cloud stored as two coordinate arrays.

    ``precision`` forces a storage type.  Without it, float32/float64 input
    arrays keep their dtype and anything else (lists, integers) becomes F32.
    """

    __slots__ = ("xs", "ys")

    def __init__(self, xs, ys, precision: Precision | None = None):
        xs_in = np.asarray(xs)
        ys_in = np.asarray(ys)
        if xs_in.ndim != 1 or ys_in.ndim != 1:
            raise ValueError("coordinate arrays must be one-dimensional")
        if len(xs_in) != len(ys_in):
            raise ValueError(f"len(xs)={len(xs_in)} != len(ys)={len(ys_in)}")
        if precision is None:
            floats = (np.float32, np.float64)
            if xs_in.dtype in floats and ys_in.dtype in floats:
                if xs_in.dtype != ys_in.dtype:
                    raise PrecisionMismatch(
                        f"x is {xs_in.dtype} but y is {ys_in.dtype}"
                    )
                precision = Precision.from_dtype(xs_in.dtype)
            else:
                precision = Precision.F32
        dtype = precision.dtype
        xs_arr = np.array(xs_in, dtype=dtype, copy=True, order="C")
        ys_arr = np.array(ys_in, dtype=dtype, copy=True, order="C")
        _check_finite(xs_arr, "x")
        _check_finite(ys_arr, "y")
        xs_arr.flags.writeable = False
        ys_arr.flags.writeable = False
        self.xs = xs_arr
        self.ys = ys_arr

    @classmethod
    def _trusted(cls, xs: np.ndarray, ys: np.ndarray) -> "PointSet":
        # Internal constructor for arrays already validated upstream.
        obj = cls.__new__(cls)
        xs.flags.writeable = False
        ys.flags.writeable = False
        obj.xs = xs
        obj.ys = ys
        return obj

    @classmethod
    def from_points(
        cls, points: Iterable, precision: Precision = Precision.F32
    ) -> "PointSet":
        pts = list(points)
        if not pts:
            return cls.empty(precision)
        arr = np.asarray(pts, dtype=np.float64).reshape(-1, 2)
        return cls(arr[:, 0], arr[:, 1], precision)

    @classmethod
    def empty(cls, precision: Precision = Precision.F32) -> "PointSet":
        return cls._trusted(
            np.empty(0, dtype=precision.dtype), np.empty(0, dtype=precision.dtype)
        )

    @property
    def n(self) -> int:
        return len(self.xs)

    @property
    def precision(self) -> Precision:
        return Precision.from_dtype(self.xs.dtype)

    def __len__(self) -> int:
        return len(self.xs)

    def __getitem__(self, i: int) -> Point2:
        return Point2(float(self.xs[i]), float(self.ys[i]))

    def __iter__(self):
        for x, y in zip(self.xs.tolist(), self.ys.tolist()):
            yield Point2(x, y)

    def __repr__(self) -> str:
        return f"PointSet(n={self.n}, precision={self.precision.value})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.identical(other)

    __hash__ = None

    def identical(self, other: "PointSet") -> bool:
        """Bit-exact equality: same precision, same length, same bit patterns."""
        if self.xs.dtype != other.xs.dtype or self.n != other.n:
            return False
        view = np.uint32 if self.xs.dtype == np.float32 else np.uint64
        return bool(
            np.array_equal(self.xs.view(view), other.xs.view(view))
            and np.array_equal(self.ys.view(view), other.ys.view(view))
        )

    def take(self, indices) -> "PointSet":
        idx = np.asarray(indices, dtype=np.intp)
        return PointSet._trusted(self.xs.take(idx), self.ys.take(idx))

    def concat(self, other: "PointSet") -> "PointSet":
        if self.precision is not other.precision:
            raise PrecisionMismatch(
                f"cannot concatenate {self.precision.value} with {other.precision.value}"
            )
        return PointSet._trusted(
            np.concatenate([self.xs, other.xs]), np.concatenate([self.ys, other.ys])
        )

    def as_array(self) -> np.ndarray:
        """Return an (n, 2) array copy."""
        return np.column_stack([self.xs, self.ys])


@dataclass(frozen=True)
class BoundingBox:
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if not (self.x_min <= self.x_max and self.y_min <= self.y_max):
            raise ValueError(f"inverted bounding box {self}")


def bounding_box(s: PointSet) -> BoundingBox:
    if s.n == 0:
        raise EmptySet("bounding box of an empty point set")
    return BoundingBox(
        float(s.xs.min()), float(s.xs.max()), float(s.ys.min()), float(s.ys.max())
    )


def manhattan_distance(p, q) -> float:
    return abs(p[0] - q[0]) + abs(p[1] - q[1])


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


# Shewchuk's first-stage bound for the orient2d determinant in binary64.
_EPS = 2.0**-53
CCW_ERRBOUND_A = (3.0 + 16.0 * _EPS) * _EPS


def orientation(a, b, c) -> Orientation:
    """Exact sign of (b - a) x (c - a).

    Returns COUNTERCLOCKWISE when c lies to the left of the directed line a->b.
    """
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    cx, cy = float(c[0]), float(c[1])
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    if (detleft > 0.0 and detright <= 0.0) or (detleft < 0.0 and detright >= 0.0):
        return Orientation(int(det > 0.0) - int(det < 0.0))
    if detleft == 0.0:
        return Orientation(int(det > 0.0) - int(det < 0.0))
    bound = CCW_ERRBOUND_A * abs(detleft + detright)
    if det > bound or -det > bound:
        return Orientation(int(det > 0.0) - int(det < 0.0))
    fa, fb, fc = (Fraction(ax), Fraction(ay)), (Fraction(bx), Fraction(by)), (Fraction(cx), Fraction(cy))
    exact = (fb[0] - fa[0]) * (fc[1] - fa[1]) - (fb[1] - fa[1]) * (fc[0] - fa[0])
    return Orientation((exact > 0) - (exact < 0))


_SPLITTER = 134217729.0  # 2**27 + 1


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_product(a, b):
    p = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _two_sum(a, b):
    s = a + b
    bv = s - a
    av = s - bv
    return s, (a - av) + (b - bv)


def _exact_signs(ax, ay, bx, by, cx, cy) -> np.ndarray:
    # Six exact products (each as hi + lo) summed by expansion growth.
    # Valid while |coordinates| stay well inside the binary64 range.
    terms = []
    for u, v, neg in (
        (ax, by, False), (ax, cy, True), (ay, bx, True),
        (ay, cx, False), (bx, cy, False), (by, cx, True),
    ):
        hi, lo = _two_product(u, v)
        if neg:
            hi, lo = -hi, -lo
        terms.append(hi)
        terms.append(lo)
    expansion: list[np.ndarray] = []
    for t in terms:
        q = t
        for i, e in enumerate(expansion):
            q, expansion[i] = _two_sum(q, e)
        expansion.append(q)
    sign = np.zeros(len(ax), dtype=np.int8)
    for e in expansion:  # increasing magnitude: the last nonzero decides
        s = np.sign(e).astype(np.int8)
        sign = np.where(s != 0, s, sign)
    return sign


def orientation_signs(ax, ay, bx, by, cx, cy) -> np.ndarray:
    """Vectorised exact orientation: int8 array of -1/0/+1 per triple.

    Arguments broadcast like numpy arrays.  Entries whose floating-point
    determinant is not certified by the error bound are recomputed exactly.
    """
    ax, ay, bx, by, cx, cy = np.broadcast_arrays(
        *(np.asarray(v, dtype=np.float64) for v in (ax, ay, bx, by, cx, cy))
    )
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    bound = CCW_ERRBOUND_A * np.abs(detleft + detright)
    opposite = ((detleft > 0) & (detright <= 0)) | ((detleft < 0) & (detright >= 0))
    certain = opposite | (detleft == 0) | (det > bound) | (-det > bound)
    out = np.sign(det).astype(np.int8)
    unsure = np.flatnonzero(~certain.ravel())
    if unsure.size:
        flat = [v.ravel()[unsure] for v in (ax, ay, bx, by, cx, cy)]
        out_flat = out.ravel().copy()
        out_flat[unsure] = _exact_signs(*flat)
        out = out_flat.reshape(out.shape)
    return out
