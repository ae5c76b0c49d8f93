import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hullfilter import (
    BoundingBox,
    EmptySet,
    NonFiniteCoordinate,
    Orientation,
    PointSet,
    Precision,
    PrecisionMismatch,
    bounding_box,
    manhattan_distance,
    orientation,
    orientation_signs,
)

from _oracles import exact_orient, exact_orient_f32

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, width=32)
point = st.tuples(finite, finite)


@pytest.mark.parametrize(
    "p, q, expected",
    [((0, 0), (0, 0), 0), ((0, 0), (3, 4), 7), ((-1, 2), (2, -2), 7)],
)
def test_manhattan_examples(p, q, expected):
    assert manhattan_distance(p, q) == expected


@given(point, point, point)
def test_manhattan_symmetric_and_triangle(a, b, c):
    assert manhattan_distance(a, b) == manhattan_distance(b, a)
    ab = manhattan_distance(a, b)
    bc = manhattan_distance(b, c)
    ac = manhattan_distance(a, c)
    # float sums may round; compare with a relative slack
    assert ac <= (ab + bc) * (1 + 1e-12) + 1e-300


@pytest.mark.parametrize(
    "a, b, c, expected",
    [
        ((0, 0), (1, 0), (0, 1), Orientation.COUNTERCLOCKWISE),
        ((0, 0), (1, 0), (2, 0), Orientation.COLLINEAR),
        ((0, 0), (0, 1), (1, 1), Orientation.CLOCKWISE),
    ],
)
def test_orientation_examples(a, b, c, expected):
    assert orientation(a, b, c) is expected


@given(point, point, point)
def test_orientation_antisymmetric(a, b, c):
    assert orientation(a, c, b) == -orientation(a, b, c)


@settings(max_examples=300)
@given(point, point, point)
def test_orientation_matches_rational(a, b, c):
    assert int(orientation(a, b, c)) == exact_orient(a, b, c)


def test_orientation_hard_case():
    # classic example where the naive float determinant has the wrong sign
    a = (0.5, 0.5)
    b = (12.0, 12.0)
    c = (24.0, 24.0)
    for k in range(64):
        p = (0.5 + k * 2.0**-53, 0.5)
        assert int(orientation(p, b, c)) == exact_orient(p, b, c)
    assert orientation(a, b, c) is Orientation.COLLINEAR


def _near_collinear_f32(rng, n):
    ax = rng.uniform(-1, 1, n).astype(np.float32)
    ay = rng.uniform(-1, 1, n).astype(np.float32)
    bx = rng.uniform(-1, 1, n).astype(np.float32)
    by = rng.uniform(-1, 1, n).astype(np.float32)
    t = rng.uniform(-2, 2, n)
    cx = (ax + t * (bx.astype(np.float64) - ax)).astype(np.float32)
    cy = (ay + t * (by.astype(np.float64) - ay)).astype(np.float32)
    step = rng.integers(-1, 2, size=(2, n))
    cx = np.where(step[0] > 0, np.nextafter(cx, np.float32(np.inf)),
                  np.where(step[0] < 0, np.nextafter(cx, np.float32(-np.inf)), cx))
    cy = np.where(step[1] > 0, np.nextafter(cy, np.float32(np.inf)),
                  np.where(step[1] < 0, np.nextafter(cy, np.float32(-np.inf)), cy))
    cx = cx.astype(np.float32)
    cy = cy.astype(np.float32)
    # a quarter of the triples are exactly collinear lattice points
    k = n // 4
    g = rng.integers(-50, 50, size=(4, k)).astype(np.float32)
    m = rng.integers(-3, 4, size=k).astype(np.float32)
    ax[:k], ay[:k], bx[:k], by[:k] = g
    cx[:k] = g[0] + m * (g[2] - g[0])
    cy[:k] = g[1] + m * (g[3] - g[1])
    return ax, ay, bx, by, cx, cy


def test_orientation_signs_near_collinear_f32(rng):
    triples = _near_collinear_f32(rng, 20_000)
    got = orientation_signs(*triples)
    want = exact_orient_f32(*triples)
    assert np.array_equal(got, want)
    assert (want == 0).any() and (want != 0).any()


def test_orientation_scalar_agrees_with_vectorised(rng):
    triples = _near_collinear_f32(rng, 500)
    vec = orientation_signs(*triples)
    for i in range(500):
        a = (triples[0][i], triples[1][i])
        b = (triples[2][i], triples[3][i])
        c = (triples[4][i], triples[5][i])
        assert int(orientation(a, b, c)) == vec[i]


def test_orientation_signs_broadcast():
    out = orientation_signs(0.0, 0.0, 1.0, 0.0, np.array([0.0, 2.0, 0.0]), np.array([1.0, 0.0, -1.0]))
    assert out.tolist() == [1, 0, -1]


def test_bounding_box_examples(square_center):
    assert bounding_box(PointSet.from_points([(0, 0)])) == BoundingBox(0, 0, 0, 0)
    assert bounding_box(square_center) == BoundingBox(0, 2, 0, 2)


def test_bounding_box_uniform(rng):
    s = PointSet(rng.random(10_000), rng.random(10_000), Precision.F64)
    bb = bounding_box(s)
    lo_x = hi_x = s.xs[0]
    lo_y = hi_y = s.ys[0]
    for x, y in zip(s.xs.tolist(), s.ys.tolist()):
        lo_x, hi_x = min(lo_x, x), max(hi_x, x)
        lo_y, hi_y = min(lo_y, y), max(hi_y, y)
    assert (bb.x_min, bb.x_max, bb.y_min, bb.y_max) == (lo_x, hi_x, lo_y, hi_y)
    assert 0 <= bb.x_min and bb.x_max <= 1 and 0 <= bb.y_min and bb.y_max <= 1


def test_bounding_box_empty():
    with pytest.raises(EmptySet):
        bounding_box(PointSet.empty())


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_pointset_rejects_non_finite(bad):
    with pytest.raises(NonFiniteCoordinate):
        PointSet([0.0, bad], [1.0, 2.0])


def test_pointset_precision_inference():
    assert PointSet([1, 2], [3, 4]).precision is Precision.F32
    assert PointSet(np.zeros(2), np.zeros(2)).precision is Precision.F64
    with pytest.raises(PrecisionMismatch):
        PointSet(np.zeros(2, np.float32), np.zeros(2, np.float64))
    with pytest.raises(ValueError):
        PointSet([1, 2], [3])


def test_pointset_is_immutable_copy():
    xs = np.array([1.0, 2.0])
    s = PointSet(xs, xs.copy())
    xs[0] = 99
    assert s.xs[0] == 1.0
    with pytest.raises(ValueError):
        s.xs[0] = 5


def test_pointset_concat_and_take(square_center):
    both = square_center.concat(square_center)
    assert both.n == 10
    assert both.take([5, 6]) == square_center.take([0, 1])
    with pytest.raises(PrecisionMismatch):
        square_center.concat(PointSet.from_points([(0, 0)], Precision.F64))


def test_pointset_equality_is_bitwise():
    a = PointSet([0.0], [0.0])
    assert a == PointSet([0.0], [0.0])
    assert a != PointSet([-0.0], [0.0])
    assert a != PointSet([0.0], [0.0], Precision.F32)
