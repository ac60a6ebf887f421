import math

import numpy as np
import pytest

from mebkit.errors import DegenerateInputError
from mebkit.geometry import (
    Ball,
    BallBody,
    BoxBody,
    as_points,
    barycenter,
    circumball,
    distance,
    fits_in_translate,
    geom_tol,
)


def test_distance_345():
    assert distance((0, 0), (3, 4)) == 5.0


def test_distance_identical_points():
    assert distance((1, 1), (1, 1)) == 0.0


def test_distance_unit_axes():
    assert distance((1, 0, 0), (0, 1, 0)) == pytest.approx(math.sqrt(2))


def test_distance_dimension_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        distance((0, 0), (0, 0, 0))


def test_as_points_rejects_nan_and_empty():
    with pytest.raises(ValueError):
        as_points([[0.0, float("nan")]])
    with pytest.raises(ValueError):
        as_points(np.empty((0, 2)))


def test_ball_requires_nonnegative_radius():
    with pytest.raises(ValueError):
        Ball(np.zeros(2), -0.1)


def test_ball_contains_boundary_point():
    b = Ball(np.zeros(2), 1.0)
    assert b.contains(np.array([[1.0, 0.0], [0.0, 0.0]]))
    assert not b.contains(np.array([[1.1, 0.0]]))


def test_body_validation():
    with pytest.raises(ValueError):
        BallBody(0.0)
    with pytest.raises(ValueError):
        BoxBody([1.0, 0.0])


def test_barycenter_examples():
    assert np.allclose(barycenter([[0, 0], [2, 0]]), [1, 0])
    assert np.allclose(barycenter([[3.5, -1.0]]), [3.5, -1.0])
    sq = [[1, 1], [1, -1], [-1, 1], [-1, -1]]
    assert np.allclose(barycenter(sq), [0, 0])


def test_circumball_segment():
    b = circumball([[0.0, 0.0], [2.0, 0.0]])
    assert np.allclose(b.center, [1.0, 0.0])
    assert b.radius == pytest.approx(1.0)


def test_circumball_equilateral_triangle():
    # side 1 -> circumradius 1/sqrt(3)
    tri = [[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]]
    b = circumball(tri)
    assert b.radius == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    for v in tri:
        assert distance(v, b.center) == pytest.approx(b.radius, abs=1e-12)


def test_circumball_single_point():
    b = circumball([[4.0, 5.0, 6.0]])
    assert b.radius == 0.0
    assert np.allclose(b.center, [4, 5, 6])


def test_circumball_collinear_points_degenerate():
    with pytest.raises(DegenerateInputError) as info:
        circumball([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
    assert list(info.value.indices) == [0, 1, 2]


def test_circumball_too_many_points_degenerate():
    with pytest.raises(DegenerateInputError):
        circumball([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])


def test_circumball_center_in_affine_hull():
    rng = np.random.default_rng(21)
    for _ in range(25):
        d = int(rng.integers(2, 6))
        m = int(rng.integers(2, d + 2))
        S = rng.standard_normal((m, d))
        b = circumball(S)
        # equidistance
        dists = np.linalg.norm(S - b.center, axis=1)
        assert np.ptp(dists) <= 1e-8 * (1 + dists.max())
        # membership in the affine hull: residual of least-squares fit is ~0
        A = np.vstack([S.T, np.ones(m)])
        y = np.concatenate([b.center, [1.0]])
        w, *_ = np.linalg.lstsq(A, y, rcond=None)
        assert np.linalg.norm(A @ w - y) <= 1e-7 * (1 + np.abs(S).max())


def test_fits_ball_exact_radius():
    assert fits_in_translate(BallBody(1.0), [[0.0, 0.0], [2.0, 0.0]])


def test_fits_ball_slightly_too_wide():
    assert not fits_in_translate(BallBody(1.0), [[0.0, 0.0], [2.1, 0.0]])


def test_fits_box_extent():
    body = BoxBody([1.0, 1.0])
    wide = [[0.0, 0.0], [2.5, 0.0]]
    assert not fits_in_translate(body, wide)
    assert fits_in_translate(body, [[0.0, 0.0], [2.0, 1.7]])


def test_fits_box_dimension_mismatch():
    with pytest.raises(ValueError):
        fits_in_translate(BoxBody([1.0, 1.0]), [[0.0, 0.0, 0.0]])


def test_geom_tol_scales_with_magnitude():
    small = geom_tol(np.array([0.5, 0.5]))
    big = geom_tol(np.array([1e6, -2e6]))
    assert small < big
    assert big == pytest.approx(1e-9 * (1 + 2e6))
