import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from honeyrobin.geometry import (
    ConvexPolygon,
    Direction,
    GeometryError,
    LatticeDoesNotFit,
    RoundedBody,
    area,
    conv_eps_ratio,
    diameter,
    hex_lattice_cells,
    inner_parallel_body,
    inner_parallel_measures,
    inradius,
    lambda_sum,
    load_polygon,
    perimeter,
    polygonize,
    rectangle,
    regular_ngon,
    rounded_measures,
    unit_square,
    width,
)

from conftest import polygon_from_seed

seeds = st.integers(0, 10_000)
sides = st.integers(3, 10)


def hexagon_side1():
    ang = np.pi / 3 * np.arange(6)
    return ConvexPolygon(np.column_stack([np.cos(ang), np.sin(ang)]))


def test_area_examples():
    assert area(unit_square()) == pytest.approx(1.0, abs=1e-15)
    assert area(hexagon_side1()) == pytest.approx(3 * math.sqrt(3) / 2, rel=1e-14)
    assert area(ConvexPolygon([[0, 0], [2, 0], [0, 2]])) == pytest.approx(2.0)


def test_perimeter_examples():
    assert perimeter(unit_square()) == pytest.approx(4.0)
    assert perimeter(regular_ngon(6, 1.0)) == pytest.approx(2 * math.sqrt(2 * math.sqrt(3)), rel=1e-14)
    assert perimeter(ConvexPolygon([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])) == pytest.approx(3.0)
    assert perimeter(regular_ngon(3, 1.0)) == pytest.approx(4.5590141, rel=1e-7)


def test_lambda_sum_examples():
    assert lambda_sum(unit_square()) == pytest.approx(4.0, rel=1e-14)
    assert lambda_sum(hexagon_side1()) == pytest.approx(2 * math.sqrt(3), rel=1e-14)
    for n in range(3, 13):
        assert lambda_sum(regular_ngon(n)) == pytest.approx(n * math.tan(math.pi / n), rel=1e-12)


def test_diameter_and_width():
    d, u = diameter(unit_square())
    assert d == pytest.approx(math.sqrt(2))
    assert abs(abs(u.x) - abs(u.y)) < 1e-14
    assert diameter(rectangle(2, 1))[0] == pytest.approx(math.sqrt(5))
    assert diameter(hexagon_side1())[0] == pytest.approx(2.0)
    assert width(unit_square(), Direction(1.0, 0.0)) == pytest.approx(1.0)
    assert width(unit_square(), u.orthogonal()) == pytest.approx(math.sqrt(2))
    assert width(hexagon_side1(), Direction(0.0, 1.0)) == pytest.approx(math.sqrt(3))


def test_conv_eps_ratio():
    assert conv_eps_ratio(unit_square()) == pytest.approx(1.0)
    assert conv_eps_ratio(rectangle(10, 1)) == pytest.approx(20 / 101, rel=1e-12)
    assert conv_eps_ratio(hexagon_side1()) == pytest.approx(math.sqrt(3) / 2, rel=1e-12)


def test_rejects_bad_polygons():
    with pytest.raises(GeometryError):
        ConvexPolygon([[0, 0], [1, 0]])
    with pytest.raises(GeometryError):
        ConvexPolygon([[0, 0], [1, 0], [2, 0], [1, 1]])  # collinear
    with pytest.raises(GeometryError):
        ConvexPolygon([[0, 0], [0, 1], [1, 1], [1, 0]])  # clockwise
    with pytest.raises(GeometryError):
        ConvexPolygon([[0, 0], [2, 0], [1, 0.2], [1, 1]])  # reflex
    assert area(ConvexPolygon.from_points([[0, 0], [0, 1], [1, 1], [1, 0]])) == pytest.approx(1.0)


def test_load_polygon_reverses_clockwise(tmp_path):
    with pytest.warns(UserWarning):
        P = load_polygon("[[0, 0], [0, 1], [1, 1], [1, 0]]")
    assert area(P) == pytest.approx(1.0)
    f = tmp_path / "tri.json"
    f.write_text('{"vertices": [[0, 0], [2, 0], [0, 2]]}')
    assert area(load_polygon(str(f))) == pytest.approx(2.0)


def test_inner_parallel_examples():
    core = inner_parallel_body(unit_square(), 0.25)
    assert area(core) == pytest.approx(0.25)
    assert inner_parallel_body(unit_square(), 0.5) is None
    tri = ConvexPolygon([[0, 0], [3, 0], [0, 4]])
    assert inradius(tri) == pytest.approx(1.0, abs=1e-10)
    inner = inner_parallel_body(tri, 0.5)
    assert area(inner) == pytest.approx(6.0 * 0.25, rel=1e-12)
    assert inradius(inner) == pytest.approx(0.5, abs=1e-10)


@given(seeds, sides, st.floats(0.0, 0.95))
def test_measures_match_clipping(seed, n, frac):
    P = polygon_from_seed(seed, n)
    r = frac * inradius(P)
    per, ar = inner_parallel_measures(P, r)
    body = inner_parallel_body(P, r)
    if body is None:
        assert ar[0] < 1e-10
    else:
        assert per[0] == pytest.approx(perimeter(body), rel=1e-9, abs=1e-12)
        assert ar[0] == pytest.approx(area(body), rel=1e-9, abs=1e-12)


@given(seeds, sides, st.floats(0.05, 0.9), st.floats(0.05, 0.9))
def test_inner_parallel_monotone(seed, n, a, b):
    P = polygon_from_seed(seed, n)
    r1, r2 = sorted([a, b])
    rin = inradius(P)
    big = inner_parallel_body(P, r1 * rin)
    small = inner_parallel_body(P, r2 * rin)
    if small is not None:
        assert np.all(big.contains(small.vertices, tol=1e-9))


@given(seeds, sides)
def test_isoperimetric_and_lambda(seed, n):
    P = polygon_from_seed(seed, n)
    assert perimeter(P) ** 2 >= 4 * lambda_sum(P) * area(P) * (1 - 1e-12)
    assert lambda_sum(P) >= P.n * math.tan(math.pi / P.n) * (1 - 1e-12)


@pytest.mark.parametrize("n", range(3, 13))
def test_isoperimetric_equality_regular(n):
    P = regular_ngon(n, 2.5)
    assert perimeter(P) ** 2 == pytest.approx(4 * lambda_sum(P) * area(P), rel=1e-10)


@given(seeds, sides, st.floats(0, 2 * math.pi))
def test_width_below_diameter(seed, n, angle):
    P = polygon_from_seed(seed, n)
    assert width(P, Direction.from_angle(angle)) <= diameter(P)[0] * (1 + 1e-12)
    assert 0 < conv_eps_ratio(P) <= 1


def test_rounded_measures_examples():
    assert rounded_measures(RoundedBody(unit_square().vertices, 0.0)) == pytest.approx((4.0, 1.0))
    assert rounded_measures(RoundedBody([[0.0, 0.0]], 1.0)) == pytest.approx((2 * math.pi, math.pi))
    B = RoundedBody.from_polygon(unit_square(), 0.1)
    per, ar = rounded_measures(B)
    assert per == pytest.approx(3.2 + 0.2 * math.pi, rel=1e-13)
    assert per == pytest.approx(4 - 0.2 * (4 - math.pi), rel=1e-13)
    assert ar == pytest.approx(1 - 0.01 * (4 - math.pi), rel=1e-13)


def test_polygonize():
    P = unit_square()
    assert np.allclose(polygonize(RoundedBody(P.vertices, 0.0), 4).vertices, P.vertices)
    disk = polygonize(RoundedBody([[0.0, 0.0]], 1.0), 64)
    assert area(disk) == pytest.approx(32 * math.sin(2 * math.pi / 64), rel=1e-13)
    B = RoundedBody.from_polygon(P, 0.1)
    assert abs(area(polygonize(B, 16)) - rounded_measures(B)[1]) < 1e-4


@given(seeds, sides, st.floats(0.1, 0.9))
def test_polygonize_converges_quadratically(seed, n, frac):
    P = polygon_from_seed(seed, n)
    B = RoundedBody.from_polygon(P, frac * inradius(P))
    per, ar = rounded_measures(B)
    e1 = ar - area(polygonize(B, 8))
    e2 = ar - area(polygonize(B, 16))
    assert 0 <= e2 <= e1
    assert e2 <= 0.3 * e1 + 1e-14
    assert perimeter(polygonize(B, 16)) <= per


def test_hex_lattice_single():
    cells, kp = hex_lattice_cells(unit_square(), 1, 0.5)
    assert kp == 1 and len(cells) == 1
    assert area(cells[0]) == pytest.approx(0.5)
    assert np.allclose(cells[0].centroid, [0.5, 0.5])


def test_hex_lattice_shrink_and_failure():
    cells, kp = hex_lattice_cells(unit_square(), 64, 0.1, shrink=True)
    assert len(cells) == 64 and kp >= 64
    for c in cells:
        assert area(c) == pytest.approx(0.9 / kp, rel=1e-12)
        assert np.all(unit_square().contains(c.vertices, tol=1e-12))
    with pytest.raises(LatticeDoesNotFit) as info:
        hex_lattice_cells(unit_square(), 4, 0.05)
    assert info.value.max_k < 4
