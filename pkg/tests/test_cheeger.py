import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from honeyrobin.cheeger import (
    cheeger_closed_form,
    cheeger_oracle,
    cheeger_profile,
    closed_form_radius,
    dphi_dy,
    fk_deficit,
    gamma,
    gamma_table,
    hex_constants,
    phi,
    zeta,
)
from honeyrobin.geometry import (
    ConvexPolygon,
    GeometryError,
    RoundedBody,
    area,
    lambda_sum,
    perimeter,
    rectangle,
    regular_ngon,
    rounded_measures,
    unit_square,
)

from conftest import polygon_from_seed

H_SQUARE = 2 + math.sqrt(math.pi)
# oracle values (bisection-free closed forms, cross-checked by the grid oracle)
R2_SQUARE = 0.13048044125523545
H2_SQUARE = 3.888825221132273
H_HEX = 3.633663569109715
H2_HEX = 3.6784496225450996


def test_square_p1():
    res = cheeger_closed_form(unit_square(), 1)
    assert res.constant == pytest.approx(H_SQUARE, rel=1e-13)
    assert res.valid_closed_form
    assert res.radius == pytest.approx(1 / (2 + math.sqrt(math.pi)), rel=1e-13)


def test_square_p2():
    res = cheeger_closed_form(unit_square(), 2)
    assert res.radius == pytest.approx(R2_SQUARE, rel=1e-12)
    assert res.radius == pytest.approx(1 / (4 + math.sqrt(16 - 3 * (4 - math.pi))), rel=1e-14)
    assert res.constant == pytest.approx(H2_SQUARE, rel=1e-12)


def test_hexagon_constants():
    h1, h2 = hex_constants()
    assert h1 == pytest.approx(H_HEX, rel=1e-12)
    assert h2 == pytest.approx(H2_HEX, rel=1e-12)
    assert h2 == pytest.approx(gamma(6), rel=1e-12)
    assert h2 > h1
    # |dH|^2 - 4(Lambda - pi) = 4 pi makes the p=1 radius explicit
    x, y = 2 * math.sqrt(2 * math.sqrt(3)), 2 * math.sqrt(3)
    r = (x - 2 * math.sqrt(math.pi)) / (2 * (y - math.pi))
    assert closed_form_radius(regular_ngon(6), 1) == pytest.approx(r, rel=1e-12)


def test_profile():
    P = unit_square()
    assert cheeger_profile(P, 0.0, 1) == pytest.approx(4.0)
    assert cheeger_profile(P, 0.0, 2) == pytest.approx(4.0)
    assert cheeger_profile(P, R2_SQUARE, 2) == pytest.approx(H2_SQUARE, rel=1e-12)
    r = closed_form_radius(P, 1)
    for dr in (-1e-3, 1e-3):
        assert cheeger_profile(P, r + dr, 1) >= H_SQUARE
    with pytest.raises(GeometryError):
        cheeger_profile(P, 0.6, 1)


@pytest.mark.parametrize("p", [1, 2])
def test_oracle_square(p):
    closed = cheeger_closed_form(unit_square(), p)
    oracle = cheeger_oracle(unit_square(), p)
    assert abs(oracle.constant - closed.constant) <= 1e-8 * closed.constant


def test_oracle_long_rectangle():
    P = rectangle(10, 1)
    closed, oracle = cheeger_closed_form(P, 1), cheeger_oracle(P, 1)
    assert closed.valid_closed_form
    assert oracle.constant == pytest.approx(closed.constant, rel=1e-8)


@pytest.mark.parametrize("p", [1, 2])
def test_result_set_identity(p):
    P = polygon_from_seed(3, 7)
    res = cheeger_oracle(P, p)
    per, ar = rounded_measures(res.set)
    assert per / ar**p == pytest.approx(res.constant, rel=1e-10)
    core = res.set.core
    assert np.all(P.contains(core, tol=1e-9))
    assert np.all(core @ P.normals.T - P.offsets <= -res.radius + 1e-9)


@given(st.integers(0, 5000), st.integers(3, 9), st.sampled_from([0.5, 2.0, 7.0]), st.sampled_from([1, 2]))
def test_scaling(seed, n, t, p):
    P = polygon_from_seed(seed, n)
    h = cheeger_oracle(P, p).constant
    ht = cheeger_oracle(P.scaled(t), p).constant
    assert ht == pytest.approx(t ** (1 - 2 * p) * h, rel=1e-10)


@given(st.integers(0, 5000), st.integers(3, 9), st.sampled_from([1, 2]))
def test_monotone_under_inclusion(seed, n, p):
    P = polygon_from_seed(seed, n)
    # cut off one corner: the result is contained in P
    v = P.vertices
    a, b, c = v[-1], v[0], v[1]
    Q = ConvexPolygon(np.vstack([0.5 * (a + b), 0.5 * (b + c), v[1:]]))
    assert cheeger_oracle(Q, p).constant >= cheeger_oracle(P, p).constant * (1 - 1e-12)


@given(st.integers(0, 5000), st.integers(3, 9))
def test_oracle_general_exponent(seed, n):
    P = polygon_from_seed(seed, n)
    r15 = cheeger_oracle(P, 1.5)
    per, ar = rounded_measures(r15.set)
    assert per / ar**1.5 == pytest.approx(r15.constant, rel=1e-10)


def test_phi_examples():
    assert phi(4.0, 4.0) == pytest.approx(H2_SQUARE, rel=1e-12)
    x6, y6 = 2 * math.sqrt(2 * math.sqrt(3)), 2 * math.sqrt(3)
    assert phi(x6, y6) == pytest.approx(gamma(6), rel=1e-12)
    for x in np.linspace(2 * math.sqrt(math.pi), 12, 17):
        assert phi(x, x * x / 4) == pytest.approx(zeta(x), rel=1e-12)
    with pytest.raises(ValueError):
        phi(3.0, 4.0)


@given(st.integers(0, 5000), st.integers(3, 10))
def test_phi_matches_h2_when_valid(seed, n):
    P = polygon_from_seed(seed, n)
    res = cheeger_closed_form(P, 2)
    if res.valid_closed_form:
        x = perimeter(P) / math.sqrt(area(P))
        assert phi(x, lambda_sum(P)) == pytest.approx(area(P) ** 1.5 * res.constant, rel=1e-10)


def test_dphi_dy_matches_finite_difference():
    for x in (4.0, 6.0, 10.0):
        for frac in (0.1, 0.5, 0.9):
            y = math.pi + frac * (x * x / 4 - math.pi)
            d = 1e-6
            fd = (phi(x, y + d) - phi(x, y - d)) / (2 * d)
            assert dphi_dy(x, y) == pytest.approx(fd, rel=1e-5)
            assert dphi_dy(x, y) < 0


def test_gamma():
    assert gamma(4) == pytest.approx(H2_SQUARE, rel=1e-12)
    assert gamma(6) == pytest.approx(H2_HEX, rel=1e-12)
    disk = zeta(2 * math.sqrt(math.pi))
    assert disk == pytest.approx(2 * math.sqrt(math.pi), rel=1e-12)
    assert gamma(10_000) == pytest.approx(disk, rel=1e-6)
    table = gamma_table(range(3, 8))
    assert [row[0] for row in table] == list(range(3, 8))
    assert table[3][2] == pytest.approx(gamma(6) ** 0.4)
    with pytest.raises(ValueError):
        gamma(2)


@pytest.mark.parametrize("n", range(3, 13))
def test_fk_regular_is_zero(n):
    assert abs(fk_deficit(regular_ngon(n, 1.7))) <= 1e-10


def test_fk_perturbed_square_positive():
    v = unit_square().vertices.copy()
    v[2] *= 1.05
    assert fk_deficit(ConvexPolygon(v)) > 1e-6


@given(st.integers(0, 10_000))
def test_fk_pentagons(seed):
    assert fk_deficit(polygon_from_seed(seed, 5)) >= -1e-10
