"""Cheeger and 2-Cheeger constants of convex polygons.

Two independent routes are provided: the closed form obtained by rounding
every corner with arcs of a common radius, and a brute-force oracle that
scans the one-parameter family ``inner_parallel_body(P, r) + disk(r)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    ConvexPolygon,
    GeometryError,
    RoundedBody,
    area,
    edge_retention_radius,
    inner_parallel_measures,
    inradius,
    lambda_sum,
    perimeter,
    regular_ngon,
    rounded_measures,
)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class CheegerError(ArithmeticError):
    """Closed form not evaluable (negative discriminant)."""


@dataclass(frozen=True)
class CheegerResult:
    exponent: int
    radius: float
    constant: float
    set: RoundedBody
    method: str
    valid_closed_form: bool

    def to_dict(self) -> dict:
        per, ar = rounded_measures(self.set)
        return {
            "exponent": self.exponent,
            "radius": self.radius,
            "constant": self.constant,
            "method": self.method,
            "valid_closed_form": self.valid_closed_form,
            "set": {
                "core": self.set.core.tolist(),
                "radius": self.set.radius,
                "perimeter": per,
                "area": ar,
            },
        }


def _data(P: ConvexPolygon) -> tuple[float, float, float]:
    return perimeter(P), area(P), lambda_sum(P) - math.pi


def closed_form_radius(P: ConvexPolygon, p: int) -> float:
    per, A, L = _data(P)
    if p == 1:
        disc = per * per - 4.0 * L * A
        if disc < 0:
            raise CheegerError("negative discriminant for p=1")
        # rationalised smaller root of L r^2 - per r + A = 0
        return 2.0 * A / (per + math.sqrt(disc))
    if p == 2:
        disc = per * per - 3.0 * A * L
        if disc < 0:
            raise CheegerError("negative discriminant for p=2")
        return A / (per + math.sqrt(disc))
    raise ValueError("closed form is available for p in {1, 2} only")


def cheeger_profile(P: ConvexPolygon, r: float, p: int) -> float:
    """Perimeter over area^p of P with every corner rounded at radius r."""
    rbar = edge_retention_radius(P)
    if r < 0 or r > rbar * (1 + 1e-12):
        raise GeometryError(f"r={r} outside the validity range [0, {rbar}]")
    per, A, L = _data(P)
    return (per - 2.0 * r * L) / (A - r * r * L) ** p


def cheeger_closed_form(P: ConvexPolygon, p: int) -> CheegerResult:
    """Corner-rounding closed form for h_p, p in {1, 2}.

    ``valid_closed_form`` is False when the optimal radius exceeds the
    edge-retention radius, i.e. the rounded set would not touch every side;
    the constant is then only an upper estimate of the profile and the
    oracle should be trusted.
    """
    r = closed_form_radius(P, p)
    per, A, L = _data(P)
    h = (per - 2.0 * r * L) / (A - r * r * L) ** p
    valid = r <= edge_retention_radius(P) * (1 + 1e-12)
    return CheegerResult(p, r, h, RoundedBody.from_polygon(P, r), "closed_form", valid)


def _quotients(P: ConvexPolygon, radii, p: float) -> np.ndarray:
    r = np.atleast_1d(np.asarray(radii, dtype=float))
    pc, ac = inner_parallel_measures(P, r)
    return (pc + 2.0 * math.pi * r) / (ac + r * pc + math.pi * r * r) ** p


def golden_section(f, a: float, b: float, tol: float, max_iter: int = 500) -> tuple[float, float]:
    """Minimise a unimodal f on [a, b]; returns (argmin, min)."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = c if fc <= fd else d
    return x, min(fc, fd)


def cheeger_oracle(P: ConvexPolygon, p: float, grid: int = 1024) -> CheegerResult:
    """Brute-force h_p: grid scan of q(r) on (0, inradius] then golden section.

    Works for any exponent p >= 1; the scan guards against local minima.
    """
    if grid < 64:
        raise ValueError("grid must be >= 64")
    if p < 1:
        raise ValueError("exponent must be >= 1")
    rin = inradius(P)
    rs = rin * np.arange(0, grid + 1) / grid
    q = _quotients(P, rs, p)
    j = int(np.argmin(q))
    lo, hi = rs[max(j - 1, 0)], rs[min(j + 1, grid)]
    r, val = golden_section(lambda t: float(_quotients(P, t, p)[0]), lo, hi, tol=1e-12 * rin)
    if q[j] < val:
        r, val = float(rs[j]), float(q[j])
    r, val = float(r), float(val)
    body = RoundedBody.from_polygon(P, r)
    valid = r <= edge_retention_radius(P) * (1 + 1e-12)
    pe = int(p) if float(p).is_integer() else p
    return CheegerResult(pe, r, val, body, "oracle", valid)


def cheeger_both(P: ConvexPolygon, p: int, grid: int = 1024) -> tuple[CheegerResult, CheegerResult]:
    """Closed form and oracle side by side; the oracle is authoritative on disagreement."""
    return cheeger_closed_form(P, p), cheeger_oracle(P, p, grid)


# ---------------------------------------------------- discrete Faber-Krahn


def _check_admissible(x: float, y: float) -> None:
    if y < math.pi * (1 - 1e-14) or x * x < 4.0 * y * (1 - 1e-12):
        raise ValueError(f"({x}, {y}) outside the admissible region x^2 >= 4y >= 4pi")


def phi(x: float, y: float) -> float:
    """Scale-free 2-Cheeger energy as a function of (I, Lambda).

    For a polygon whose 2-Cheeger set touches every side,
    h_2 |P|^{3/2} = phi(|dP| / |P|^{1/2}, Lambda(P)).
    """
    _check_admissible(x, y)
    s = math.sqrt(max(x * x - 3.0 * y + 3.0 * math.pi, 0.0)) + x
    return (x - 2.0 * (y - math.pi) / s) / (1.0 - (y - math.pi) / (s * s)) ** 2


def dphi_dy(x: float, y: float) -> float:
    """Analytic y-derivative of :func:`phi` (nonpositive on the admissible region)."""
    _check_admissible(x, y)
    root = math.sqrt(x * x - 3.0 * y + 3.0 * math.pi)
    return -(x**3 + (x * x + 12.0 * math.pi - 12.0 * y) * root) / (4.0 * (x * x - 4.0 * y + 4.0 * math.pi) ** 2)


def zeta(x: float) -> float:
    """phi restricted to the boundary y = x^2 / 4 (polygons circumscribed to a disk)."""
    if x < 2.0 * math.sqrt(math.pi) * (1 - 1e-14):
        raise ValueError("zeta is defined for x >= 2 sqrt(pi)")
    root = math.sqrt(x * x + 12.0 * math.pi)
    return (root + 2.0 * x) ** 3 / (16.0 * (x * (root + x) + 4.0 * math.pi))


def gamma(n: int) -> float:
    """min |P|^{3/2} h_2(P) over convex polygons with at most n sides."""
    if n < 3:
        raise ValueError("gamma(n) requires n >= 3")
    t = n * math.tan(math.pi / n)
    st = math.sqrt(t)
    s3 = math.sqrt(t + 3.0 * math.pi)
    return (2.0 * st + s3) ** 3 / (8.0 * (t + st * s3 + math.pi))


def gamma_table(n_values) -> list[tuple[int, float, float]]:
    return [(n, gamma(n), gamma(n) ** 0.4) for n in n_values]


def fk_deficit(P: ConvexPolygon, grid: int = 1024) -> float:
    """|P|^{3/2} h_2(P) - gamma(n), with h_2 from the oracle."""
    h2 = cheeger_oracle(P, 2, grid).constant
    return area(P) ** 1.5 * h2 - gamma(P.n)


# -------------------------------------------------------- unit hexagon


def unit_hexagon() -> ConvexPolygon:
    """Unit-area flat-top regular hexagon centered at the origin."""
    return regular_ngon(6, 1.0)


def hexagon_cheeger_set(p: int) -> RoundedBody:
    """C(H) for p=1, C_2(H) for p=2, of the unit-area hexagon."""
    return cheeger_closed_form(unit_hexagon(), p).set


def hex_constants() -> tuple[float, float]:
    """(h(H), h_2(H)) of the unit-area regular hexagon."""
    H = unit_hexagon()
    return cheeger_closed_form(H, 1).constant, cheeger_closed_form(H, 2).constant
