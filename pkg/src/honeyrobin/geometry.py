"""Convex polygons, inner parallel bodies and rounded (Steiner) bodies.

Everything here is exact up to floating point: polygons are stored as CCW
vertex arrays and all measures come from closed formulas.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

COLLINEAR_TOL = 1e-12


class GeometryError(ValueError):
    """Invalid or degenerate geometric input."""


class LatticeDoesNotFit(ValueError):
    """Raised when a hexagonal cluster cannot be placed inside a container."""

    def __init__(self, k: int, max_k: int):
        super().__init__(f"{k} hexagonal cells do not fit; max feasible k is {max_k}")
        self.k = k
        self.max_k = max_k


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _shoelace(v: np.ndarray) -> float:
    if len(v) < 3:
        return 0.0
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _chain_length(v: np.ndarray) -> float:
    if len(v) < 2:
        return 0.0
    return float(np.sum(np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)))


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Strictly convex polygon with counter-clockwise vertices."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise GeometryError("a polygon needs at least 3 planar vertices")
        if not np.all(np.isfinite(v)):
            raise GeometryError("non-finite vertex coordinates")
        scale = float(np.max(v.max(axis=0) - v.min(axis=0)))
        if scale <= 0:
            raise GeometryError("degenerate polygon")
        e = np.roll(v, -1, axis=0) - v
        turns = _cross(np.roll(e, 1, axis=0), e)
        if _shoelace(v) <= 0:
            raise GeometryError("vertices must be counter-clockwise")
        if np.any(turns <= COLLINEAR_TOL * scale**2):
            raise GeometryError("polygon is not strictly convex (collinear or reflex vertex)")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_points(cls, points) -> "ConvexPolygon":
        """Build from a vertex list in either orientation (CW input is reversed)."""
        v = np.asarray(points, dtype=float)
        if len(v) >= 3 and _shoelace(v) < 0:
            v = v[::-1]
        return cls(v)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    @property
    def edge_lengths(self) -> np.ndarray:
        return np.linalg.norm(self.edges, axis=1)

    @property
    def normals(self) -> np.ndarray:
        """Outward unit normals, one per edge (edge i runs from vertex i to i+1)."""
        e = self.edges / self.edge_lengths[:, None]
        return np.column_stack([e[:, 1], -e[:, 0]])

    @property
    def offsets(self) -> np.ndarray:
        """Support values c_i with the polygon equal to {x : n_i . x <= c_i}."""
        return np.einsum("ij,ij->i", self.normals, self.vertices)

    @property
    def turning_angles(self) -> np.ndarray:
        """Exterior angle pi - theta_i at each vertex."""
        e = self.edges
        ep = np.roll(e, 1, axis=0)
        return np.arctan2(_cross(ep, e), np.einsum("ij,ij->i", ep, e))

    @property
    def interior_angles(self) -> np.ndarray:
        return math.pi - self.turning_angles

    @property
    def centroid(self) -> np.ndarray:
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        c = _cross(v, w)
        a = 0.5 * c.sum()
        return ((v + w) * c[:, None]).sum(axis=0) / (6.0 * a)

    @property
    def scale(self) -> float:
        v = self.vertices
        return float(np.max(v.max(axis=0) - v.min(axis=0)))

    def contains(self, points, tol: float = 1e-12) -> np.ndarray:
        """Vectorised closed containment test with absolute slack ``tol * scale``."""
        p = np.atleast_2d(np.asarray(points, dtype=float))
        d = p @ self.normals.T - self.offsets
        return np.all(d <= tol * self.scale, axis=-1)

    def translated(self, shift) -> "ConvexPolygon":
        return ConvexPolygon(self.vertices + np.asarray(shift, dtype=float))

    def scaled(self, t: float, center=(0.0, 0.0)) -> "ConvexPolygon":
        c = np.asarray(center, dtype=float)
        return ConvexPolygon(c + t * (self.vertices - c))

    def to_dict(self) -> dict:
        return {"vertices": self.vertices.tolist()}


@dataclass(frozen=True)
class Direction:
    """Unit vector in the plane."""

    x: float
    y: float

    def __post_init__(self):
        if abs(math.hypot(self.x, self.y) - 1.0) > 1e-14:
            raise GeometryError("direction is not a unit vector")

    @classmethod
    def from_angle(cls, angle: float) -> "Direction":
        return cls(math.cos(angle), math.sin(angle))

    @classmethod
    def from_vector(cls, vec) -> "Direction":
        x, y = float(vec[0]), float(vec[1])
        nrm = math.hypot(x, y)
        d = cls.__new__(cls)
        object.__setattr__(d, "x", x / nrm)
        object.__setattr__(d, "y", y / nrm)
        d.__post_init__()
        return d

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def orthogonal(self) -> "Direction":
        return Direction(-self.y, self.x)


# ---------------------------------------------------------------- measures


def area(P: ConvexPolygon) -> float:
    a = _shoelace(P.vertices)
    if a <= 0:
        raise GeometryError("degenerate polygon")
    return a


def perimeter(P: ConvexPolygon) -> float:
    return float(P.edge_lengths.sum())


def lambda_sum(P: ConvexPolygon) -> float:
    """Sum of cot(theta_i / 2) over the inner angles."""
    # cot(theta/2) = tan(turn/2), better conditioned for obtuse corners
    return float(np.sum(np.tan(0.5 * P.turning_angles)))


def diameter(P: ConvexPolygon) -> tuple[float, Direction]:
    """Largest vertex-pair distance and its direction.

    Ties are broken by the lexicographically smallest unit vector among
    all tied pairs (both signs considered).
    """
    v = P.vertices
    diff = v[None, :, :] - v[:, None, :]
    dist = np.linalg.norm(diff, axis=-1)
    dmax = float(dist.max())
    ii, jj = np.nonzero(dist >= dmax * (1 - 1e-12))
    cands = []
    for i, j in zip(ii, jj):
        u = diff[i, j] / dist[i, j]
        cands.append((round(float(u[0]), 12), round(float(u[1]), 12), i, j))
    ux, uy, i, j = min(cands)
    return dmax, Direction.from_vector(diff[i, j])


def diameter_directions(P: ConvexPolygon) -> list[Direction]:
    """Directions of all (tied) diameters, one per unordered pair."""
    v = P.vertices
    diff = v[None, :, :] - v[:, None, :]
    dist = np.linalg.norm(diff, axis=-1)
    dmax = dist.max()
    ii, jj = np.nonzero(np.triu(dist >= dmax * (1 - 1e-12)))
    return [Direction.from_vector(diff[i, j]) for i, j in zip(ii, jj)]


def width(P: ConvexPolygon, xi: Direction) -> float:
    """Distance between the two support lines orthogonal to ``xi``."""
    s = P.vertices @ xi.vector
    return float(s.max() - s.min())


def min_width(P: ConvexPolygon) -> tuple[float, Direction]:
    """Minimal width; attained at an edge normal for polygons."""
    best = None
    for nrm in P.normals:
        d = Direction.from_vector(nrm)
        w = width(P, d)
        if best is None or w < best[0]:
            best = (w, d)
    return best


def conv_eps_ratio(P: ConvexPolygon) -> float:
    """Width orthogonal to a diameter divided by the diameter.

    With several diameters the largest ratio is returned, so that
    ``P in Conv(eps)`` iff ``conv_eps_ratio(P) >= eps``.
    """
    d, _ = diameter(P)
    return max(width(P, u.orthogonal()) for u in diameter_directions(P)) / d


def regular_ngon(n: int, target_area: float = 1.0, center=(0.0, 0.0)) -> ConvexPolygon:
    """Regular n-gon of the given area with a horizontal bottom edge."""
    if n < 3:
        raise GeometryError("regular polygon needs n >= 3")
    if target_area <= 0:
        raise GeometryError("area must be positive")
    R = math.sqrt(2.0 * target_area / (n * math.sin(2.0 * math.pi / n)))
    phase = -0.5 * math.pi + math.pi / n
    ang = phase + 2.0 * math.pi * np.arange(n) / n
    v = np.column_stack([R * np.cos(ang), R * np.sin(ang)]) + np.asarray(center, dtype=float)
    return ConvexPolygon(v)


def rectangle(a: float, b: float, origin=(0.0, 0.0)) -> ConvexPolygon:
    x0, y0 = origin
    return ConvexPolygon([[x0, y0], [x0 + a, y0], [x0 + a, y0 + b], [x0, y0 + b]])


def unit_square() -> ConvexPolygon:
    return rectangle(1.0, 1.0)


# ------------------------------------------------------- inner parallel body


def _clip(poly: list, nx: float, ny: float, c: float) -> list:
    """Sutherland-Hodgman clip of a convex vertex list by nx*x + ny*y <= c."""
    out = []
    m = len(poly)
    for i in range(m):
        cx, cy = poly[i]
        px, py = poly[i - 1]
        dc = nx * cx + ny * cy - c
        dp = nx * px + ny * py - c
        if dc <= 0.0:
            if dp > 0.0:
                t = dp / (dp - dc)
                out.append((px + t * (cx - px), py + t * (cy - py)))
            out.append((cx, cy))
        elif dp <= 0.0:
            t = dp / (dp - dc)
            out.append((px + t * (cx - px), py + t * (cy - py)))
    return out


def _dedupe(v: np.ndarray, tol: float) -> np.ndarray:
    if len(v) < 2:
        return v
    keep = [v[0]]
    for p in v[1:]:
        if np.linalg.norm(p - keep[-1]) > tol:
            keep.append(p)
    if len(keep) > 1 and np.linalg.norm(keep[0] - keep[-1]) <= tol:
        keep.pop()
    return np.array(keep)


def offset_core(P: ConvexPolygon, r: float) -> np.ndarray:
    """Vertices of the inner parallel body at distance r, possibly degenerate.

    Returns an (m, 2) array: m == 0 when empty, 1 for a point, 2 for a
    segment, otherwise a convex polygon (collinear points removed).
    """
    if r < 0:
        raise GeometryError("offset distance must be nonnegative")
    if r == 0:
        return P.vertices.copy()
    poly = [tuple(p) for p in P.vertices]
    for (nx, ny), c in zip(P.normals, P.offsets):
        poly = _clip(poly, float(nx), float(ny), float(c) - r)
        if not poly:
            return np.zeros((0, 2))
    v = _dedupe(np.array(poly), 1e-13 * P.scale)
    return _drop_collinear(v, P.scale)


def _drop_collinear(v: np.ndarray, scale: float) -> np.ndarray:
    if len(v) < 3:
        return v
    while len(v) >= 3:
        e = np.roll(v, -1, axis=0) - v
        turns = _cross(np.roll(e, 1, axis=0), e)
        bad = np.nonzero(turns <= COLLINEAR_TOL * scale**2)[0]
        if len(bad) == 0:
            break
        v = np.delete(v, bad[0], axis=0)
    if len(v) == 3 and abs(_shoelace(v)) <= 1e-14 * scale**2:
        # sliver triangle left over near the inradius: keep its long side
        d = np.linalg.norm(v[:, None] - v[None, :], axis=-1)
        i, j = np.unravel_index(np.argmax(d), d.shape)
        v = v[[min(i, j), max(i, j)]]
    return v


def inner_parallel_measures(P: ConvexPolygon, radii) -> tuple[np.ndarray, np.ndarray]:
    """Perimeter and area of the inner parallel body for many radii at once.

    Each offset edge line is intersected with the other half-planes (a 1D
    linear program along the line); the surviving lengths give the
    perimeter and, with the support values, the area as 1/2 sum h_i L_i.
    A segment core counts twice in the perimeter. Radii beyond the
    inradius give (0, 0) and must be excluded by the caller.
    """
    r = np.atleast_1d(np.asarray(radii, dtype=float))[:, None]
    nrm = P.normals
    d = np.column_stack([-nrm[:, 1], nrm[:, 0]])
    h = P.offsets[None, :] - r  # (R, n) support values of the core
    a = d @ nrm.T  # a[i, j] = n_j . d_i
    # line i is {h_i n_i + t d_i}; constraint j reads t a[i, j] <= h_j - h_i n_i.n_j
    rhs = h[:, None, :] - h[:, :, None] * (nrm @ nrm.T)[None]  # (R, i, j)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = rhs / a[None]
    pos = a[None] > 1e-14
    neg = a[None] < -1e-14
    par = ~(pos | neg)
    t_hi = np.min(np.where(pos, t, np.inf), axis=2)
    t_lo = np.max(np.where(neg, t, -np.inf), axis=2)
    blocked = np.any(par & (rhs < -1e-14 * P.scale), axis=2)
    lengths = np.where(blocked, 0.0, np.clip(t_hi - t_lo, 0.0, None))
    per = lengths.sum(axis=1)
    ar = 0.5 * np.sum(h * lengths, axis=1)
    return per, np.clip(ar, 0.0, None)


def inner_parallel_body(P: ConvexPolygon, r: float) -> ConvexPolygon | None:
    """Points of P at distance >= r from the complement.

    Returns None when the body is empty or has (relative) area below 1e-14.
    """
    v = offset_core(P, r)
    if len(v) < 3 or _shoelace(v) < 1e-14 * area(P):
        return None
    try:
        return ConvexPolygon(v)
    except GeometryError:
        return None


def inradius(P: ConvexPolygon) -> float:
    """Radius of the largest inscribed disk (bisection on core emptiness)."""
    lo, hi = 0.0, 0.5 * min_width(P)[0]
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if len(offset_core(P, mid)) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    return lo


def edge_retention_radius(P: ConvexPolygon) -> float:
    """Largest r for which the inner parallel body still has every edge of P.

    Edge i shrinks linearly as L_i - r (cot(theta_i/2) + cot(theta_{i+1}/2))
    until the first edge vanishes.
    """
    c = np.tan(0.5 * P.turning_angles)
    return float(np.min(P.edge_lengths / (c + np.roll(c, -1))))


# ------------------------------------------------------------ rounded bodies


@dataclass(frozen=True, eq=False)
class RoundedBody:
    """Minkowski sum of a convex core (point, segment or polygon) and a disk."""

    core: np.ndarray
    radius: float
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.core, dtype=float))
        if c.shape[1] != 2 or len(c) == 0:
            raise GeometryError("rounded body needs a nonempty core")
        if self.radius < 0:
            raise GeometryError("radius must be nonnegative")
        if len(c) >= 3:
            ConvexPolygon(c)  # validates convexity and orientation
        elif self.radius == 0:
            raise GeometryError("degenerate core with zero radius has no area")
        c.setflags(write=False)
        object.__setattr__(self, "core", c)

    @classmethod
    def from_polygon(cls, P: ConvexPolygon, r: float) -> "RoundedBody":
        """Inner parallel body of P at r, re-expanded by a disk of radius r."""
        core = offset_core(P, r)
        if len(core) == 0:
            raise GeometryError(f"r={r} exceeds the inradius")
        return cls(core, float(r))

    @property
    def degenerate(self) -> bool:
        return len(self.core) < 3

    @property
    def core_polygon(self) -> ConvexPolygon | None:
        return None if self.degenerate else ConvexPolygon(self.core)

    @property
    def center(self) -> np.ndarray:
        if self.degenerate:
            return self.core.mean(axis=0)
        return ConvexPolygon(self.core).centroid

    def transformed(self, scale: float = 1.0, shift=(0.0, 0.0), angle: float = 0.0) -> "RoundedBody":
        """Rigid motion plus dilation about the origin: x -> scale * R x + shift."""
        c, s = math.cos(angle), math.sin(angle)
        R = np.array([[c, -s], [s, c]])
        core = scale * self.core @ R.T + np.asarray(shift, dtype=float)
        return RoundedBody(core, scale * self.radius, dict(self.meta))

    def boundary_point(self, p) -> np.ndarray:
        """Push a point near the boundary onto it along the nearest-core direction."""
        p = np.asarray(p, dtype=float)
        q = _nearest_on_core(self.core, p)
        d = p - q
        nrm = np.linalg.norm(d)
        if nrm <= 1e-300:
            return p
        return q + self.radius * d / nrm


def _nearest_on_core(core: np.ndarray, p: np.ndarray) -> np.ndarray:
    if len(core) == 1:
        return core[0]
    a = core
    b = np.roll(core, -1, axis=0)
    ab = b - a
    t = np.clip(np.einsum("ij,ij->i", p - a, ab) / np.einsum("ij,ij->i", ab, ab), 0.0, 1.0)
    q = a + t[:, None] * ab
    if len(core) >= 3 and ConvexPolygon(core).contains(p, tol=0.0)[0]:
        return p
    return q[np.argmin(np.linalg.norm(q - p, axis=1))]


def rounded_measures(B: RoundedBody) -> tuple[float, float]:
    """(perimeter, area) by the Steiner formula."""
    pc = _chain_length(B.core) if len(B.core) >= 2 else 0.0
    if len(B.core) == 2:
        pc = 2.0 * float(np.linalg.norm(B.core[1] - B.core[0]))
    ac = _shoelace(B.core)
    r = B.radius
    return pc + 2.0 * math.pi * r, ac + r * pc + math.pi * r * r


def polygonize(B: RoundedBody, arcs_per_corner: int) -> ConvexPolygon:
    """Inscribed polygon: each corner arc sampled with ``arcs_per_corner`` chords.

    For a point core the whole circle gets ``arcs_per_corner`` chords.
    """
    if arcs_per_corner < 1:
        raise GeometryError("arcs_per_corner must be >= 1")
    r = B.radius
    if r == 0:
        return ConvexPolygon(B.core)
    if len(B.core) == 1:
        m = max(arcs_per_corner, 3)
        ang = 2.0 * math.pi * np.arange(m) / m
        return ConvexPolygon(B.core[0] + r * np.column_stack([np.cos(ang), np.sin(ang)]))
    v = B.core
    e = np.roll(v, -1, axis=0) - v
    nrm = np.column_stack([e[:, 1], -e[:, 0]]) / np.linalg.norm(e, axis=1)[:, None]
    pts = []
    for i in range(len(v)):
        a0 = math.atan2(*nrm[i - 1][::-1])
        a1 = math.atan2(*nrm[i][::-1])
        turn = (a1 - a0) % (2.0 * math.pi)
        if turn == 0:
            turn = 2.0 * math.pi
        ang = a0 + turn * np.arange(arcs_per_corner + 1) / arcs_per_corner
        pts.append(v[i] + r * np.column_stack([np.cos(ang), np.sin(ang)]))
    return ConvexPolygon(_dedupe(np.vstack(pts), 1e-13 * (r + np.ptp(v))))


# ----------------------------------------------------------- hex lattice


def _hex_vertices(center: np.ndarray, side: float) -> np.ndarray:
    ang = np.pi / 3.0 * np.arange(6)
    return center[..., None, :] + side * np.column_stack([np.cos(ang), np.sin(ang)])


def flat_hexagon(side: float, center=(0.0, 0.0)) -> ConvexPolygon:
    """Flat-top regular hexagon (vertices at angles 0, 60, ..., 300 degrees)."""
    return ConvexPolygon(_hex_vertices(np.asarray(center, dtype=float), side))


def _lattice_fit(P: ConvexPolygon, hex_area: float) -> tuple[np.ndarray, float]:
    """Centers of all flat-top lattice hexagons of the given area lying inside P."""
    s = math.sqrt(2.0 * hex_area / (3.0 * math.sqrt(3.0)))
    dx, dy = 1.5 * s, math.sqrt(3.0) * s
    c0 = P.centroid
    lo = P.vertices.min(axis=0) - c0
    hi = P.vertices.max(axis=0) - c0
    i = np.arange(math.floor(lo[0] / dx) - 1, math.ceil(hi[0] / dx) + 2)
    j = np.arange(math.floor(lo[1] / dy) - 2, math.ceil(hi[1] / dy) + 2)
    I, J = np.meshgrid(i, j, indexing="ij")
    cx = c0[0] + I * dx
    cy = c0[1] + J * dy + (I % 2) * 0.5 * dy
    centers = np.column_stack([cx.ravel(), cy.ravel()])
    verts = _hex_vertices(centers, s)  # (N, 6, 2)
    d = verts @ P.normals.T - P.offsets  # (N, 6, n_edges)
    inside = np.all(d <= 1e-12 * P.scale, axis=(1, 2))
    centers = centers[inside]
    # nearest to the centroid first; deterministic tie-break on coordinates
    dist = np.round(np.linalg.norm(centers - c0, axis=1), 12)
    order = np.lexsort((np.round(centers[:, 1], 12), np.round(centers[:, 0], 12), dist))
    return centers[order], s


def hex_lattice_cells(
    P: ConvexPolygon, k: int, eps: float, shrink: bool = False
) -> tuple[list[ConvexPolygon], int]:
    """Place k congruent flat-top hexagons of area (1-eps)|P|/k' on a lattice inside P.

    The lattice is axis aligned and centered at the centroid of P; the k
    hexagons closest to the centroid are returned together with k'. Without
    ``shrink`` k' == k and LatticeDoesNotFit is raised (carrying the largest
    feasible k) when fewer than k hexagons fit. With ``shrink`` the smallest
    integer k' >= k for which k hexagons fit is used instead.
    """
    centers, s, kp = lattice_centers(P, k, eps, shrink)
    return [flat_hexagon(s, c) for c in centers], kp


def lattice_centers(P: ConvexPolygon, k: int, eps: float, shrink: bool = False) -> tuple[np.ndarray, float, int]:
    """Array form of :func:`hex_lattice_cells`: (centers, side, k')."""
    if k < 1:
        raise GeometryError("k must be >= 1")
    if not 0.0 < eps < 1.0:
        raise GeometryError("eps must lie in (0, 1)")
    A = area(P)
    kp = k
    while True:
        centers, s = _lattice_fit(P, (1.0 - eps) * A / kp)
        if len(centers) >= k:
            return centers[:k], s, kp
        if not shrink:
            raise LatticeDoesNotFit(k, max_feasible_k(P, eps, k))
        kp += max(1, kp // 200)


def max_feasible_k(P: ConvexPolygon, eps: float, k_start: int) -> int:
    """Largest k <= k_start for which k hexagons of area (1-eps)|P|/k fit (0 if none)."""
    A = area(P)
    for kk in range(k_start, 0, -1):
        if len(_lattice_fit(P, (1.0 - eps) * A / kk)[0]) >= kk:
            return kk
    return 0


# --------------------------------------------------------------- random / io


def random_convex_polygon(rng: np.random.Generator, n: int) -> ConvexPolygon:
    """n points on a random ellipse with angular jitter (convex by construction).

    Draws are repeated (from the same generator) until the polygon passes
    the strict-convexity check, so the result is reproducible per seed.
    """
    if n < 3:
        raise GeometryError("n must be >= 3")
    while True:
        b = rng.uniform(0.25, 1.0)
        phi = rng.uniform(0.0, math.pi)
        base = rng.uniform(0.0, 2.0 * math.pi)
        jitter = rng.uniform(-0.35, 0.35, size=n)
        t = base + 2.0 * math.pi * (np.arange(n) + jitter) / n
        pts = np.column_stack([np.cos(t), b * np.sin(t)])
        c, s = math.cos(phi), math.sin(phi)
        pts = pts @ np.array([[c, s], [-s, c]])
        try:
            P = ConvexPolygon(pts)
        except GeometryError:
            continue
        if np.min(P.interior_angles) > 1e-3 and np.min(P.edge_lengths) > 1e-3:
            return P


def load_polygon(source) -> ConvexPolygon:
    """Read {"vertices": [[x, y], ...]} or a bare vertex list from a path, JSON string or dict.

    Clockwise input is reversed with a warning.
    """
    if isinstance(source, (dict, list)):
        data = source
    elif isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith(("{", "["))):
        data = json.loads(Path(source).read_text())
    else:
        data = json.loads(source)
    v = np.asarray(data["vertices"] if isinstance(data, dict) else data, dtype=float)
    if len(v) >= 3 and _shoelace(v) < 0:
        warnings.warn("polygon given clockwise; reversing to counter-clockwise", stacklevel=2)
        v = v[::-1]
    return ConvexPolygon(v)


def dump_polygon(P: ConvexPolygon, path=None) -> str:
    text = json.dumps(P.to_dict())
    if path is not None:
        Path(path).write_text(text)
    return text
