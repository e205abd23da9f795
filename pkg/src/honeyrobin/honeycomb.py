"""Hexagonal clusters of rounded cells and their partition energies.

A cluster in a container Omega consists of k copies of a reference cell of
the unit-area flat-top hexagon H (its Cheeger set C(H), its 2-Cheeger set
C_2(H), or H itself), each dilated by t = sqrt((1 - eps)|Omega| / k) and
centered in one hexagon of an axis-aligned lattice whose cells have area
t^2. Because every cell is congruent, spectral sums need one solve on the
reference cell per k, via the scaling laws

    lam_1(t E, beta) = t^-2 lam_1(E, t beta),   1/tau(t E, beta) = t^-4 / tau(E, t beta).
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from . import robin2d
from .cheeger import hex_constants, hexagon_cheeger_set, unit_hexagon
from .geometry import (
    ConvexPolygon,
    LatticeDoesNotFit,
    RoundedBody,
    area,
    lattice_centers,
    rounded_measures,
)

CELL_KINDS = ("cheeger", "cheeger2", "hexagon")
FUNCTIONALS = ("perimeter_p1", "perimeter_p2", "eig", "torsion", "eig_max", "tor_max")


class ClusterError(ValueError):
    pass


def reference_cell(kind: str) -> RoundedBody:
    """Unit-scale cell centered at the origin, inscribed in the unit-area hexagon."""
    if kind == "cheeger":
        return hexagon_cheeger_set(1)
    if kind == "cheeger2":
        return hexagon_cheeger_set(2)
    if kind == "hexagon":
        return RoundedBody(unit_hexagon().vertices, 0.0)
    raise ValueError(f"unknown cell kind {kind!r}")


@dataclass(frozen=True, eq=False)
class Cluster:
    """k congruent cells stored as placements of one reference cell.

    ``cell_area`` is the area t^2 of each hosting lattice hexagon, so every
    cell has Per/Area = h(H) / sqrt(cell_area) for the Cheeger cell.
    ``k_prime`` differs from k only for a shrunk (realized) cluster.
    """

    container: ConvexPolygon
    k: int
    epsilon: float
    reference: RoundedBody
    scale: float
    centers: np.ndarray
    k_prime: int
    kind: str = "cheeger"

    @property
    def cell_area(self) -> float:
        return self.scale**2

    @property
    def cells(self) -> list[RoundedBody]:
        return [self.reference.transformed(self.scale, c) for c in self.centers]


def build_cluster(omega: ConvexPolygon, k: int, epsilon: float, kind: str = "cheeger",
                  shrink: bool = False) -> Cluster:
    """Place k scaled reference cells on the hexagonal lattice inside omega.

    Raises LatticeDoesNotFit when the nominal cells (host area
    (1 - eps)|omega| / k) do not fit; with ``shrink`` the host area is
    reduced to (1 - eps)|omega| / k' for the smallest k' that fits.
    """
    centers, side, kp = lattice_centers(omega, k, epsilon, shrink)
    t = math.sqrt((1.0 - epsilon) * area(omega) / kp)
    cl = Cluster(omega, k, epsilon, reference_cell(kind), t, centers, kp, kind)
    verify(cl)
    return cl


def _core_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Euclidean distance between two convex cores (0 when they overlap)."""

    def seg_dist(p, q0, q1):
        d = q1 - q0
        L = d @ d
        s = 0.0 if L == 0 else np.clip(((p - q0) @ d) / L, 0.0, 1.0)
        return np.linalg.norm(p - (q0 + s[..., None] * d), axis=-1)

    def overlap(u, v):
        for poly in (u, v):
            if len(poly) < 2:
                continue
            e = np.roll(poly, -1, axis=0) - poly
            for nx, ny in np.column_stack([e[:, 1], -e[:, 0]]):
                n = np.array([nx, ny])
                if (u @ n).max() < (v @ n).min() or (v @ n).max() < (u @ n).min():
                    return False
        return len(u) >= 3 or len(v) >= 3

    if overlap(a, b):
        return 0.0
    best = math.inf
    for u, v in ((a, b), (b, a)):
        m = len(v)
        segs = [(v[i], v[(i + 1) % m]) for i in range(m if m > 2 else max(m - 1, 1))]
        for q0, q1 in segs:
            best = min(best, float(seg_dist(u, q0, q1).min()))
    return best


def verify(cluster: Cluster, tol: float = 1e-9) -> None:
    """Containment and pairwise interior-disjointness, exact for rounded cells.

    A cell core + disk(r) lies in the container iff every core vertex is at
    distance >= r inside every supporting line; two cells have disjoint
    interiors iff their cores are at distance >= r1 + r2.
    """
    P = cluster.container
    t = cluster.scale
    r = t * cluster.reference.radius
    slack = tol * t
    core0 = t * cluster.reference.core
    pts = cluster.centers[:, None, :] + core0[None]
    d = pts @ P.normals.T - P.offsets
    if np.any(d > -r + slack):
        raise ClusterError("cell not contained in the container")
    reach = float(np.linalg.norm(core0, axis=1).max()) + r
    tree = cKDTree(cluster.centers)
    for i, j in sorted(tree.query_pairs(2.0 * reach + slack)):
        delta = cluster.centers[j] - cluster.centers[i]
        if np.linalg.norm(delta) < slack:
            raise ClusterError(f"cells {i} and {j} coincide")
        if _core_distance(core0, core0 + delta) < 2.0 * r - slack:
            raise ClusterError(f"cells {i} and {j} overlap")


# ------------------------------------------------------------------ reports


@dataclass
class PartitionReport:
    functional: str
    k: int
    epsilon: float
    beta: float | None
    raw_sum: float
    scaled: float
    exponents: tuple[float, float]
    target: float
    target_uncorrected: float
    feasible: bool = True
    k_prime: int | None = None
    scaled_realized: float | None = None
    scaled_printed: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def deviation(self) -> float:
        return abs(self.scaled - self.target) / abs(self.target)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["exponents"] = list(self.exponents)
        d["deviation"] = self.deviation
        return d


CSV_HEADER = ["functional", "k", "epsilon", "beta", "raw_sum", "scaled", "target", "deviation",
              "target_uncorrected", "feasible", "k_prime", "scaled_realized", "scaled_printed"]


def _fmt(v) -> str:
    return "" if v is None else repr(v)


def reports_to_csv(reports) -> str:
    """CSV with one row per k and a closing target row (k = inf)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        w.writerow([r.functional, r.k, _fmt(r.epsilon), _fmt(r.beta), _fmt(r.raw_sum), _fmt(r.scaled),
                    _fmt(r.target), _fmt(r.deviation), _fmt(r.target_uncorrected), r.feasible,
                    _fmt(r.k_prime), _fmt(r.scaled_realized), _fmt(r.scaled_printed)])
    if reports:
        r = reports[-1]
        w.writerow([r.functional, "inf", _fmt(r.epsilon), _fmt(r.beta), "", _fmt(r.target), _fmt(r.target),
                    "0.0", _fmt(r.target_uncorrected), "", "", "", ""])
    return buf.getvalue()


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def realized_cluster(omega: ConvexPolygon, k: int, epsilon: float, kind: str) -> Cluster:
    """Nominal cluster when it fits, otherwise the shrunk one; always verified."""
    try:
        return build_cluster(omega, k, epsilon, kind)
    except LatticeDoesNotFit:
        return build_cluster(omega, k, epsilon, kind, shrink=True)


def _host_scale(omega: ConvexPolygon, k: int, epsilon: float) -> float:
    return math.sqrt((1.0 - epsilon) * area(omega) / k)


def partition_sum_perimeter(cluster: Cluster, p: int) -> PartitionReport:
    """sum Per(E_i) / Area(E_i)^p over the cells, exact via the Steiner formula."""
    if p not in (1, 2):
        raise ValueError("p must be 1 or 2")
    raw = 0.0
    for cell in cluster.cells:
        per, ar = rounded_measures(cell)
        raw += per / ar**p
    a, b = (0.5, 1.5) if p == 1 else (1.5, 2.5)
    A = area(cluster.container)
    scaled = A**a * raw / cluster.k**b
    h1, h2 = hex_constants()
    base = h1 if p == 1 else h2
    corr = (1.0 - cluster.epsilon) ** (-0.5 if p == 1 else -1.5)
    return PartitionReport(f"perimeter_p{p}", cluster.k, cluster.epsilon, None, raw, scaled, (a, b),
                           base * corr, base, cluster.k_prime == cluster.k, cluster.k_prime, scaled)


def _cell_value(functional: str, omega, k, epsilon, beta, h, ref) -> tuple[float, float]:
    """(single-cell value, raw sum) at host scale t = sqrt((1-eps)|omega|/k)."""
    t = _host_scale(omega, k, epsilon)
    if functional == "eig":
        lam = robin2d.robin_eig(ref, t * beta, h).extrapolated
        one = lam / t**2
    else:
        tinv = robin2d.robin_torsion(ref, t * beta, h).extra["tau_inv"]
        one = tinv / t**4
    return one, k * one


def _spectral_report(functional: str, omega, k, epsilon, beta, h, kind, sup: bool) -> PartitionReport:
    if not beta > 0:
        raise ValueError("beta must be positive")
    if kind is None:
        kind = "cheeger" if functional == "eig" else "cheeger2"
    ref = reference_cell(kind)
    A = area(omega)
    kp = realized_cluster(omega, k, epsilon, kind).k_prime
    feasible = kp == k
    h1, h2 = hex_constants()
    one, raw = _cell_value(functional, omega, k, epsilon, beta, h, ref)
    if feasible:
        one_r = one
    else:
        # realized cluster: k cells in hosts of area (1-eps)|omega|/k'
        t_r = _host_scale(omega, kp, epsilon)
        if functional == "eig":
            one_r = robin2d.robin_eig(ref, t_r * beta, h).extrapolated / t_r**2
        else:
            one_r = robin2d.robin_torsion(ref, t_r * beta, h).extra["tau_inv"] / t_r**4
    if functional == "eig":
        target_u = beta * h1
        target = target_u / math.sqrt(1.0 - epsilon)
        a, b = (0.5, 0.5) if sup else (0.5, 1.5)
        printed = None
        pa, pb = None, None
    else:
        target_u = beta * h2
        target = target_u * (1.0 - epsilon) ** -1.5
        a, b = (1.5, 1.5) if sup else (1.5, 2.5)
        pa, pb = (0.5, 0.5) if sup else (0.5, 1.5)
    value = one if sup else raw
    value_r = one_r if sup else k * one_r
    scaled = A**a * value / k**b
    printed = None if pa is None else A**pa * value / k**pb
    name = functional if not sup else ("eig_max" if functional == "eig" else "tor_max")
    return PartitionReport(name, k, epsilon, beta, value, scaled, (a, b), target, target_u,
                           feasible, kp, A**a * value_r / k**b, printed,
                           {"cell": kind, "cell_scale": _host_scale(omega, k, epsilon)})


def partition_sum_eig(omega, k, epsilon, beta, h=None, kind=None) -> PartitionReport:
    """k t^-2 lam_1(cell, t beta), scaled by |omega|^(1/2) / k^(3/2); target beta h(H)/sqrt(1-eps)."""
    return _spectral_report("eig", omega, k, epsilon, beta, h, kind, sup=False)


def partition_sum_torsion(omega, k, epsilon, beta, h=None, kind=None) -> PartitionReport:
    """k t^-4 / tau(cell, t beta), scaled by |omega|^(3/2) / k^(5/2); target beta h_2(H)(1-eps)^(-3/2).

    ``scaled_printed`` carries the |omega|^(1/2) / k^(3/2) normalization,
    which grows linearly in k.
    """
    return _spectral_report("torsion", omega, k, epsilon, beta, h, kind, sup=False)


def sup_functionals(omega, k, epsilon, beta, functional: str, h=None, kind=None) -> PartitionReport:
    """Largest cell value (all cells congruent, so the single-cell value).

    eig: scaled by |omega|^(1/2) / k^(1/2). torsion: scaled by
    |omega|^(3/2) / k^(3/2), with |omega|^(1/2) / k^(1/2) in ``scaled_printed``.
    """
    if functional not in ("eig", "torsion"):
        raise ValueError("functional must be 'eig' or 'torsion'")
    return _spectral_report(functional, omega, k, epsilon, beta, h, kind, sup=True)


def asymptotic_table(omega, beta, k_list, functional: str, epsilon: float = 0.05, h=None,
                     kind=None, jobs: int = 1) -> list[PartitionReport]:
    """One report per k (ordered as k_list, which must increase)."""
    k_list = list(k_list)
    if any(b <= a for a, b in zip(k_list, k_list[1:])):
        raise ValueError("k_list must be strictly increasing")
    if functional not in FUNCTIONALS:
        raise ValueError(f"functional must be one of {FUNCTIONALS}")

    def one(k):
        if functional.startswith("perimeter"):
            cl = realized_cluster(omega, k, epsilon, kind or "cheeger")
            rep = partition_sum_perimeter(cl, int(functional[-1]))
            # nominal construction: the identity does not depend on placement
            rep.k_prime = cl.k_prime
            rep.feasible = cl.k_prime == k
            t_n = _host_scale(omega, k, epsilon)
            rep.raw_sum = rep.raw_sum * (cl.scale / t_n) ** (2 * int(functional[-1]) - 1)
            rep.scaled_realized = rep.scaled
            rep.scaled = area(omega) ** rep.exponents[0] * rep.raw_sum / k ** rep.exponents[1]
            return rep
        if functional == "eig":
            return partition_sum_eig(omega, k, epsilon, beta, h, kind)
        if functional == "torsion":
            return partition_sum_torsion(omega, k, epsilon, beta, h, kind)
        return sup_functionals(omega, k, epsilon, beta, "eig" if functional == "eig_max" else "torsion", h, kind)

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            return list(ex.map(one, k_list))
    return [one(k) for k in k_list]
