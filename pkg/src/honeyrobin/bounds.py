"""Explicit upper and lower bounds for lam_1 and 1/tau, checked against FEM."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import robin1d, robin2d
from .cheeger import cheeger_closed_form, cheeger_oracle
from .geometry import ConvexPolygon, Direction, area, diameter_directions, perimeter, width

FEM_TOL = 2e-3
N_DIRECTIONS = 360


def eig_upper(P: ConvexPolygon, beta: float) -> float:
    """Constant test function: lam_1 <= beta |dP| / |P| for either sign of beta."""
    if beta == 0:
        raise ValueError("beta must be nonzero")
    return beta * perimeter(P) / area(P)


def eig_lower_sperb(P: ConvexPolygon, beta: float, mu2: float) -> float:
    if not beta > 0:
        raise ValueError("beta must be positive")
    if not mu2 > 0:
        raise ValueError("mu2 must be positive")
    return 1.0 / (1.0 / mu2 + area(P) / (beta * perimeter(P)))


def cheeger_constant(P: ConvexPolygon) -> float:
    """h(P): closed form when it applies, oracle otherwise."""
    res = cheeger_closed_form(P, 1)
    return res.constant if res.valid_closed_form else cheeger_oracle(P, 1).constant


def eig_lower_bossel(P: ConvexPolygon, beta: float, h: float | None = None) -> float:
    if not beta > 0:
        raise ValueError("beta must be positive")
    h = cheeger_constant(P) if h is None else h
    return beta * h - beta * beta


def width_directions(P: ConvexPolygon) -> list[Direction]:
    """Uniform half-circle samples, edge normals and diameter-orthogonal directions."""
    dirs = [Direction.from_angle(math.pi * i / N_DIRECTIONS) for i in range(N_DIRECTIONS)]
    dirs += [Direction.from_vector(nrm) for nrm in P.normals]
    dirs += [d.orthogonal() for d in diameter_directions(P)]
    return dirs


def eig_lower_width(P: ConvexPolygon, beta: float) -> float:
    """Slicing bound lam_1 >= w^-2 lam_1(I, w beta); strongest at the minimal sampled width."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    w = min(width(P, d) for d in width_directions(P))
    return robin1d.eig_interval(w * beta) / (w * w)


def tor_upper(P: ConvexPolygon, beta: float) -> float:
    if beta == 0:
        raise ValueError("beta must be nonzero")
    return beta * perimeter(P) / area(P) ** 2


def tor_lower_keady(P: ConvexPolygon, beta: float, sigma_inf: float) -> float:
    if not beta > 0:
        raise ValueError("beta must be positive")
    if not sigma_inf > 0:
        raise ValueError("sigma_inf must be positive")
    return 1.0 / (sigma_inf + area(P) ** 2 / (beta * perimeter(P)))


def tor_lower_width(P: ConvexPolygon, beta: float) -> float:
    """Slicing bound 1/tau >= w^-3 tau^-1(I, w beta) / proj, maximised over directions.

    w is the width along xi and proj the extent of P along xi-perp (the
    length of the slice parameter range).
    """
    if not beta > 0:
        raise ValueError("beta must be positive")
    best = -math.inf
    for d in width_directions(P):
        w = width(P, d)
        proj = width(P, d.orthogonal())
        best = max(best, robin1d.torsion_interval(w * beta)[1] / (w**3 * proj))
    return best


def tor_lower_cheeger(P: ConvexPolygon, beta: float, h: float | None = None) -> float:
    if not beta > 0:
        raise ValueError("beta must be positive")
    h = cheeger_constant(P) if h is None else h
    return (beta * h - beta * beta) / area(P)


# ----------------------------------------------------------------- reports

EIG_LOWER = ("eig_lower_sperb", "eig_lower_bossel", "eig_lower_width")
TOR_LOWER = ("tor_lower_keady", "tor_lower_width", "tor_lower_cheeger")


@dataclass
class BoundsReport:
    shape: str
    beta: float
    eig_upper: float | None = None
    eig_lower_sperb: float | None = None
    eig_lower_bossel: float | None = None
    eig_lower_width: float | None = None
    tor_upper: float | None = None
    tor_lower_keady: float | None = None
    tor_lower_width: float | None = None
    tor_lower_cheeger: float | None = None
    fem_eig: float | None = None
    fem_torsion_inv: float | None = None
    sandwich_ok: bool = True
    violations: list[str] = field(default_factory=list)

    def check(self, tol: float = FEM_TOL) -> bool:
        self.violations = []
        for fem, upper, lowers in (
            (self.fem_eig, self.eig_upper, EIG_LOWER),
            (self.fem_torsion_inv, self.tor_upper, TOR_LOWER),
        ):
            if fem is None:
                continue
            if upper is not None and fem > upper + tol * abs(upper):
                self.violations.append(f"fem {fem!r} > upper {upper!r}")
            for name in lowers:
                v = getattr(self, name)
                if v is not None and v > fem + tol * abs(fem):
                    self.violations.append(f"{name} {v!r} > fem {fem!r}")
        self.sandwich_ok = not self.violations
        return self.sandwich_ok

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def csv_rows(self, tol: float = FEM_TOL) -> list[list]:
        rows = []
        groups = (("eig_upper", self.fem_eig, True), *((n, self.fem_eig, False) for n in EIG_LOWER),
                  ("tor_upper", self.fem_torsion_inv, True), *((n, self.fem_torsion_inv, False) for n in TOR_LOWER))
        for name, fem, is_upper in groups:
            v = getattr(self, name)
            if v is None:
                continue
            if fem is None:
                ok = ""
            elif is_upper:
                ok = fem <= v + tol * abs(v)
            else:
                ok = v <= fem + tol * abs(fem)
            rows.append([self.shape, self.beta, name, v, fem, ok])
        return rows


CSV_HEADER = ["shape", "beta", "bound_name", "value", "fem", "ok"]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        w.writerows(r.csv_rows())
    return buf.getvalue()


def compute_bounds(P: ConvexPolygon, beta: float, shape: str = "polygon", h: float | None = None,
                   fem: bool = True) -> BoundsReport:
    """All applicable bounds at one beta plus (optionally) the FEM references.

    For beta < 0 only the two upper bounds and the FEM eigenvalue are
    available; the torsion problem is not solved in that regime.
    """
    if beta == 0 or not math.isfinite(beta):
        raise ValueError("beta must be finite and nonzero")
    rep = BoundsReport(shape, beta, eig_upper=eig_upper(P, beta), tor_upper=tor_upper(P, beta))
    if beta > 0:
        hc = cheeger_constant(P)
        rep.eig_lower_bossel = eig_lower_bossel(P, beta, hc)
        rep.eig_lower_width = eig_lower_width(P, beta)
        rep.tor_lower_width = tor_lower_width(P, beta)
        rep.tor_lower_cheeger = tor_lower_cheeger(P, beta, hc)
        if fem:
            rep.eig_lower_sperb = eig_lower_sperb(P, beta, robin2d.neumann_mu2(P, h).extrapolated)
            rep.tor_lower_keady = tor_lower_keady(P, beta, robin2d.sigma_infty(P, h).extrapolated)
            rep.fem_torsion_inv = robin2d.robin_torsion(P, beta, h).extra["tau_inv"]
    if fem:
        rep.fem_eig = robin2d.robin_eig(P, beta, h).extrapolated
    rep.check()
    return rep


@dataclass(frozen=True)
class AsymptoticRow:
    beta: float
    value: float
    ratio: float
    target: float
    deviation: float
    source: str


def asymptotic_check(P: ConvexPolygon, functional: str, betas, h: float | None = None) -> list[AsymptoticRow]:
    """value/beta against P/A (eig) or P/A^2 (torsion) along a beta sequence.

    Torsion at beta < 0 has no solver; those rows carry the upper bound
    (source ``upper_bound``) whose ratio equals the target identically.
    """
    if functional not in ("eig", "torsion"):
        raise ValueError("functional must be 'eig' or 'torsion'")
    A, L = area(P), perimeter(P)
    target = L / A if functional == "eig" else L / A**2
    rows = []
    for b in betas:
        if functional == "eig":
            v, src = robin2d.robin_eig(P, b, h).extrapolated, "fem"
        elif b > 0:
            v, src = robin2d.robin_torsion(P, b, h).extra["tau_inv"], "fem"
        else:
            v, src = tor_upper(P, b), "upper_bound"
        rows.append(AsymptoticRow(b, v, v / b, target, abs(v / b - target), src))
    return rows


def strictly_decreasing(values) -> bool:
    v = np.asarray(values, dtype=float)
    return bool(np.all(np.diff(v) < 0))
