"""Robin eigenvalue and torsion on an interval.

The reference interval is I = (-1/2, 1/2). The first eigenfunction is even,
u = cos(sqrt(lam) x) for alpha > 0 and cosh(sqrt(mu) x) with lam = -mu for
alpha < 0, so the eigenvalue solves a scalar transcendental equation.
"""

from __future__ import annotations

import math

import numpy as np

MAX_BISECTION = 200


def _bisect(f, lo: float, hi: float) -> float:
    """Root of a function with f(lo) > 0 > f(hi) or f(lo) < 0 < f(hi)."""
    flo = f(lo)
    for _ in range(MAX_BISECTION):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def eig_interval(alpha: float) -> float:
    """First Robin eigenvalue lam_1(I, alpha) of -u'' on the unit interval."""
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    if alpha == 0.0:
        return 0.0
    if alpha > 0:
        if alpha <= 1.0:
            # s = sqrt(lam) in (0, pi): s sin(s/2) - alpha cos(s/2) increases
            s = _bisect(lambda s: s * math.sin(0.5 * s) - alpha * math.cos(0.5 * s), 0.0, math.pi)
            return s * s
        # near the Dirichlet end write s = pi - 2 d with d in (0, pi/2)
        d = _bisect(lambda d: (math.pi - 2.0 * d) * math.cos(d) - alpha * math.sin(d), 0.0, 0.5 * math.pi)
        return (math.pi - 2.0 * d) ** 2
    # alpha < 0: t tanh(t/2) = -alpha with t = sqrt(mu), lam = -mu
    g = lambda t: t * math.tanh(0.5 * t) + alpha
    hi = max(2.0 * abs(alpha), math.sqrt(10.0))
    while g(hi) <= 0:
        hi *= 2.0
    t = _bisect(g, 0.0, hi)
    return -t * t


def residual(alpha: float, lam: float) -> float:
    """Residual of the defining relation in its well-conditioned form.

    alpha > 0: alpha^2/(lam + alpha^2) = sin^2(sqrt(lam)/2), which stays
    exact up to the Dirichlet limit. alpha < 0: sqrt(mu) tanh(sqrt(mu)/2) = -alpha.
    """
    if alpha == 0:
        return lam
    if alpha > 0:
        return relation_residual(alpha, lam)
    return tan_residual(alpha, lam)


def relation_residual(alpha: float, lam: float) -> float:
    """alpha^2 / (lam + alpha^2) - sin^2(sqrt(lam) / 2), continued to lam < 0."""
    if lam >= 0:
        return alpha * alpha / (lam + alpha * alpha) - math.sin(0.5 * math.sqrt(lam)) ** 2
    mu = -lam
    return alpha * alpha / (alpha * alpha - mu) + math.sinh(0.5 * math.sqrt(mu)) ** 2


def tan_residual(alpha: float, lam: float) -> float:
    """sqrt(lam) tan(sqrt(lam)/2) - alpha (tanh form for lam < 0)."""
    if lam >= 0:
        s = math.sqrt(lam)
        return s * math.tan(0.5 * s) - alpha
    t = math.sqrt(-lam)
    return t * math.tanh(0.5 * t) + alpha


def eig_segment(length: float, beta: float) -> float:
    """lam_1 of (0, length) with Robin parameter beta, via lam_1(I, L beta) / L^2."""
    if length <= 0:
        raise ValueError("interval length must be positive")
    return eig_interval(length * beta) / length**2


def torsion_interval(alpha: float) -> tuple[float, float]:
    """(tau, 1/tau) on I for alpha > 0: tau = 1/12 + 1/(2 alpha)."""
    if not alpha > 0:
        raise ValueError("torsion is only defined here for alpha > 0")
    tau = 1.0 / 12.0 + 0.5 / alpha
    return tau, 1.0 / tau


def torsion_segment_inv(length: float, beta: float) -> float:
    """1/tau on (0, length): 1D scaling gives L^-3 / tau(I, L beta)."""
    if length <= 0:
        raise ValueError("interval length must be positive")
    return torsion_interval(length * beta)[1] / length**3


def small_width_eig_limit(beta: float, w_list) -> np.ndarray:
    """lam_1(I, w beta) / w for each w; tends to 2 beta as w -> 0."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    return np.array([eig_interval(w * beta) / w for w in w_list])


def small_width_torsion_limit(beta: float, w_list) -> np.ndarray:
    """tau^-1(I, w beta) / w for each w; tends to 2 beta as w -> 0."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    return np.array([torsion_interval(w * beta)[1] / w for w in w_list])
