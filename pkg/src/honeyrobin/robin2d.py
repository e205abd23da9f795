"""P1 finite elements for Robin, Neumann and torsion problems on convex domains.

Domains are convex polygons or rounded bodies. Meshes start from a fan
triangulation and are refined uniformly; on rounded bodies new boundary
nodes are pushed onto the curved boundary. Every public solve runs on two
levels (h and h/2) and reports a Richardson extrapolation with exponent 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh, splu

from .geometry import ConvexPolygon, RoundedBody, diameter, polygonize

MAX_NODES = 500_000


class MeshError(ValueError):
    pass


class SolverError(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class Mesh:
    nodes: np.ndarray
    triangles: np.ndarray
    boundary_edges: np.ndarray
    h: float
    domain: ConvexPolygon | RoundedBody | None = None

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def triangle_areas(self) -> np.ndarray:
        p = self.nodes[self.triangles]
        e1 = p[:, 1] - p[:, 0]
        e2 = p[:, 2] - p[:, 0]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    @property
    def area(self) -> float:
        return float(self.triangle_areas.sum())

    @property
    def boundary_length(self) -> float:
        e = self.nodes[self.boundary_edges]
        return float(np.linalg.norm(e[:, 1] - e[:, 0], axis=1).sum())

    @property
    def max_edge(self) -> float:
        p = self.nodes[self.triangles]
        return float(max(np.linalg.norm(p[:, i] - p[:, (i + 1) % 3], axis=1).max() for i in range(3)))

    def max_angle(self) -> float:
        return _max_angle(self.nodes, self.triangles)


def _max_angle(nodes: np.ndarray, tris: np.ndarray) -> float:
    p = nodes[tris]
    worst = 0.0
    for i in range(3):
        a = p[:, (i + 1) % 3] - p[:, i]
        b = p[:, (i + 2) % 3] - p[:, i]
        c = np.einsum("ij,ij->i", a, b) / (np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1))
        worst = max(worst, float(np.arccos(np.clip(c, -1, 1)).max()))
    return worst


def _fan(boundary: np.ndarray, apex: int | None):
    m = len(boundary)
    if apex is None:
        a = np.roll(boundary, -1, axis=0)
        cr = boundary[:, 0] * a[:, 1] - boundary[:, 1] * a[:, 0]
        c = ((boundary + a) * cr[:, None]).sum(axis=0) / (3.0 * cr.sum())
        nodes = np.vstack([c, boundary])
        tris = np.array([[0, 1 + i, 1 + (i + 1) % m] for i in range(m)])
        bnd = np.array([[1 + i, 1 + (i + 1) % m] for i in range(m)])
        return nodes, tris, bnd
    order = np.roll(np.arange(m), -apex)
    nodes = boundary[order]
    tris = np.array([[0, i, i + 1] for i in range(1, m - 1)])
    bnd = np.array([[i, (i + 1) % m] for i in range(m)])
    return nodes, tris, bnd


def _initial_mesh(domain):
    if isinstance(domain, RoundedBody):
        if domain.radius == 0:
            return _initial_mesh(ConvexPolygon(domain.core))
        boundary = polygonize(domain, 8 if len(domain.core) == 1 else 2).vertices
        return _fan(boundary, None)
    boundary = domain.vertices
    best = None
    for apex in [None] + list(range(len(boundary))):
        cand = _fan(boundary, apex)
        ang = _max_angle(cand[0], cand[1])
        if best is None or ang < best[0] - 1e-9:
            best = (ang, cand)
    return best[1]


def _refine_arrays(nodes, tris, bnd, domain):
    edges = np.sort(np.vstack([tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [2, 0]]]), axis=1)
    uniq, inv = np.unique(edges, axis=0, return_inverse=True)
    inv = inv.ravel()
    nt = len(tris)
    mid = nodes.shape[0] + np.arange(len(uniq))
    new_nodes = np.vstack([nodes, 0.5 * (nodes[uniq[:, 0]] + nodes[uniq[:, 1]])])
    m01, m12, m20 = mid[inv[:nt]], mid[inv[nt:2 * nt]], mid[inv[2 * nt:]]
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    new_tris = np.vstack([
        np.column_stack([a, m01, m20]),
        np.column_stack([m01, b, m12]),
        np.column_stack([m20, m12, c]),
        np.column_stack([m01, m12, m20]),
    ])
    # boundary edges keep their orientation: (i, j) -> (i, m), (m, j)
    lookup = {tuple(e): k for k, e in enumerate(uniq)}
    bm = np.array([mid[lookup[(min(i, j), max(i, j))]] for i, j in bnd])
    new_bnd = np.empty((2 * len(bnd), 2), dtype=int)
    new_bnd[0::2] = np.column_stack([bnd[:, 0], bm])
    new_bnd[1::2] = np.column_stack([bm, bnd[:, 1]])
    if isinstance(domain, RoundedBody) and domain.radius > 0:
        for k in bm:
            new_nodes[k] = domain.boundary_point(new_nodes[k])
    return new_nodes, new_tris, new_bnd


def triangulate(domain, h: float, max_nodes: int = MAX_NODES) -> Mesh:
    """Fan triangulation refined until the longest edge is at most 1.5 h."""
    if h <= 0:
        raise MeshError("h must be positive")
    poly = domain if isinstance(domain, ConvexPolygon) else polygonize(domain, 8)
    if h >= diameter(poly)[0]:
        raise MeshError("h must be smaller than the diameter")
    nodes, tris, bnd = _initial_mesh(domain)
    mesh = Mesh(nodes, tris, bnd, h, domain)
    while mesh.max_edge > 1.5 * h:
        # after refinement: N + E new nodes, E ~ 1.5 T
        if mesh.n_nodes + 1.5 * len(mesh.triangles) + len(mesh.boundary_edges) > max_nodes:
            raise MeshError(f"node budget {max_nodes} exceeded; increase h")
        mesh = refine(mesh)
        object.__setattr__(mesh, "h", h)
    return mesh


def refine(mesh: Mesh) -> Mesh:
    """Uniform red refinement (each triangle split in four); halves h."""
    n, t, b = _refine_arrays(mesh.nodes, mesh.triangles, mesh.boundary_edges, mesh.domain)
    return Mesh(n, t, b, 0.5 * mesh.h, mesh.domain)


def export_mesh(mesh: Mesh, path) -> None:
    """ASCII dump: counts header, then node, triangle and boundary-edge lines."""
    with open(path, "w") as fh:
        fh.write(f"{mesh.n_nodes} {len(mesh.triangles)} {len(mesh.boundary_edges)}\n")
        for x, y in mesh.nodes:
            fh.write(f"{x!r} {y!r}\n")
        for a, b, c in mesh.triangles:
            fh.write(f"{a} {b} {c}\n")
        for a, b in mesh.boundary_edges:
            fh.write(f"{a} {b}\n")


# ------------------------------------------------------------- assembly


_MLOC = np.array([[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]]) / 12.0


class Discretization:
    """Assembled P1 matrices on one mesh: stiffness K, mass M, boundary mass B, load F."""

    def __init__(self, mesh: Mesh):
        self.mesh = mesh
        nodes, tris = mesh.nodes, mesh.triangles
        n = mesh.n_nodes
        p = nodes[tris]
        area = mesh.triangle_areas
        if np.any(area <= 1e-16 * area.sum()):
            raise MeshError("degenerate or negatively oriented triangle")
        # gradients of barycentric coordinates
        e = np.stack([p[:, 2] - p[:, 1], p[:, 0] - p[:, 2], p[:, 1] - p[:, 0]], axis=1)
        grad = np.stack([-e[..., 1], e[..., 0]], axis=-1) / (2.0 * area[:, None, None])
        kloc = area[:, None, None] * np.einsum("tik,tjk->tij", grad, grad)
        mloc = area[:, None, None] * _MLOC[None]
        rows = np.repeat(tris, 3, axis=1).ravel()
        cols = np.tile(tris, (1, 3)).ravel()
        self.K = sp.csr_matrix((kloc.ravel(), (rows, cols)), shape=(n, n))
        self.M = sp.csr_matrix((mloc.ravel(), (rows, cols)), shape=(n, n))
        be = mesh.boundary_edges
        ell = np.linalg.norm(nodes[be[:, 1]] - nodes[be[:, 0]], axis=1)
        bloc = ell[:, None, None] * np.array([[2.0, 1.0], [1.0, 2.0]])[None] / 6.0
        brows = np.repeat(be, 2, axis=1).ravel()
        bcols = np.tile(be, (1, 2)).ravel()
        self.B = sp.csr_matrix((bloc.ravel(), (brows, bcols)), shape=(n, n))
        self.F = np.asarray(self.M.sum(axis=1)).ravel()
        self.area = float(area.sum())
        self.boundary_length = float(ell.sum())
        # diagonal bounds B <= DB, M >= DM for a guaranteed spectral lower bound
        db = np.zeros(n)
        np.add.at(db, be.ravel(), np.repeat(ell / 2.0, 2))
        dm = np.zeros(n)
        np.add.at(dm, tris.ravel(), np.repeat(area / 12.0, 3))
        self._trace_ratio = float(np.max(db / dm))

    def _v0(self) -> np.ndarray:
        return np.random.default_rng(12345).uniform(0.5, 1.5, self.mesh.n_nodes)

    def operator(self, beta: float):
        return (self.K + beta * self.B).tocsc()

    def robin_eig(self, beta: float) -> tuple[float, np.ndarray, float]:
        """Smallest eigenpair of (K + beta B) x = lam M x by shift-invert Lanczos.

        The shift sits strictly below the spectrum: -1 + min(0, beta P/A)
        for beta >= 0, and beta * max(DB/DM) - 1 for beta < 0, where
        DB >= B and DM <= M are diagonal bounds (K >= 0).
        """
        A = self.operator(beta)
        if beta >= 0:
            sigma = -1.0
        else:
            sigma = beta * self._trace_ratio * (1.0 + 1e-6) - 1.0
        try:
            vals, vecs = eigsh(A, k=1, M=self.M.tocsc(), sigma=sigma, which="LM", v0=self._v0(), tol=0.0)
        except Exception as exc:  # ARPACK non-convergence
            raise SolverError(f"eigensolver failed: {exc}") from exc
        x = vecs[:, 0]
        if x.sum() < 0:
            x = -x
        lam = float(x @ (A @ x) / (x @ (self.M @ x)))
        res = np.linalg.norm(A @ x - lam * (self.M @ x)) / (_norm_inf(A) * np.linalg.norm(x))
        return lam, x, float(res)

    def neumann_mu2(self) -> tuple[float, np.ndarray, float]:
        """First nonzero Neumann eigenvalue; the constant mode (eigenvalue 0) is discarded."""
        K = self.K.tocsc()
        try:
            vals, vecs = eigsh(K, k=3, M=self.M.tocsc(), sigma=-1.0, which="LM", v0=self._v0(), tol=0.0)
        except Exception as exc:
            raise SolverError(f"eigensolver failed: {exc}") from exc
        order = np.argsort(vals)
        # the zero eigenvalue itself is only resolved to ~eps * cond, so check the mode shape
        x0 = vecs[:, order[0]]
        if np.std(x0) > 1e-6 * abs(np.mean(x0)) or vals[order[0]] > 1e-6 * vals[order[1]]:
            raise SolverError("constant Neumann mode not found")
        x = vecs[:, order[1]]
        mu = float(x @ (K @ x) / (x @ (self.M @ x)))
        res = np.linalg.norm(K @ x - mu * (self.M @ x)) / (_norm_inf(K) * np.linalg.norm(x))
        return mu, x, float(res)

    def robin_torsion(self, beta: float) -> tuple[float, np.ndarray, float]:
        """tau = int u with (K + beta B) u = F; beta must be positive."""
        if not beta > 0:
            raise ValueError("Robin torsion is only solved for beta > 0")
        A = self.operator(beta)
        u = splu(A).solve(self.F)
        res = np.linalg.norm(A @ u - self.F) / (_norm_inf(A) * np.linalg.norm(u))
        return float(self.F @ u), u, float(res)

    def sigma_infty(self) -> tuple[float, np.ndarray, float]:
        """int u for -lap u = 1, du/dn = -|E|/|dE|, int_{dE} u = 0 (bordered system)."""
        n = self.mesh.n_nodes
        b = np.asarray(self.B.sum(axis=1)).ravel()
        flux = self.area / self.boundary_length
        rhs = self.F - flux * b
        compat = abs(rhs.sum()) / self.area
        if compat > 1e-10:
            raise SolverError(f"Neumann data incompatible ({compat:.2e})")
        S = sp.bmat([[self.K, sp.csr_matrix(b[:, None])], [sp.csr_matrix(b[None, :]), None]]).tocsc()
        sol = splu(S).solve(np.append(rhs, 0.0))
        u = sol[:n]
        res = np.linalg.norm(S @ sol - np.append(rhs, 0.0)) / (_norm_inf(S) * np.linalg.norm(sol))
        return float(self.F @ u), u, float(res)


def _norm_inf(A) -> float:
    return float(abs(A).sum(axis=1).max())


# ------------------------------------------------------- two-level solves


@dataclass
class SolveReport:
    quantity: str
    value: float
    mesh_h: float
    refinement_pair: tuple[float, float]
    extrapolated: float
    residual: float
    n_nodes: int
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "value": self.value,
            "mesh_h": self.mesh_h,
            "refinement_pair": list(self.refinement_pair),
            "extrapolated": self.extrapolated,
            "residual": self.residual,
            "n_nodes": self.n_nodes,
            **self.extra,
        }


def richardson(coarse: float, fine: float) -> float:
    return fine + (fine - coarse) / 3.0


_CACHE: dict = {}


def _domain_key(domain) -> tuple:
    if isinstance(domain, RoundedBody):
        return ("rb", domain.core.tobytes(), domain.radius)
    return ("poly", domain.vertices.tobytes())


def discretizations(domain, h: float, max_nodes: int = MAX_NODES) -> tuple[Discretization, Discretization]:
    """Coarse (h) and fine (h/2) discretizations, memoised per domain and h."""
    key = (_domain_key(domain), h, max_nodes)
    if key not in _CACHE:
        coarse = triangulate(domain, h, max_nodes)
        fine = refine(coarse)
        if fine.n_nodes > max_nodes:
            raise MeshError(f"node budget {max_nodes} exceeded; increase h")
        if len(_CACHE) > 16:
            _CACHE.clear()
        _CACHE[key] = (Discretization(coarse), Discretization(fine))
    return _CACHE[key]


def default_h(domain) -> float:
    poly = domain if isinstance(domain, ConvexPolygon) else polygonize(domain, 8)
    return diameter(poly)[0] / 24.0


def _two_level(quantity: str, domain, h, fn) -> SolveReport:
    h = default_h(domain) if h is None else h
    dc, df = discretizations(domain, h)
    vc, _, rc = fn(dc)
    vf, _, rf = fn(df)
    return SolveReport(quantity, vf, h, (vc, vf), richardson(vc, vf), max(rc, rf), df.mesh.n_nodes)


def robin_eig(domain, beta: float, h: float | None = None) -> SolveReport:
    """lam_1(domain, beta) for either sign of beta."""
    if beta == 0 or not math.isfinite(beta):
        raise ValueError("beta must be finite and nonzero")
    return _two_level("lambda_1", domain, h, lambda d: d.robin_eig(beta))


def robin_torsion(domain, beta: float, h: float | None = None) -> SolveReport:
    """Robin torsional rigidity tau(domain, beta), beta > 0; see ``.extra['tau_inv']``."""
    if not beta > 0:
        raise ValueError("Robin torsion requires beta > 0 (beta < 0 is a free-boundary problem)")
    rep = _two_level("tau", domain, h, lambda d: d.robin_torsion(beta))
    rep.extra["tau_inv"] = 1.0 / rep.extrapolated
    rep.extra["tau_inv_pair"] = [1.0 / v for v in rep.refinement_pair]
    return rep


def neumann_mu2(domain, h: float | None = None) -> SolveReport:
    return _two_level("mu_2", domain, h, lambda d: d.neumann_mu2())


def sigma_infty(domain, h: float | None = None) -> SolveReport:
    return _two_level("sigma_infty", domain, h, lambda d: d.sigma_infty())
