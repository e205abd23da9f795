"""Command-line entry point: ``honeyrobin {cheeger,gamma,bounds,honeycomb,fk-scan}``.

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 a checked
property was violated (results are still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import bounds, cheeger, honeycomb
from .geometry import (
    ConvexPolygon,
    GeometryError,
    LatticeDoesNotFit,
    load_polygon,
    random_convex_polygon,
    rectangle,
    regular_ngon,
    unit_square,
)
from .robin2d import MeshError, SolverError

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_PROPERTY = 0, 2, 3, 4
COMMANDS = ("cheeger", "gamma", "bounds", "honeycomb", "fk-scan")
FK_TOL = 1e-10
CHEEGER_TOL = 1e-8


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    shape: str | None = None
    polygon_file: str | None = None
    beta: tuple[float, ...] = ()
    mesh_h: float | None = None
    k_list: tuple[int, ...] = ()
    epsilon: float = 0.05
    p: int = 1
    functional: str = "eig"
    n_range: tuple[int, int] = (3, 10)
    count: int = 500
    seed: int = 42
    jobs: int = 1
    fmt: str = "csv"
    out: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        if self.mesh_h is not None and not self.mesh_h > 0:
            raise ConfigError("--mesh-h must be positive")
        if self.command in ("cheeger", "bounds", "honeycomb"):
            self.polygon()
        if self.command == "cheeger" and self.p not in (1, 2):
            raise ConfigError("--p must be 1 or 2")
        if self.command in ("bounds", "honeycomb"):
            if not self.beta:
                raise ConfigError("--beta is required")
            if any(b == 0 or not math.isfinite(b) for b in self.beta):
                raise ConfigError("--beta values must be finite and nonzero")
        if self.command == "honeycomb":
            if len(self.beta) != 1 or self.beta[0] <= 0:
                raise ConfigError("honeycomb takes a single positive --beta")
            if not self.k_list or any(k < 1 for k in self.k_list):
                raise ConfigError("--k-list must list positive integers")
            if any(b <= a for a, b in zip(self.k_list, self.k_list[1:])):
                raise ConfigError("--k-list must be strictly increasing")
            if not 0 < self.epsilon < 1:
                raise ConfigError("--epsilon must lie in (0, 1)")
            if self.functional not in honeycomb.FUNCTIONALS:
                raise ConfigError(f"--functional must be one of {honeycomb.FUNCTIONALS}")
        if self.command in ("gamma", "fk-scan"):
            lo, hi = self.n_range
            if lo < 3 or hi < lo:
                raise ConfigError("--n-range must be a:b with 3 <= a <= b")
        if self.command == "fk-scan" and self.count < 1:
            raise ConfigError("--count must be >= 1")

    def polygon(self) -> ConvexPolygon:
        if self.polygon_file is not None:
            return load_polygon(self.polygon_file)
        if self.shape is None:
            raise ConfigError("--shape or --polygon-file is required")
        return parse_shape(self.shape)

    @property
    def shape_id(self) -> str:
        return self.shape if self.polygon_file is None else os.path.basename(self.polygon_file)


def parse_shape(text: str) -> ConvexPolygon:
    """Builtin names (square, regular:n, rectangle:a:b) or inline JSON."""
    s = text.strip()
    if s.startswith(("{", "[")):
        return load_polygon(s)
    parts = s.split(":")
    try:
        if parts == ["square"]:
            return unit_square()
        if parts[0] == "regular" and len(parts) == 2:
            return regular_ngon(int(parts[1]), 1.0)
        if parts[0] == "rectangle" and len(parts) == 3:
            return rectangle(float(parts[1]), float(parts[2]))
    except ValueError as exc:
        raise ConfigError(f"bad shape {text!r}: {exc}") from exc
    raise ConfigError(f"unknown shape {text!r}")


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip())


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _range(text: str) -> tuple[int, int]:
    a, _, b = text.partition(":")
    return int(a), int(b or a)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="honeyrobin", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--shape", help="square | regular:n | rectangle:a:b | inline JSON vertex list")
    ap.add_argument("--polygon-file", help="JSON file with a vertex list or {'vertices': [...]}")
    ap.add_argument("--beta", type=_floats, default=(), help="comma-separated Robin parameters")
    ap.add_argument("--mesh-h", type=float, default=None, help="coarse FEM edge length (fine = h/2)")
    ap.add_argument("--k-list", type=_ints, default=(16, 64, 256, 1024, 4096))
    ap.add_argument("--epsilon", type=float, default=0.05)
    ap.add_argument("--p", type=int, default=1)
    ap.add_argument("--functional", default="eig", help="honeycomb functional: " + ", ".join(honeycomb.FUNCTIONALS))
    ap.add_argument("--n-range", type=_range, default=None, help="a:b (gamma default 3:64, fk-scan 3:10)")
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    ap.add_argument("--out", default=None, help="output file (default stdout)")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    n_range = ns.n_range or ((3, 64) if ns.command == "gamma" else (3, 10))
    return RunConfig(ns.command, ns.shape, ns.polygon_file, ns.beta, ns.mesh_h, ns.k_list, ns.epsilon,
                     ns.p, ns.functional, n_range, ns.count, ns.seed, ns.jobs, ns.fmt, ns.out)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- commands


def cmd_cheeger(cfg: RunConfig) -> tuple[str, bool]:
    P = cfg.polygon()
    closed, oracle = cheeger.cheeger_both(P, cfg.p)
    agree = abs(closed.constant - oracle.constant) <= CHEEGER_TOL * oracle.constant
    ok = agree or not closed.valid_closed_form
    if cfg.fmt == "json":
        payload = {"shape": cfg.shape_id, "closed_form": closed.to_dict(), "oracle": oracle.to_dict(),
                   "agree": agree}
        return json.dumps(payload, indent=2) + "\n", ok
    header = ["shape", "p", "constant", "radius", "valid_closed_form", "oracle_constant", "oracle_radius", "agree"]
    row = [cfg.shape_id, cfg.p, repr(closed.constant), repr(closed.radius), closed.valid_closed_form,
           repr(oracle.constant), repr(oracle.radius), agree]
    return _csv(header, [row]), ok


def cmd_gamma(cfg: RunConfig) -> tuple[str, bool]:
    lo, hi = cfg.n_range
    table = cheeger.gamma_table(range(lo, hi + 1))
    powers = [g for _, _, g in table]
    ok = all(b < a for a, b in zip(powers, powers[1:]))
    if cfg.fmt == "json":
        payload = {"rows": [{"n": n, "gamma": g, "gamma_pow": q} for n, g, q in table], "decreasing": ok}
        return json.dumps(payload, indent=2) + "\n", ok
    return _csv(["n", "gamma", "gamma_pow"], [[n, repr(g), repr(q)] for n, g, q in table]), ok


def _map(fn, items, jobs):
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def cmd_bounds(cfg: RunConfig) -> tuple[str, bool]:
    P = cfg.polygon()
    reps = _map(lambda b: bounds.compute_bounds(P, b, cfg.shape_id, cfg.mesh_h), cfg.beta, cfg.jobs)
    ok = all(r.sandwich_ok for r in reps)
    if cfg.fmt == "json":
        return json.dumps([r.to_dict() for r in reps], indent=2) + "\n", ok
    return bounds.reports_to_csv(reps), ok


def cmd_honeycomb(cfg: RunConfig) -> tuple[str, bool]:
    P = cfg.polygon()
    reps = honeycomb.asymptotic_table(P, cfg.beta[0], cfg.k_list, cfg.functional, cfg.epsilon, cfg.mesh_h,
                                      jobs=cfg.jobs)
    if cfg.fmt == "json":
        return honeycomb.reports_to_json(reps) + "\n", True
    return honeycomb.reports_to_csv(reps), True


def fk_polygons(count: int, n_range: tuple[int, int], seed: int) -> list[ConvexPolygon]:
    """Seeded random convex polygons with n drawn uniformly from n_range."""
    rng = np.random.default_rng(seed)
    return [random_convex_polygon(rng, int(rng.integers(n_range[0], n_range[1] + 1))) for _ in range(count)]


def cmd_fk_scan(cfg: RunConfig) -> tuple[str, bool]:
    polys = fk_polygons(cfg.count, cfg.n_range, cfg.seed)
    deficits = _map(cheeger.fk_deficit, polys, cfg.jobs)
    dmin = min(deficits)
    ok = dmin >= -FK_TOL
    if cfg.fmt == "json":
        payload = {
            "count": cfg.count, "seed": cfg.seed, "n_range": list(cfg.n_range),
            "min_deficit": dmin, "max_deficit": max(deficits), "mean_deficit": float(np.mean(deficits)),
            "argmin": int(np.argmin(deficits)), "ok": ok,
            "rows": [{"index": i, "n": P.n, "deficit": d} for i, (P, d) in enumerate(zip(polys, deficits))],
        }
        return json.dumps(payload, indent=2) + "\n", ok
    rows = [[i, P.n, repr(d)] for i, (P, d) in enumerate(zip(polys, deficits))]
    return _csv(["index", "n", "deficit"], rows), ok


HANDLERS = {"cheeger": cmd_cheeger, "gamma": cmd_gamma, "bounds": cmd_bounds, "honeycomb": cmd_honeycomb,
            "fk-scan": cmd_fk_scan}


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    # write to a sibling temp file and rename so a failure leaves nothing behind
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".honeyrobin-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
    except (ConfigError, GeometryError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        text, ok = HANDLERS[cfg.command](cfg)
    except LatticeDoesNotFit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SolverError, MeshError, cheeger.CheegerError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _write(text, cfg.out)
    if not ok:
        print("property violation detected", file=sys.stderr)
        return EXIT_PROPERTY
    return EXIT_OK


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
