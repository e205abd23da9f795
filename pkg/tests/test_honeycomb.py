import json
import math

import numpy as np
import pytest

from honeyrobin.cheeger import hex_constants, hexagon_cheeger_set
from honeyrobin.geometry import LatticeDoesNotFit, rectangle, rounded_measures, unit_square
from honeyrobin.honeycomb import (
    CSV_HEADER,
    Cluster,
    ClusterError,
    asymptotic_table,
    build_cluster,
    partition_sum_eig,
    partition_sum_perimeter,
    partition_sum_torsion,
    reference_cell,
    reports_to_csv,
    reports_to_json,
    sup_functionals,
    verify,
)
from honeyrobin.robin2d import robin_eig, robin_torsion

SQ = unit_square()
H1, H2 = hex_constants()


def test_single_cell_cluster():
    cl = build_cluster(SQ, 1, 0.5)
    assert cl.k == cl.k_prime == 1
    assert cl.cell_area == pytest.approx(0.5)
    per, ar = rounded_measures(cl.cells[0])
    assert per / ar == pytest.approx(H1 / math.sqrt(cl.cell_area), rel=1e-12)


def test_nominal_infeasible_raises():
    with pytest.raises(LatticeDoesNotFit):
        build_cluster(SQ, 64, 0.1)


def test_shrunk_cluster_verified():
    cl = build_cluster(SQ, 64, 0.1, shrink=True)
    assert len(cl.cells) == 64 and cl.k_prime >= 64
    verify(cl)


def test_verify_detects_overlap_and_escape():
    cl = build_cluster(rectangle(3, 3), 4, 0.2, shrink=True)
    moved = Cluster(cl.container, cl.k, cl.epsilon, cl.reference, cl.scale,
                    cl.centers + np.array([[0.1 * cl.scale, 0.0]] + [[0.0, 0.0]] * 3), cl.k_prime)
    with pytest.raises(ClusterError):
        verify(moved)
    escaped = Cluster(cl.container, cl.k, cl.epsilon, cl.reference, cl.scale, cl.centers - 5.0, cl.k_prime)
    with pytest.raises(ClusterError):
        verify(escaped)


def test_neighbouring_cells_touch_but_do_not_overlap():
    # the rounded cell touches all six sides of its host, so neighbours are tangent
    cl = build_cluster(rectangle(3, 3), 7, 0.05, shrink=True)
    verify(cl)


@pytest.mark.parametrize("k", [1, 4, 16])
def test_perimeter_identity(k):
    cl = build_cluster(rectangle(4, 4), k, 0.05, shrink=True)
    rep = partition_sum_perimeter(cl, 1)
    t = cl.scale
    assert rep.raw_sum == pytest.approx(k * H1 / t, rel=1e-12)
    if cl.k_prime == k:
        assert rep.scaled == pytest.approx(H1 / math.sqrt(0.95), rel=1e-12)
    p2 = partition_sum_perimeter(cl, 2)
    assert p2.exponents == (1.5, 2.5)
    assert p2.scaled > H2 / 0.95**1.5 * (cl.k_prime / k) ** 1.5 - 1e-12


def test_perimeter_table_exact():
    for rep in asymptotic_table(SQ, 1.0, [16, 64, 256], "perimeter_p1"):
        assert rep.scaled == pytest.approx(H1 / math.sqrt(0.95), rel=1e-12)
    p2 = asymptotic_table(SQ, 1.0, [16, 64], "perimeter_p2")
    c = hexagon_cheeger_set(1)
    per, ar = rounded_measures(c)
    for rep in p2:
        assert rep.scaled == pytest.approx(per / ar**2 / 0.95**1.5, rel=1e-12)
        assert rep.scaled > rep.target


def test_placement_invariance():
    cl = build_cluster(rectangle(3, 3), 3, 0.3, shrink=True)
    vals = [robin_eig(c, 1.0, 0.08 * cl.scale).extrapolated for c in cl.cells]
    single = robin_eig(cl.reference.transformed(cl.scale), 1.0, 0.08 * cl.scale).extrapolated
    assert sum(vals) == pytest.approx(3 * single, rel=1e-9)


def test_eig_report_properties():
    k, eps, beta = 256, 0.05, 1.0
    rep = partition_sum_eig(SQ, k, eps, beta, h=0.06)
    t = math.sqrt((1 - eps) / k)
    assert rep.exponents == (0.5, 1.5)
    assert rep.raw_sum <= beta * k * H1 / t
    bossel = k * (beta * H1 / t - beta**2) / k**1.5
    assert bossel <= rep.scaled <= beta * H1 / math.sqrt(1 - eps)
    assert rep.target == pytest.approx(beta * H1 / math.sqrt(1 - eps))
    assert rep.target_uncorrected == pytest.approx(beta * H1)
    assert not rep.feasible and rep.k_prime > k


def test_torsion_single_cell_matches_direct_solve():
    rep = partition_sum_torsion(SQ, 1, 0.5, 1.0, h=0.06)
    t = math.sqrt(0.5)
    cell = hexagon_cheeger_set(2).transformed(t)
    direct = robin_torsion(cell, 1.0, 0.06 * t).extra["tau_inv"]
    assert rep.raw_sum == pytest.approx(direct, rel=1e-6)
    c2 = hexagon_cheeger_set(2)
    per, ar = rounded_measures(c2)
    assert rep.raw_sum <= per / (t**2 * ar) ** 2 * t


def test_sup_equals_sum_for_k1():
    a = sup_functionals(SQ, 1, 0.5, 1.0, "eig", h=0.08)
    b = partition_sum_eig(SQ, 1, 0.5, 1.0, h=0.08)
    assert a.raw_sum == pytest.approx(b.raw_sum)
    assert a.exponents == (0.5, 0.5)
    tor = sup_functionals(SQ, 4, 0.5, 1.0, "torsion", h=0.08)
    assert tor.exponents == (1.5, 1.5)
    assert tor.scaled_printed == pytest.approx(tor.raw_sum * 1.0 / 4**0.5)


def test_table_outputs():
    reps = asymptotic_table(SQ, 1.0, [16, 64], "eig", h=0.08)
    csv_text = reports_to_csv(reps)
    lines = csv_text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 4 and lines[-1].split(",")[1] == "inf"
    data = json.loads(reports_to_json(reps))
    assert [d["k"] for d in data] == [16, 64]
    assert data[1]["deviation"] < data[0]["deviation"]
    with pytest.raises(ValueError):
        asymptotic_table(SQ, 1.0, [64, 16], "eig")


def test_hexagon_cells_option():
    rep = partition_sum_eig(SQ, 16, 0.05, 1.0, h=0.08, kind="hexagon")
    assert rep.extra["cell"] == "hexagon"
    assert reference_cell("hexagon").radius == 0.0
