import math
import random

import numpy as np
import pytest

from qhkit import (
    AnalyticBackend,
    ConfigurationError,
    ConnectivityError,
    DiskRegion,
    MembershipError,
    MeshBackend,
    PolygonRegion,
    build_mesh,
    lemma34_check,
    lemma36_check,
    path_qh_length,
    qh_distance,
    qh_distance_exact,
    qh_distance_many,
    qh_length_distance,
)
from qhkit.scenarios import make_region

from conftest import HP_BBOX

LN2 = math.log(2.0)


# ---------------------------------------------------------------------------
# construction contracts
# ---------------------------------------------------------------------------

def test_grading_factor_validation(halfplane):
    with pytest.raises(ConfigurationError):
        build_mesh(halfplane, 0.6, HP_BBOX)
    with pytest.raises(ConfigurationError):
        build_mesh(halfplane, 0.0, HP_BBOX)


def test_unbounded_region_requires_bbox(halfplane):
    with pytest.raises(ConfigurationError):
        build_mesh(halfplane, 0.1)


def test_bbox_missing_the_region_fails():
    disk = DiskRegion(0j, 1.0)
    with pytest.raises(ConfigurationError):
        build_mesh(disk, 0.2, (10.0, 11.0, 10.0, 11.0))


def test_mesh_is_connected_and_positive_delta(hp_mesh_01, pp_mesh_005):
    for mesh in (hp_mesh_01, pp_mesh_005):
        assert mesh.stats["components"] >= 1
        assert np.all(mesh.delta > 0)
        # After largest-component filtering every node reaches every other.
        from scipy.sparse.csgraph import connected_components
        n, _ = connected_components(mesh.graph, directed=False)
        assert n == 1


def test_edge_weight_bracket(hp_mesh_01, pp_mesh_005):
    # w(edge) must land between len/delta_max and len/delta_min with the
    # extrema sampled along the edge (endpoints included).
    rng = random.Random(0)
    for mesh in (hp_mesh_01, pp_mesh_005):
        g = mesh.graph.tocoo()
        idx = rng.sample(range(len(g.data)), 200)
        for k in idx:
            u, v, w = g.row[k], g.col[k], g.data[k]
            a, b = mesh.coords[u], mesh.coords[v]
            L = abs(a - b)
            ds = [mesh.region.boundary_distance(a + (b - a) * t)
                  for t in (0.0, 0.25, 0.5, 0.75, 1.0)]
            assert L / max(ds) * (1 - 1e-12) <= w <= L / min(ds) * (1 + 1e-12)


def test_grading_rule_holds_on_nodes(hp_mesh_01):
    assert np.all(hp_mesh_01.spacing <= hp_mesh_01.grading * hp_mesh_01.delta + 1e-12)


# ---------------------------------------------------------------------------
# oracle agreement
# ---------------------------------------------------------------------------

def test_halfplane_vertical_pair(hp_mesh_005, hp_mesh_01):
    k5 = qh_distance(hp_mesh_005, 1j, 2j).distance
    assert abs(k5 - LN2) / LN2 <= 0.02
    k10 = qh_distance(hp_mesh_01, 1j, 2j).distance
    assert abs(k10 - LN2) / LN2 <= 0.05


def test_punctured_axis_pairs(pp_mesh_005):
    k = qh_distance(pp_mesh_005, 1 + 0j, complex(math.e, 0.0)).distance
    assert abs(k - 1.0) <= 0.02
    k = qh_distance(pp_mesh_005, 1 + 0j, 1j).distance
    assert abs(k - math.pi / 2) / (math.pi / 2) <= 0.02


def test_identical_points_have_zero_distance(hp_mesh_01):
    r = qh_distance(hp_mesh_01, 1 + 1j, 1 + 1j)
    assert r.distance == 0.0
    assert r.node_path == (1 + 1j,)


def test_oracle_values():
    assert qh_distance_exact("halfplane", 1j, 2j) == pytest.approx(LN2, abs=1e-15)
    assert qh_distance_exact("halfplane", 1j, 1 + 1j) == pytest.approx(
        math.acosh(1.5), abs=1e-15)
    assert qh_distance_exact("punctured", 1, -1) == pytest.approx(math.pi, abs=1e-15)
    assert qh_distance_exact("punctured", 1, 1) == 0.0
    with pytest.raises(MembershipError):
        qh_distance_exact("halfplane", 1j, -1j)
    with pytest.raises(MembershipError):
        qh_distance_exact("punctured", 0j, 1j)


def test_mesh_overestimates_oracle(hp_mesh_01, pp_mesh_005, halfplane, punctured):
    # Shortest path over a restricted curve family dominates the infimum.  In
    # the half-plane 1/delta is convex along every chord, so the trapezoid
    # weights only add to the overestimate; in the punctured plane 1/delta is
    # concave near a chord's closest approach to the puncture and quadrature
    # can bias a path downward by O((stencil * grading)^2).
    rng = random.Random(8)
    pairs_hp = [(halfplane.sample_point(rng), halfplane.sample_point(rng))
                for _ in range(20)]
    for (x, y), r in zip(pairs_hp, qh_distance_many(hp_mesh_01, pairs_hp)):
        assert r.distance >= qh_distance_exact("halfplane", x, y) * (1 - 1e-9)
    pairs_pp = [(punctured.sample_point(rng), punctured.sample_point(rng))
                for _ in range(20)]
    quad = (4.0 * pp_mesh_005.grading) ** 2 / 8.0
    for (x, y), r in zip(pairs_pp, qh_distance_many(pp_mesh_005, pairs_pp)):
        assert r.distance >= qh_distance_exact("punctured", x, y) * (1 - quad)


# ---------------------------------------------------------------------------
# metric structure on the mesh
# ---------------------------------------------------------------------------

def test_symmetry_is_bitwise(hp_mesh_01):
    a, b = 0.3 + 1.1j, -0.4 + 1.7j
    assert qh_distance(hp_mesh_01, a, b).distance == qh_distance(hp_mesh_01, b, a).distance


def test_triangle_inequality_on_nodes(hp_mesh_01):
    rng = random.Random(12)
    coords = hp_mesh_01.coords
    ids = [rng.randrange(len(coords)) for _ in range(12)]
    pts = [complex(coords[i]) for i in ids]
    for a, b, c in zip(pts[0::3], pts[1::3], pts[2::3]):
        dab, dbc, dac = (r.distance for r in
                         qh_distance_many(hp_mesh_01, [(a, b), (b, c), (a, c)]))
        assert dac <= dab + dbc + 1e-12


def test_path_qh_length_equals_distance(hp_mesh_01, omega_mesh):
    r = qh_distance(hp_mesh_01, 0.2 + 0.9j, -0.7 + 2.3j)
    assert path_qh_length(hp_mesh_01, r) == r.distance
    r2 = qh_distance(omega_mesh, 0j, complex(1.5, 0.0))
    assert path_qh_length(omega_mesh, r2) == r2.distance


def test_distance_decreases_when_region_grows():
    # Convex ambient: a larger region has larger delta pointwise, so shared
    # edges get smaller qh weight.
    disk = DiskRegion(2j, 1.0)
    hp = make_region("halfplane")
    rng = random.Random(3)
    for _ in range(50):
        z = disk.sample_point(rng)
        w = disk.sample_point(rng)
        if z == w:
            continue
        d_small = disk.boundary_distance(z)
        d_big = hp.boundary_distance(z)
        assert d_small <= d_big + 1e-12
        w_small = abs(z - w) * (1 / disk.boundary_distance(z) + 1 / disk.boundary_distance(w)) / 2
        w_big = abs(z - w) * (1 / hp.boundary_distance(z) + 1 / hp.boundary_distance(w)) / 2
        assert w_big <= w_small + 1e-12


def test_query_point_outside_bbox_raises(pp_mesh_005):
    with pytest.raises(ConnectivityError):
        qh_distance(pp_mesh_005, 6 + 6j, 1 + 0j)


def test_query_point_outside_region_raises(hp_mesh_01):
    with pytest.raises(MembershipError):
        qh_distance(hp_mesh_01, 1 - 1j, 1j)


# ---------------------------------------------------------------------------
# convergence
# ---------------------------------------------------------------------------

def test_halfplane_convergence_trend(halfplane, hp_mesh_005):
    errs = []
    for g in (0.4, 0.2, 0.1):
        mesh = build_mesh(halfplane, g, HP_BBOX)
        k = qh_distance(mesh, 1j, 2j).distance
        errs.append(abs(k - LN2) / LN2)
    errs.append(abs(qh_distance(hp_mesh_005, 1j, 2j).distance - LN2) / LN2)
    # Halving the grading factor should not make things worse (small slack
    # for noise), and the finest level meets the 2 percent budget.
    for coarse, fine in zip(errs, errs[1:]):
        assert fine <= coarse + 0.01
    assert errs[-1] <= 0.02


def test_disk_mesh_matches_radial_oracle():
    # In the unit disk the density depends on |z| alone, so any path from the
    # center has QH length >= integral of d|z|/(1-|z|) and the radial segment
    # attains it: k(0, z) = -log(1 - |z|).  Curved-boundary quadtree check.
    disk = DiskRegion(0j, 1.0)
    mesh = build_mesh(disk, 0.1, max_depth=8)
    for target, rho in ((0.5 + 0j, 0.5), (0.3j, 0.3), (-0.6 + 0j, 0.6)):
        k = qh_distance(mesh, 0j, target).distance
        exact = -math.log(1.0 - rho)
        assert abs(k - exact) / exact <= 0.03


def test_polygon_mesh_builds_and_queries():
    square = PolygonRegion([0j, 2 + 0j, 2 + 2j, 2j])
    mesh = build_mesh(square, 0.15, max_depth=7)
    assert mesh.node_count > 50
    r = qh_distance(mesh, 0.5 + 1j, 1.5 + 1j)
    assert r.distance > 0.0
    assert r.distance == qh_distance(mesh, 1.5 + 1j, 0.5 + 1j).distance


# ---------------------------------------------------------------------------
# length-metric variant
# ---------------------------------------------------------------------------

def test_length_metric_collapses_on_halfplane(halfplane, hp_mesh_01):
    mesh_l = build_mesh(halfplane, 0.1, HP_BBOX, metric="length")
    a, b = 1j, 2j
    assert qh_length_distance(mesh_l, a, b).distance == qh_distance(hp_mesh_01, a, b).distance


def test_length_metric_sandwich_on_omega(omega, omega_mesh, omega_mesh_length):
    rng = random.Random(31)
    pairs = []
    while len(pairs) < 50:
        x = omega.sample_point(rng)
        y = omega.sample_point(rng)
        if abs(x - y) > 1e-9:
            pairs.append((x, y))
    ks = [r.distance for r in qh_distance_many(omega_mesh, pairs)]
    kps = [r.distance for r in qh_distance_many(omega_mesh_length, pairs)]
    c = 5.0
    for k, kp in zip(ks, kps):
        assert k / c <= kp * 1.05
        assert kp <= c * k * 1.05


def test_length_metric_deltas_dominate(omega, omega_mesh, omega_mesh_length):
    # delta <= delta' <= c delta node by node.
    d = omega_mesh.delta
    dp = omega_mesh_length.delta
    assert np.all(d <= dp + 1e-12)
    assert np.all(dp <= 5.0 * d + 1e-9)


# ---------------------------------------------------------------------------
# lemma suites
# ---------------------------------------------------------------------------

def test_lemma34_halfplane_oracle(halfplane):
    report = lemma34_check(halfplane, AnalyticBackend(halfplane), count=200, seed=7)
    assert report.passed, report.violations[:3]


def test_lemma34_punctured_oracle(punctured):
    report = lemma34_check(punctured, AnalyticBackend(punctured), count=200, seed=7)
    assert report.passed, report.violations[:3]


def test_lemma34_omega_mesh(omega, omega_mesh):
    report = lemma34_check(omega, MeshBackend(omega_mesh), count=120, seed=7)
    assert report.passed, report.violations[:3]


def test_lemma36_oracle_domains(halfplane, punctured):
    for region in (halfplane, punctured):
        report = lemma36_check(region, None, None, count=150, seed=7)
        assert report.passed, report.violations[:3]


def test_lemma36_omega(omega, omega_mesh, omega_mesh_length):
    report = lemma36_check(omega, omega_mesh, omega_mesh_length, count=120, seed=7)
    assert report.passed, report.violations[:3]
