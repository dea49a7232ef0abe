import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reilly_lab.bodies import build_plane_body, build_sphere_cap
from reilly_lab.dimension import InverseDimension
from reilly_lab.errors import CapOverflow
from reilly_lab.flows import (ConcavitySeries, cap_extension_series,
                              concavity_check, geodesic_extension_measure,
                              hausdorff_points, isoperimetric_checks,
                              latitude_circle, minkowski_sum_support,
                              mixed_area, parallel_normal_flow, polyline_area,
                              quermassintegrals, self_intersects,
                              steiner_fit_residual, weingarten_wave)
from reilly_lab.presets import (disk_body, ellipse_body, random_convex_bodies,
                                wavy_body)
from reilly_lab.trig import TrigPolynomial

TH2 = InverseDimension(0.5, 2)
TH_INF = InverseDimension(0.0, 1)


# ---------------------------------------------------------------------------
# support-function operations


def test_minkowski_sum_disks_homothety():
    disk = disk_body(m=128)
    grown = minkowski_sum_support(disk, disk, 0.7)
    assert grown.area() == pytest.approx(math.pi * 1.7**2, rel=1e-12)
    same = minkowski_sum_support(disk, disk, 0.0)
    np.testing.assert_allclose(same.h, disk.h, atol=1e-14)
    with pytest.raises(ValueError):
        minkowski_sum_support(disk, disk, -0.1)


def test_steiner_polynomial_fit():
    assert steiner_fit_residual(disk_body(), ellipse_body()) <= 1e-10
    assert steiner_fit_residual(wavy_body(), disk_body()) <= 1e-10


def test_mixed_area_symmetry_and_disk_value():
    K, L = wavy_body(), ellipse_body(m=512)
    assert mixed_area(K, L) == pytest.approx(mixed_area(L, K), rel=1e-12)
    disk = disk_body()
    assert mixed_area(disk, disk) == pytest.approx(math.pi, rel=1e-12)


def test_geodesic_extension_measures():
    assert geodesic_extension_measure(disk_body(), 1.0) == pytest.approx(
        4 * math.pi, rel=1e-12)
    cap = build_sphere_cap(math.pi / 3)
    assert geodesic_extension_measure(cap, math.pi / 6) == pytest.approx(
        2 * math.pi, rel=1e-12)
    with pytest.raises(CapOverflow):
        geodesic_extension_measure(cap, math.pi)


def test_extension_area_matches_polygon_oracle():
    body = wavy_body(m=512)
    t = 0.2
    area = geodesic_extension_measure(body, t)
    # dense polygon shoelace oracle on the extended body's boundary points
    grown = minkowski_sum_support(wavy_body(m=16384), disk_body(m=16384), t)
    pts = grown.points()
    x, y = pts[:, 0], pts[:, 1]
    shoelace = 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    assert abs(area - shoelace) <= 1e-6


def test_quermass_triple_disk():
    triple, report = quermassintegrals(disk_body(), TH2)
    assert triple.w_n == pytest.approx(math.pi, abs=1e-10)
    assert triple.w_n_minus_1 == pytest.approx(math.pi, abs=1e-10)
    assert triple.w_n_minus_2 == pytest.approx(math.pi, abs=1e-10)
    assert abs(report.slack) <= 1e-9
    assert report.passed


def test_alexandrov_corpus():
    for body in random_convex_bodies(20, seed=31, m=256):
        _, report = quermassintegrals(body, TH2)
        assert report.slack >= -1e-9
        # N = n = 2 specialization is the planar isoperimetric inequality
        assert report.rhs == pytest.approx(body.perimeter() ** 2, rel=1e-12)
        assert report.lhs == pytest.approx(4 * math.pi * body.area(), rel=1e-10)


# ---------------------------------------------------------------------------
# parallel normal flow: plane


def test_pnf_disk_unit_speed_is_geodesic_extension():
    disk = disk_body(m=512)
    res = parallel_normal_flow(disk, 1.0, 0.5, 1e-3, snapshot_every=500)
    assert res.alive
    radii = np.hypot(*res.states[-1].points.T)
    np.testing.assert_allclose(radii, 1.5, atol=1e-10)
    assert res.normal_drift <= 1e-10
    assert res.series.masses[-1] == pytest.approx(math.pi * 2.25, rel=1e-10)


def test_pnf_matches_minkowski_oracle():
    disk = disk_body(m=256)
    phi = TrigPolynomial((1.0, 0.0, 0.12))
    speed_body = build_plane_body(phi, m=256)
    res = parallel_normal_flow(disk, phi, 0.5, 1e-3, snapshot_every=10**9)
    target = minkowski_sum_support(disk, speed_body, 0.5)
    assert hausdorff_points(res.states[-1].points, target.points()) <= 1e-5
    assert res.normal_drift <= 1e-6


def test_pnf_measure_monotone_for_positive_speed():
    res = parallel_normal_flow(wavy_body(m=256), 1.0, 0.3, 2e-3,
                               snapshot_every=10**9)
    assert np.all(np.diff(res.series.masses) > 0.0)


def test_pnf_death_reported_not_raised():
    # speed 1 + 0.6 cos 2t drives h + h'' negative at t = 1/0.8, inside
    # the run horizon: the flow must stop and report, never raise
    disk = disk_body(m=128)
    res = parallel_normal_flow(disk, TrigPolynomial((1.0, 0.0, 0.6)), 1.5,
                               2e-3, snapshot_every=10**9)
    assert not res.alive
    assert res.death_reason == "curvature-floor"
    assert not res.states[-1].alive
    assert res.series.times[-1] < 1.5


def test_pnf_normals_stay_unit():
    res = parallel_normal_flow(wavy_body(m=128), 1.0, 0.2, 2e-3,
                               snapshot_every=25)
    for state in res.states:
        np.testing.assert_allclose(np.hypot(*state.normals.T), 1.0,
                                   atol=1e-10)


def test_self_intersection_detector():
    square = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    assert not self_intersects(square)
    bowtie = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
    assert self_intersects(bowtie)


# ---------------------------------------------------------------------------
# parallel normal flow: sphere


def test_pnf_sphere_cap_extension():
    lat = latitude_circle(math.pi / 3, 256)
    res = parallel_normal_flow(lat, 1.0, 0.5, 1e-3, snapshot_every=10**9)
    exact = 2 * math.pi * (1 - math.cos(math.pi / 3 + 0.5))
    assert res.series.masses[-1] == pytest.approx(exact, abs=1e-6)
    assert res.normal_drift <= 1e-5
    # markers stay on the sphere
    np.testing.assert_allclose(
        np.linalg.norm(res.states[-1].points, axis=1), 1.0, atol=1e-12)


def test_pnf_sphere_nonconstant_speed_keeps_normals_parallel():
    lat = latitude_circle(math.pi / 3, 256)
    phi = TrigPolynomial((1.0, 0.1))
    res = parallel_normal_flow(lat, phi, 0.5, 1e-3, snapshot_every=10**9)
    assert res.alive
    assert res.normal_drift <= 1e-5
    gap = res.diagnostics["area_estimator_gap"]
    assert gap <= 1e-6      # Gauss-Bonnet vs azimuthal band quadrature


# ---------------------------------------------------------------------------
# Weingarten wave


def test_weingarten_disk_constant_speed_fixed_point():
    res = weingarten_wave(disk_body(m=128), 1.0, 0.3, 2e-4)
    assert res.alive
    g = res.series.transformed()
    second = np.abs(g[2:] - 2 * g[1:-1] + g[:-2])
    assert np.max(second) <= 1e-8
    assert res.diagnostics["min_phi"] == pytest.approx(1.0, abs=1e-10)


def test_weingarten_disk_perturbed_concave():
    res = weingarten_wave(disk_body(m=128), TrigPolynomial((1.0, 0.0, 0.2)),
                          0.3, 2e-4)
    assert res.alive
    assert res.diagnostics["min_phi"] > 0.0
    rep = concavity_check(res.series)
    assert rep.passed
    assert rep.lhs <= 1e-6


def test_weingarten_ellipse_stays_convex():
    res = weingarten_wave(ellipse_body(m=128), 1.0, 0.3, 2e-4)
    assert res.alive
    assert concavity_check(res.series).passed
    # positive speed keeps the enclosed measure growing
    assert np.all(np.diff(res.series.masses) > 0.0)


def test_weingarten_two_resolution_consistency():
    coarse = weingarten_wave(disk_body(m=64),
                             TrigPolynomial((1.0, 0.0, 0.2)), 0.2, 4e-4)
    fine = weingarten_wave(disk_body(m=128),
                           TrigPolynomial((1.0, 0.0, 0.2)), 0.2, 2e-4)
    assert abs(coarse.series.masses[-1] - fine.series.masses[-1]) <= 1e-6


# ---------------------------------------------------------------------------
# concavity series


def test_concavity_quadratic_mass_is_linear_after_transform():
    t = np.linspace(0.0, 1.0, 51)
    series = ConcavitySeries(t, math.pi * (1 + t) ** 2, TH2)
    rep = concavity_check(series)
    assert rep.passed
    assert abs(rep.lhs) <= 1e-12


def test_concavity_log_transform_at_theta_zero():
    t = np.linspace(0.0, 1.0, 51)
    series = ConcavitySeries(t, math.pi * (1 + t) ** 2, TH_INF)
    rep = concavity_check(series)
    assert rep.passed
    assert rep.params["min_second_difference"] < 0.0


def test_concavity_cap_series_strictly_negative():
    series = cap_extension_series(build_sphere_cap(math.pi / 3), 1.0, 1e-2)
    rep = concavity_check(series)
    assert rep.passed
    g = series.transformed()
    d2 = g[2:] - 2 * g[1:-1] + g[:-2]
    assert np.max(d2) < 0.0    # analytic series is strictly concave


def test_concavity_rejects_bad_series():
    with pytest.raises(ValueError):
        ConcavitySeries(np.array([0.0, 0.1, 0.3]), np.ones(3), TH2)
    with pytest.raises(ValueError):
        ConcavitySeries(np.array([0.0, 0.1]), np.array([1.0, -1.0]), TH2)


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=0.05, max_value=2.0),
       st.floats(min_value=0.05, max_value=2.0))
def test_concavity_detects_convex_series(a, b):
    # masses exp(a t) + b are log-convex: the theta = 0 check must fail
    t = np.linspace(0.0, 1.0, 21)
    masses = np.exp(a * t) + b
    series = ConcavitySeries(t, masses, TH_INF)
    rep = concavity_check(series)
    assert rep.lhs > 0.0
    assert not rep.passed


# ---------------------------------------------------------------------------
# isoperimetric comparison


def test_isoperimetric_disk_disk_equalities():
    checks = {c.name: c for c in
              isoperimetric_checks(disk_body(), disk_body(), TH2)}
    hom = checks["isoperimetric-homogeneous-bound"]
    assert hom.lhs == pytest.approx(2 * math.pi, abs=1e-6)
    assert hom.rhs == pytest.approx(2 * math.pi, abs=1e-6)
    mono = checks["isoperimetric-profile-monotone"]
    assert abs(mono.lhs) <= 1e-9
    # I(v)^2 / v is the constant 4 pi for disks
    assert mono.params["ratio_first"] == pytest.approx(4 * math.pi, rel=1e-10)
    assert mono.params["ratio_last"] == pytest.approx(4 * math.pi, rel=1e-10)


def test_isoperimetric_ellipse_disk_strict():
    checks = isoperimetric_checks(ellipse_body(), disk_body(), TH2)
    for c in checks:
        assert c.passed, c.name
    named = {c.name: c for c in checks}
    assert named["isoperimetric-boundary-measure"].slack > 1e-4
    assert named["isoperimetric-homogeneous-bound"].slack > 1e-3
    assert named["isoperimetric-profile-monotone"].lhs < 0.0


def test_polyline_area_spectral_accuracy():
    disk = disk_body(m=64)
    assert polyline_area(disk.points(), disk.d_angle) == pytest.approx(
        math.pi, abs=1e-12)
