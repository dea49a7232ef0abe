"""Geometric evolutions with concavity and isoperimetric monitoring.

The Parallel Normal Flow moves each Lagrangian marker with velocity
phi * nu + II^{-1} grad_Sigma(phi), where the speed phi is fixed per
trajectory for all time.  Normals then stay parallel along trajectories,
and in the plane the flow reproduces support-function Minkowski
summation, which provides an independent oracle.  Marker geometry is
recomputed from the polyline every stage with 4th-order periodic
differences; time stepping is the classical 4-stage explicit scheme with
a fixed step (determinism over adaptivity).

Flow breakdown (curvature floor, self-intersection, loss of speed
positivity) is a reported outcome: the run returns its partial history
with alive = False and never raises for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bodies import ConvexPlaneBody, SphereCap, plane_body_from_samples
from .checks import CheckReport, from_inequality, inequality_tolerance
from .dimension import InverseDimension
from .errors import CapOverflow, ConvexityViolation
from .inequalities import TestFunction
from .numerics import periodic_diff1, periodic_diff2
from .operators import boundary_geometry, weighted_integral
from .trig import TrigPolynomial

KAPPA_FLOOR = 1e-4


@dataclass(frozen=True)
class FlowState:
    """Snapshot of one Lagrangian evolution step."""

    t: float
    points: np.ndarray          # (m, 2) plane or (m, 3) sphere
    phi: np.ndarray
    normals: np.ndarray
    kappa: np.ndarray
    alive: bool = True


@dataclass(frozen=True)
class ConcavitySeries:
    """Masses mu(Omega_t) on a uniform time grid with transform N mu^(1/N)."""

    times: np.ndarray
    masses: np.ndarray
    theta: InverseDimension

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        m = np.asarray(self.masses, dtype=float)
        if t.size != m.size or t.size < 2:
            raise ValueError("series needs matching times and masses")
        dt = np.diff(t)
        if np.max(np.abs(dt - dt[0])) > 1e-9 * max(abs(dt[0]), 1e-30):
            raise ValueError("series requires uniform time spacing")
        if np.any(m <= 0.0):
            raise ValueError("masses must be positive")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "masses", m)

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])

    def transformed(self) -> np.ndarray:
        return np.array([self.theta.transform_mass(v) for v in self.masses])


@dataclass(frozen=True)
class QuermassTriple:
    """Zeroth, first and second boundary variations with N-normalization."""

    delta0: float               # mu(K)
    delta1: float               # mu(boundary K)
    delta2: float               # int H_mu dmu
    theta: InverseDimension

    @property
    def w_n(self) -> float:
        return self.delta0

    @property
    def w_n_minus_1(self) -> Optional[float]:
        if self.theta.is_zero_n or self.theta.is_infinite_n:
            return None
        return self.delta1 * self.theta.theta

    @property
    def w_n_minus_2(self) -> Optional[float]:
        if self.theta.is_zero_n or self.theta.is_infinite_n:
            return None
        th = self.theta.theta
        return self.delta2 * th * th / (1.0 - th)


@dataclass
class FlowResult:
    """Full outcome of one flow run.

    series is None only when the flow died before completing one step.
    """

    states: list
    series: Optional[ConcavitySeries]
    alive: bool
    death_reason: Optional[str] = None
    normal_drift: float = 0.0
    diagnostics: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# support-function operations


def minkowski_sum_support(K: ConvexPlaneBody, L: ConvexPlaneBody,
                          t: float) -> ConvexPlaneBody:
    """Body with support h_K + t h_L (exact when both carry coefficients)."""
    if t < 0.0:
        raise ValueError("Minkowski scaling requires t >= 0")
    if K.support is not None and L.support is not None:
        poly = K.support + L.support.scaled(t)
        from .bodies import build_plane_body
        return build_plane_body(poly, m=max(K.m, L.m),
                                label=f"{K.label}+{t:g}*{L.label}")
    if K.m != L.m:
        raise ValueError("sampled bodies must share the angle grid")
    return plane_body_from_samples(K.h + t * L.h,
                                   label=f"{K.label}+{t:g}*{L.label}")


def mixed_area(K: ConvexPlaneBody, L: ConvexPlaneBody) -> float:
    """W(K, L) = (1/2) int h_K (h_L + h_L'') dtheta (symmetric in K, L)."""
    if K.m != L.m:
        raise ValueError("bodies must share the angle grid")
    return 0.5 * float(np.sum(K.h * L.curvature_radius)) * K.d_angle


def geodesic_extension_measure(domain, t: float) -> float:
    """Enclosed measure of the t-neighborhood K_t."""
    if isinstance(domain, ConvexPlaneBody):
        if t < 0.0:
            raise ValueError("geodesic extension requires t >= 0")
        radius = domain.curvature_radius + t
        return 0.5 * float(np.sum((domain.h + t) * radius)) * domain.d_angle
    if isinstance(domain, SphereCap):
        if domain.r_cap + t >= math.pi:
            raise CapOverflow(
                f"cap of radius {domain.r_cap:g} extended by {t:g} reaches "
                "the antipode"
            )
        return domain.area(extra=t)
    raise TypeError(type(domain).__name__)


def quermassintegrals(body, theta: InverseDimension):
    """(QuermassTriple, Alexandrov CheckReport) for a strictly convex body.

    The inequality is checked in raw first-variation form
    delta1^2 >= N/(N-1) delta0 delta2, which at N = n = 2 is exactly the
    planar isoperimetric inequality P^2 >= 4 pi A.
    """
    from .bodies import RevolutionBody3D
    geom = boundary_geometry(body)
    if isinstance(body, ConvexPlaneBody):
        d0 = body.mass()
        d1 = body.perimeter()
        d2 = weighted_integral(geom.H_mu, body)
    elif isinstance(body, RevolutionBody3D):
        d0 = body.mass()
        d1 = body.surface_area()
        d2 = weighted_integral(geom.H_mu, body)
    else:
        raise TypeError(type(body).__name__)
    triple = QuermassTriple(delta0=d0, delta1=d1, delta2=d2, theta=theta)
    lhs = theta.n_over_n_minus_1 * d0 * d2
    rhs = d1 * d1
    tol = 1e-9 * max(1.0, abs(lhs), abs(rhs))
    report = from_inequality(
        "alexandrov-triple", lhs=lhs, rhs=rhs, tolerance=tol,
        params={"body": getattr(body, "label", "body"), "theta": theta.theta,
                "delta0": d0, "delta1": d1, "delta2": d2},
    )
    return triple, report


# ---------------------------------------------------------------------------
# plane parallel normal flow


def _plane_geometry(points: np.ndarray, hy: float):
    py = periodic_diff1(points, hy)
    pyy = periodic_diff2(points, hy)
    speed = np.hypot(py[:, 0], py[:, 1])
    tau = py / speed[:, None]
    nu = np.stack([tau[:, 1], -tau[:, 0]], axis=1)   # outward for CCW curves
    kappa = (py[:, 0] * pyy[:, 1] - py[:, 1] * pyy[:, 0]) / speed**3
    return speed, tau, nu, kappa


def _plane_velocity(points: np.ndarray, phi: np.ndarray, hy: float):
    speed, tau, nu, kappa = _plane_geometry(points, hy)
    phi_s = periodic_diff1(phi, hy) / speed
    vel = phi[:, None] * nu + (phi_s / kappa)[:, None] * tau
    return vel, nu, kappa


def polyline_area(points: np.ndarray, hy: float) -> float:
    """Enclosed area of a smooth closed marker curve.

    Shoelace form with FFT differentiation: spectrally accurate for the
    analytic curves the flows produce, matching the full-period trapezoid
    convention of the closed-curve quadrature.
    """
    from .numerics import spectral_diff
    xp = spectral_diff(points[:, 0], 1)
    yp = spectral_diff(points[:, 1], 1)
    return 0.5 * float(np.sum(points[:, 0] * yp - points[:, 1] * xp)) * hy


def self_intersects(points: np.ndarray) -> bool:
    """Proper-crossing sweep over all non-adjacent polyline segment pairs."""
    m = points.shape[0]
    a = points
    b = np.roll(points, -1, axis=0)
    ax, ay = a[:, 0][:, None], a[:, 1][:, None]
    bx, by = b[:, 0][:, None], b[:, 1][:, None]
    cx, cy = a[:, 0][None, :], a[:, 1][None, :]
    dx, dy = b[:, 0][None, :], b[:, 1][None, :]
    d1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    d2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    d3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    d4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    hit = (d1 * d2 < 0.0) & (d3 * d4 < 0.0)
    idx = np.arange(m)
    gap = np.abs(idx[:, None] - idx[None, :])
    adjacent = (gap <= 1) | (gap >= m - 1)
    return bool(np.any(hit & ~adjacent))


def _phi_samples(body_angles: np.ndarray, phi) -> np.ndarray:
    if isinstance(phi, TestFunction):
        if phi.kind == "trig":
            return phi.trig(body_angles)
        if phi.kind == "grid":
            return phi.samples.copy()
        raise ValueError("unsupported flow speed kind")
    if isinstance(phi, TrigPolynomial):
        return phi(body_angles)
    arr = np.asarray(phi, dtype=float)
    if arr.ndim == 0:
        return np.full(body_angles.size, float(arr))
    return arr


def parallel_normal_flow(initial, phi, t_end: float, dt: float,
                         snapshot_every: int = 10,
                         intersect_every: int = 25,
                         kappa_floor: float = KAPPA_FLOOR,
                         theta: Optional[InverseDimension] = None) -> FlowResult:
    """Run the parallel normal flow from a plane body or a sphere curve.

    phi is fixed per trajectory for all time (the flow's defining
    property).  Returns states (subsampled snapshots plus the endpoint),
    a ConcavitySeries of enclosed measure at every accepted step, the
    accumulated normal drift, and the death record if the curvature floor
    or a self-intersection ended the run early.
    """
    if theta is None:
        theta = InverseDimension(0.5, n_ambient=2)
    if isinstance(initial, ConvexPlaneBody):
        return _pnf_plane(initial, phi, t_end, dt, snapshot_every,
                          intersect_every, kappa_floor, theta)
    if isinstance(initial, SphereCurve):
        return _pnf_sphere(initial, phi, t_end, dt, snapshot_every,
                           kappa_floor, theta)
    raise TypeError(type(initial).__name__)


def _pnf_plane(body, phi, t_end, dt, snapshot_every, intersect_every,
               kappa_floor, theta) -> FlowResult:
    m = body.m
    hy = body.d_angle
    points = body.points()
    phi_vals = _phi_samples(body.angles, phi)
    steps = int(round(t_end / dt))
    speed0, tau0, nu0, kappa0 = _plane_geometry(points, hy)
    if np.min(kappa0) <= kappa_floor:
        raise ConvexityViolation("initial curve is not strictly convex")
    states = [FlowState(0.0, points.copy(), phi_vals.copy(), nu0, kappa0)]
    times = [0.0]
    masses = [polyline_area(points, hy)]
    nu_prev = nu0
    drift = 0.0
    max_step_drift = 0.0
    alive = True
    reason = None
    for k in range(steps):
        k1, _, _ = _plane_velocity(points, phi_vals, hy)
        k2, _, _ = _plane_velocity(points + 0.5 * dt * k1, phi_vals, hy)
        k3, _, _ = _plane_velocity(points + 0.5 * dt * k2, phi_vals, hy)
        k4, _, _ = _plane_velocity(points + dt * k3, phi_vals, hy)
        candidate = points + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _, _, nu, kappa = _plane_geometry(candidate, hy)
        if not np.all(np.isfinite(candidate)) or np.min(kappa) <= kappa_floor:
            alive, reason = False, "curvature-floor"
            break
        if intersect_every > 0 and (k + 1) % intersect_every == 0 \
                and self_intersects(candidate):
            alive, reason = False, "self-intersection"
            break
        points = candidate
        step_drift = float(np.max(np.hypot(*(nu - nu_prev).T)))
        drift += step_drift
        max_step_drift = max(max_step_drift, step_drift)
        nu_prev = nu
        t_now = (k + 1) * dt
        times.append(t_now)
        masses.append(polyline_area(points, hy))
        if (k + 1) % snapshot_every == 0 or k == steps - 1:
            states.append(FlowState(t_now, points.copy(), phi_vals.copy(),
                                    nu.copy(), kappa.copy(), alive=True))
    if not alive:
        _, _, nu_now, kappa_now = _plane_geometry(points, hy)
        states.append(FlowState(times[-1], points.copy(), phi_vals.copy(),
                                nu_now, kappa_now, alive=False))
    series = _series_or_none(times, masses, theta)
    return FlowResult(states=states, series=series, alive=alive,
                      death_reason=reason, normal_drift=drift,
                      diagnostics={"m": m, "dt": dt,
                                   "steps_run": len(times) - 1,
                                   "max_step_drift": max_step_drift})


def _series_or_none(times, masses, theta):
    if len(times) < 2:
        return None          # flow died before producing a usable series
    return ConcavitySeries(np.array(times), np.array(masses), theta)


# ---------------------------------------------------------------------------
# sphere curves


@dataclass(frozen=True)
class SphereCurve:
    """Closed marker curve on the unit 2-sphere (m, 3), oriented so the
    conormal tau x X points away from the enclosed cap-like region."""

    points: np.ndarray
    label: str = "sphere-curve"

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=float)
        norms = np.linalg.norm(pts, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-10:
            raise ValueError("sphere curve markers must lie on the unit sphere")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return self.points.shape[0]


def latitude_circle(polar_angle: float, m: int = 256) -> SphereCurve:
    """Boundary of the geodesic cap of radius polar_angle about the pole."""
    if not 0.0 < polar_angle < math.pi:
        raise ValueError("polar angle must lie in (0, pi)")
    y = np.arange(m) * (2.0 * math.pi / m)
    pts = np.stack([
        math.sin(polar_angle) * np.cos(y),
        math.sin(polar_angle) * np.sin(y),
        np.full(m, math.cos(polar_angle)),
    ], axis=1)
    return SphereCurve(points=pts, label=f"latitude({polar_angle:g})")


def _sphere_geometry(x: np.ndarray, hy: float):
    xy = periodic_diff1(x, hy)
    xyy = periodic_diff2(x, hy)
    speed = np.linalg.norm(xy, axis=1)
    tau = xy / speed[:, None]
    nu = np.cross(tau, x)
    speed_y = periodic_diff1(speed, hy)
    xss = (xyy - speed_y[:, None] * tau) / speed[:, None] ** 2
    kappa_g = -np.einsum("ij,ij->i", xss, nu)
    return speed, tau, nu, kappa_g


def _sphere_velocity(x: np.ndarray, phi: np.ndarray, hy: float):
    speed, tau, nu, kappa = _sphere_geometry(x, hy)
    phi_s = periodic_diff1(phi, hy) / speed
    vel = phi[:, None] * nu + (phi_s / kappa)[:, None] * tau
    vel -= np.einsum("ij,ij->i", vel, x)[:, None] * x   # tangent projection
    return vel, nu, kappa


def _parallel_transport(w: np.ndarray, x_from: np.ndarray,
                        x_to: np.ndarray) -> np.ndarray:
    dot = np.einsum("ij,ij->i", x_from, x_to)
    wdot = np.einsum("ij,ij->i", w, x_to)
    return w - (wdot / (1.0 + dot))[:, None] * (x_from + x_to)


def sphere_enclosed_area(x: np.ndarray, hy: float):
    """(Gauss-Bonnet, azimuthal-band) estimates of the enclosed area.

    Gauss-Bonnet: 2 pi - contour integral of kappa_g ds.  Band form:
    contour integral of (1 - z) dphi_azimuthal, valid for curves winding
    once around the pole of the enclosed region.
    """
    speed, tau, nu, kappa = _sphere_geometry(x, hy)
    gb = 2.0 * math.pi - float(np.sum(kappa * speed)) * hy
    # d(phi_azimuthal)/dy from cartesian derivatives avoids branch cuts
    xy = periodic_diff1(x, hy)
    denom = x[:, 0] ** 2 + x[:, 1] ** 2
    dphi = (x[:, 0] * xy[:, 1] - x[:, 1] * xy[:, 0]) / denom
    band = float(np.sum((1.0 - x[:, 2]) * dphi)) * hy
    return gb, band


def _pnf_sphere(curve: SphereCurve, phi, t_end, dt, snapshot_every,
                kappa_floor, theta) -> FlowResult:
    m = curve.m
    hy = 2.0 * math.pi / m
    x = curve.points.copy()
    angles = np.arange(m) * hy
    phi_vals = _phi_samples(angles, phi)
    steps = int(round(t_end / dt))
    _, _, nu0, kappa0 = _sphere_geometry(x, hy)
    if np.min(kappa0) <= kappa_floor:
        raise ConvexityViolation("initial sphere curve is not strictly convex")
    states = [FlowState(0.0, x.copy(), phi_vals.copy(), nu0, kappa0)]
    times = [0.0]
    masses = [sphere_enclosed_area(x, hy)[0]]
    x_prev, nu_prev = x.copy(), nu0
    drift = 0.0
    max_step_drift = 0.0
    alive, reason = True, None
    band_gap = 0.0
    for k in range(steps):
        k1, _, _ = _sphere_velocity(x, phi_vals, hy)
        k2, _, _ = _sphere_velocity(_renorm(x + 0.5 * dt * k1), phi_vals, hy)
        k3, _, _ = _sphere_velocity(_renorm(x + 0.5 * dt * k2), phi_vals, hy)
        k4, _, _ = _sphere_velocity(_renorm(x + dt * k3), phi_vals, hy)
        candidate = _renorm(x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
        _, _, nu, kappa = _sphere_geometry(candidate, hy)
        if not np.all(np.isfinite(candidate)) or np.min(kappa) <= kappa_floor:
            alive, reason = False, "curvature-floor"
            break
        x = candidate
        transported = _parallel_transport(nu_prev, x_prev, x)
        step_drift = float(np.max(np.linalg.norm(nu - transported, axis=1)))
        drift += step_drift
        max_step_drift = max(max_step_drift, step_drift)
        x_prev, nu_prev = x.copy(), nu
        t_now = (k + 1) * dt
        gb, band = sphere_enclosed_area(x, hy)
        band_gap = max(band_gap, abs(gb - band))
        times.append(t_now)
        masses.append(gb)
        if (k + 1) % snapshot_every == 0 or k == steps - 1:
            states.append(FlowState(t_now, x.copy(), phi_vals.copy(),
                                    nu.copy(), kappa.copy()))
    if not alive:
        _, _, nu_now, kappa_now = _sphere_geometry(x, hy)
        states.append(FlowState(times[-1], x.copy(), phi_vals.copy(),
                                nu_now, kappa_now, alive=False))
    series = _series_or_none(times, masses, theta)
    return FlowResult(states=states, series=series, alive=alive,
                      death_reason=reason, normal_drift=drift,
                      diagnostics={"m": m, "dt": dt,
                                   "area_estimator_gap": band_gap,
                                   "max_step_drift": max_step_drift})


def _renorm(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x, axis=1)[:, None]


# ---------------------------------------------------------------------------
# Weingarten curvature wave


def weingarten_wave(body: ConvexPlaneBody, phi0, t_end: float, dt: float,
                    kappa_floor: float = KAPPA_FLOOR,
                    theta: Optional[InverseDimension] = None,
                    snapshot_every: int = 50) -> FlowResult:
    """Coupled wave: dF/dt = phi nu, d(log phi)/dt = L_(Sigma, II, mu) phi.

    On a plane curve with zero potential the Weingarten-metric Laplacian
    is realized in arclength as (kappa^{-1} phi_s)_s.  The speed is
    integrated in logarithmic form, which keeps phi positive; death by
    curvature floor or non-finite state is reported, not raised.
    Stability of the explicit stepping requires dt of order (arclength
    spacing)^2.
    """
    if body.has_density:
        raise NotImplementedError("Weingarten wave assumes zero potential")
    if theta is None:
        theta = InverseDimension(0.5, n_ambient=2)
    m = body.m
    hy = body.d_angle
    points = body.points()
    phi_vals = _phi_samples(body.angles, phi0)
    if np.min(phi_vals) <= 0.0:
        raise ValueError("initial speed must be positive")
    log_phi = np.log(phi_vals)
    steps = int(round(t_end / dt))
    times = [0.0]
    masses = [polyline_area(points, hy)]
    _, _, nu0, kappa0 = _plane_geometry(points, hy)
    states = [FlowState(0.0, points.copy(), phi_vals.copy(), nu0, kappa0)]
    alive, reason = True, None

    def rhs(pts, lph):
        phi = np.exp(lph)
        speed, tau, nu, kappa = _plane_geometry(pts, hy)
        dpts = phi[:, None] * nu
        phi_s = periodic_diff1(phi, hy) / speed
        flux = phi_s / kappa
        dlog = periodic_diff1(flux, hy) / speed
        return dpts, dlog

    for k in range(steps):
        a1, b1 = rhs(points, log_phi)
        a2, b2 = rhs(points + 0.5 * dt * a1, log_phi + 0.5 * dt * b1)
        a3, b3 = rhs(points + 0.5 * dt * a2, log_phi + 0.5 * dt * b2)
        a4, b4 = rhs(points + dt * a3, log_phi + dt * b3)
        cand_pts = points + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        cand_log = log_phi + dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        _, _, nu, kappa = _plane_geometry(cand_pts, hy)
        finite = np.all(np.isfinite(cand_pts)) and np.all(np.isfinite(cand_log))
        if not finite:
            alive, reason = False, "positivity-loss"
            break
        if np.min(kappa) <= kappa_floor:
            alive, reason = False, "curvature-floor"
            break
        points, log_phi = cand_pts, cand_log
        t_now = (k + 1) * dt
        times.append(t_now)
        masses.append(polyline_area(points, hy))
        if (k + 1) % snapshot_every == 0 or k == steps - 1:
            states.append(FlowState(t_now, points.copy(), np.exp(log_phi),
                                    nu.copy(), kappa.copy()))
    if not alive:
        _, _, nu_now, kappa_now = _plane_geometry(points, hy)
        states.append(FlowState(times[-1], points.copy(), np.exp(log_phi),
                                nu_now, kappa_now, alive=False))
    series = _series_or_none(times, masses, theta)
    return FlowResult(states=states, series=series, alive=alive,
                      death_reason=reason,
                      diagnostics={"m": m, "dt": dt,
                                   "min_phi": float(np.exp(log_phi).min())})


# ---------------------------------------------------------------------------
# concavity and isoperimetry


def concavity_check(series: ConcavitySeries, name: str = "concavity",
                    tol_base: float = 1e-6) -> CheckReport:
    """Max central second difference of the transformed series vs zero.

    The tolerance scales with dt^2, matching the magnitude of true second
    differences of a smooth function on the series grid.
    """
    g = series.transformed()
    if g.size < 3:
        raise ValueError("concavity check needs at least 3 samples")
    d2 = g[2:] - 2.0 * g[1:-1] + g[:-2]
    worst = float(np.max(d2))
    dt = series.dt
    tol = tol_base * dt * dt * max(1.0, float(np.max(np.abs(g))))
    return from_inequality(
        name, lhs=worst, rhs=0.0, tolerance=tol,
        params={"dt": dt, "steps": int(g.size - 1),
                "theta": series.theta.theta,
                "min_second_difference": float(np.min(d2))},
    )


def hausdorff_points(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric discrete Hausdorff distance between two marker sets."""
    d = np.sqrt(((a[:, None, :] - b[None, :, :]) ** 2).sum(-1))
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def steiner_fit_residual(K: ConvexPlaneBody, L: ConvexPlaneBody,
                         ts=(0.0, 0.25, 0.5, 0.75, 1.0)) -> float:
    """Max deviation of area(K + tL) from its degree-2 fit over ts."""
    areas = np.array([minkowski_sum_support(K, L, t).area() for t in ts])
    coeffs = np.polynomial.polynomial.polyfit(np.asarray(ts), areas, 2)
    fit = np.polynomial.polynomial.polyval(np.asarray(ts), coeffs)
    return float(np.max(np.abs(areas - fit)))


def isoperimetric_checks(K: ConvexPlaneBody, L: ConvexPlaneBody,
                         theta: InverseDimension,
                         t_grid=None):
    """Three assertions of the convex isoperimetric comparison.

    1. concavity of the transformed extension mass t -> N mu(K + tL)^(1/N);
    2. the anisotropic boundary measure mu+_L(K) dominates the secant
       bound over t_grid (and, at theta = 1/2, the homogeneous bound
       2 sqrt(mu(K) mu(L)));
    3. the profile ratio I(v)^(N/(N-1))/v is non-increasing along the
       extension family.

    mu+_L(K) is a Richardson-extrapolated forward difference with
    h = 1e-3 * inradius; the extension masses come from the exact
    degree-2 expansion mu(K + tL) = A_K + 2 t W(K, L) + t^2 A_L.
    """
    if theta.is_zero_n:
        raise ValueError("isoperimetric comparison is undefined at N = 0")
    if t_grid is None:
        t_grid = np.linspace(0.1, 1.0, 10)
    t_grid = np.asarray(t_grid, dtype=float)
    a_k = K.area()
    a_l = L.area()
    w_kl = mixed_area(K, L)
    mass = lambda t: a_k + 2.0 * t * w_kl + t * t * a_l

    # 1: concavity along a uniform refinement of the grid
    ts = np.linspace(0.0, float(t_grid[-1]), 65)
    series = ConcavitySeries(ts, np.array([mass(t) for t in ts]), theta)
    c1 = concavity_check(series, name="isoperimetric-concavity")

    # 2: boundary measure vs secant and homogeneous bounds
    h = 1e-3 * float(np.min(K.h))
    d_h = (mass(h) - a_k) / h
    d_2h = (mass(2.0 * h) - a_k) / (2.0 * h)
    mu_plus = 2.0 * d_h - d_2h
    t0 = theta.transform_mass(a_k)
    secants = np.array([
        (theta.transform_mass(mass(t)) - t0) / t for t in t_grid
    ])
    # mu+ >= mu(K)^((N-1)/N) * sup_t secant, with (N-1)/N = 1 - theta so
    # the theta = 0 limit (weight mu(K), log transform) is exact
    bound = float(np.max(secants)) * a_k ** (1.0 - theta.theta)
    tol = inequality_tolerance(scale=max(1.0, mu_plus))
    c2 = from_inequality(
        "isoperimetric-boundary-measure", lhs=bound, rhs=mu_plus,
        tolerance=tol,
        params={"K": K.label, "L": L.label, "h": h,
                "richardson_mu_plus": mu_plus},
    )
    checks = [c1, c2]
    if abs(theta.theta - 0.5) < 1e-14:
        hom = 2.0 * math.sqrt(a_k * a_l)
        checks.append(from_inequality(
            "isoperimetric-homogeneous-bound", lhs=hom, rhs=mu_plus,
            tolerance=tol, params={"K": K.label, "L": L.label},
        ))

    # 3: profile ratio monotone non-increasing
    ratios = []
    for t in t_grid:
        v = mass(t)
        vp = 2.0 * w_kl + 2.0 * t * a_l
        ratios.append(vp ** theta.n_over_n_minus_1 / v)
    ratios = np.array(ratios)
    increases = np.diff(ratios)
    worst = float(np.max(increases)) if increases.size else 0.0
    c3 = from_inequality(
        "isoperimetric-profile-monotone", lhs=worst, rhs=0.0,
        tolerance=1e-9 * max(1.0, float(np.max(np.abs(ratios)))),
        params={"K": K.label, "L": L.label,
                "ratio_first": float(ratios[0]), "ratio_last": float(ratios[-1])},
    )
    checks.append(c3)
    return checks


def cap_extension_series(cap: SphereCap, t_end: float, dt: float,
                         theta: Optional[InverseDimension] = None) -> ConcavitySeries:
    """Analytic mass series of the geodesic cap extension."""
    if theta is None:
        theta = InverseDimension(0.5, n_ambient=2)
    if cap.r_cap + t_end >= math.pi:
        raise CapOverflow("extension reaches the antipode")
    steps = int(round(t_end / dt))
    times = np.arange(steps + 1) * dt
    masses = np.array([cap.area(extra=float(t)) for t in times])
    return ConcavitySeries(times, masses, theta)
