"""Convex bodies: support-function plane bodies, revolution surfaces, caps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConvexityViolation
from .numerics import diff1, diff2, simpson_uniform, spectral_diff
from .trig import TrigPolynomial


def _freeze(arr) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class ConvexPlaneBody:
    """Strictly convex plane body sampled through its support function.

    h is sampled on m uniform normal angles theta_k = 2 pi k / m; the
    derivatives h', h'' are spectral (exact for trig-polynomial data).
    The boundary point with outward normal nu(theta) is
    p = h nu + h' nu_perp, and the curvature radius is h + h''.
    """

    m: int
    angles: np.ndarray
    h: np.ndarray
    hp: np.ndarray
    hpp: np.ndarray
    support: Optional[TrigPolynomial] = None
    v_boundary: Optional[np.ndarray] = None     # ambient potential on boundary
    dv_normal: Optional[np.ndarray] = None      # its outward normal derivative
    label: str = "body"

    def __post_init__(self):
        if self.m < 8 or self.m % 2 != 0:
            raise ValueError("m must be even and at least 8")
        for name in ("angles", "h", "hp", "hpp"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))
        for name in ("v_boundary", "dv_normal"):
            arr = getattr(self, name)
            if arr is not None:
                object.__setattr__(self, name, _freeze(arr))
        radius = self.curvature_radius
        if np.any(radius <= 0.0):
            k = int(np.argmin(radius))
            raise ConvexityViolation(
                f"support function is not strictly convex: h + h'' = "
                f"{radius[k]:.6g} at angle {self.angles[k]:.6g}",
                where=float(self.angles[k]),
                value=float(radius[k]),
            )

    @property
    def curvature_radius(self) -> np.ndarray:
        return self.h + self.hpp

    @property
    def d_angle(self) -> float:
        return 2.0 * math.pi / self.m

    @property
    def has_density(self) -> bool:
        return self.v_boundary is not None and bool(np.any(self.v_boundary != 0.0))

    def normals(self) -> np.ndarray:
        return np.stack([np.cos(self.angles), np.sin(self.angles)], axis=1)

    def points(self) -> np.ndarray:
        nu = self.normals()
        nup = np.stack([-np.sin(self.angles), np.cos(self.angles)], axis=1)
        return self.h[:, None] * nu + self.hp[:, None] * nup

    def boundary_weight(self) -> np.ndarray:
        """Weighted line element density wrt d(theta): exp(-V) (h + h'')."""
        w = self.curvature_radius.copy()
        if self.v_boundary is not None:
            w = w * np.exp(-self.v_boundary)
        return w

    def perimeter(self) -> float:
        return float(np.sum(self.boundary_weight())) * self.d_angle

    def area(self) -> float:
        """Enclosed Lebesgue area via the support-function formula."""
        return 0.5 * float(np.sum(self.h * self.curvature_radius)) * self.d_angle

    def mass(self) -> float:
        """Enclosed weighted measure; only the Lebesgue case is supported."""
        if self.has_density:
            raise NotImplementedError(
                "interior mass of a plane body with ambient density requires "
                "interior data; supply a RadialBall for radial densities"
            )
        return self.area()

    def recomputed_support(self) -> np.ndarray:
        """<p(theta), nu(theta)>; equals h to spectral accuracy (round trip)."""
        return np.einsum("ij,ij->i", self.points(), self.normals())

    def translate_invariant_radius(self) -> np.ndarray:
        return self.curvature_radius


def build_plane_body(
    support: TrigPolynomial | tuple | list,
    m: int = 512,
    v_boundary: Optional[np.ndarray] = None,
    dv_normal: Optional[np.ndarray] = None,
    label: str = "body",
) -> ConvexPlaneBody:
    """Plane body from trig-polynomial support coefficients.

    Raises ConvexityViolation (reporting the worst angle) when the
    curvature radius h + h'' fails to be positive somewhere.
    """
    if not isinstance(support, TrigPolynomial):
        support = TrigPolynomial.from_flat(support)
    angles = np.arange(m) * (2.0 * math.pi / m)
    h = support(angles)
    hp = support(angles, derivative=1)
    hpp = support(angles, derivative=2)
    return ConvexPlaneBody(m=m, angles=angles, h=h, hp=hp, hpp=hpp,
                           support=support, v_boundary=v_boundary,
                           dv_normal=dv_normal, label=label)


def plane_body_from_samples(h: np.ndarray, label: str = "body") -> ConvexPlaneBody:
    """Plane body from support samples; derivatives via FFT differentiation."""
    h = np.asarray(h, dtype=float)
    m = h.size
    angles = np.arange(m) * (2.0 * math.pi / m)
    return ConvexPlaneBody(m=m, angles=angles, h=h,
                           hp=spectral_diff(h, 1), hpp=spectral_diff(h, 2),
                           label=label)


@dataclass(frozen=True)
class RevolutionBody3D:
    """Convex body of revolution about the z axis.

    The generating curve (r(s), z(s)) is sampled by arclength on n+1
    uniform nodes of [0, S] with both poles included: r(0) = r(S) = 0,
    r'(0) = 1, r'(S) = -1.  Curvature extraction differentiates these
    samples; the axisymmetric eigensolver places its unknowns at cell
    centers so the pole singularity 1/r never appears at a solver node.
    """

    s: np.ndarray
    r: np.ndarray
    z: np.ndarray
    v3d: Optional[np.ndarray] = None         # axisymmetric potential on the surface
    dv_normal: Optional[np.ndarray] = None
    label: str = "revolution"

    def __post_init__(self):
        for name in ("s", "r", "z"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))
        for name in ("v3d", "dv_normal"):
            arr = getattr(self, name)
            if arr is not None:
                object.__setattr__(self, name, _freeze(arr))
        n = self.s.size
        if n < 33 or (n - 1) % 2 != 0:
            raise ValueError("profile needs an odd node count >= 33")
        if abs(self.r[0]) > 1e-12 or abs(self.r[-1]) > 1e-12:
            raise ValueError("profile must close at both poles (r = 0)")
        h = self.h
        rp = diff1(self.r, h)
        if abs(rp[0] - 1.0) > 1e-4 or abs(rp[-1] + 1.0) > 1e-4:
            raise ValueError(
                f"pole closure failed: r'(0) = {rp[0]:.6g}, r'(S) = {rp[-1]:.6g}"
            )
        sp = np.hypot(rp, diff1(self.z, h))
        if np.max(np.abs(sp - 1.0)) > 1e-6:
            raise ValueError("profile is not arclength parametrized")
        k1, k2 = self.principal_curvatures()
        interior = slice(1, -1)
        if np.any(k1[interior] <= 0.0) or np.any(k2[interior] <= 0.0):
            j = int(np.argmin(np.minimum(k1, k2)[interior])) + 1
            raise ConvexityViolation(
                f"revolution profile not strictly convex near s = {self.s[j]:.6g}",
                where=float(self.s[j]),
                value=float(min(k1[j], k2[j])),
            )

    @property
    def h(self) -> float:
        return float(self.s[1] - self.s[0])

    @property
    def total_arclength(self) -> float:
        return float(self.s[-1])

    @property
    def n_cells(self) -> int:
        return self.s.size - 1

    @property
    def has_density(self) -> bool:
        return self.v3d is not None and bool(np.any(self.v3d != 0.0))

    def derivatives(self):
        h = self.h
        return diff1(self.r, h), diff1(self.z, h), diff2(self.r, h), diff2(self.z, h)

    def principal_curvatures(self):
        """(meridional, azimuthal) curvatures wrt the outward normal (-z', r').

        At the poles the surface is umbilic; the azimuthal curvature takes
        the meridional value there instead of the indeterminate -z'/r.
        """
        rp, zp, rpp, zpp = self.derivatives()
        k1 = rpp * zp - zpp * rp
        k2 = np.empty_like(k1)
        inner = self.r > 1e-12
        k2[inner] = -zp[inner] / self.r[inner]
        k2[~inner] = k1[~inner]
        return k1, k2

    def boundary_weight(self) -> np.ndarray:
        """Weighted area element density wrt ds: 2 pi r exp(-V)."""
        w = 2.0 * math.pi * self.r
        if self.v3d is not None:
            w = w * np.exp(-self.v3d)
        return w

    def surface_area(self) -> float:
        return simpson_uniform(self.boundary_weight(), self.h)

    def volume(self) -> float:
        """Enclosed Lebesgue volume: pi * integral of r^2 (-z') ds."""
        _, zp, _, _ = self.derivatives()
        return math.pi * simpson_uniform(self.r**2 * (-zp), self.h)

    def mass(self) -> float:
        if self.has_density:
            raise NotImplementedError(
                "interior mass with density is not supported for revolution bodies"
            )
        return self.volume()

    def gauss_curvature_intrinsic(self) -> np.ndarray:
        """Gauss curvature of the induced metric ds^2 + r(s)^2 dphi^2: -r''/r.

        Interior samples only (poles excluded).
        """
        rpp = diff2(self.r, self.h)
        return -rpp[1:-1] / self.r[1:-1]


def _arclength_reparametrize(
    x: Callable, y: Callable, tau0: float, tau1: float, n_cells: int,
    refine: int = 16, speed_fn: Optional[Callable] = None,
) -> tuple:
    """Resample a curve (x(tau), y(tau)) at n_cells+1 uniform arclength nodes.

    The cumulative arclength is integrated on a grid `refine` times finer
    with a spline, then inverted; node positions are accurate to well
    below the differencing error of downstream consumers.   Pass the exact
    speed |(x', y')| when available; the difference-quotient fallback uses
    a cube-root-of-eps step to balance truncation against roundoff.
    """
    nf = refine * n_cells
    tau = np.linspace(tau0, tau1, nf + 1)
    if speed_fn is not None:
        sp = np.asarray(speed_fn(tau), dtype=float)
    else:
        eps = (tau1 - tau0) * 6e-6
        taum = np.clip(tau, tau0 + eps, tau1 - eps)
        dx = (np.asarray(x(taum + eps)) - np.asarray(x(taum - eps))) / (2 * eps)
        dy = (np.asarray(y(taum + eps)) - np.asarray(y(taum - eps))) / (2 * eps)
        sp = np.hypot(dx, dy)
    speed = CubicSpline(tau, sp)
    cum = np.empty(nf + 1)
    cum[0] = 0.0
    seg = [speed.integrate(tau[i], tau[i + 1]) for i in range(nf)]
    cum[1:] = np.cumsum(seg)
    total = cum[-1]
    inverse = CubicSpline(cum, tau)
    s = np.linspace(0.0, total, n_cells + 1)
    tt = inverse(s)
    tt[0], tt[-1] = tau0, tau1
    return s, np.asarray(x(tt), dtype=float), np.asarray(y(tt), dtype=float)


def build_sphere_body(radius: float = 1.0, n_cells: int = 1024) -> RevolutionBody3D:
    """Round sphere profile (R sin(s/R), R cos(s/R)), s in [0, pi R]."""
    s = np.linspace(0.0, math.pi * radius, n_cells + 1)
    r = radius * np.sin(s / radius)
    z = radius * np.cos(s / radius)
    r = r.copy()
    r[0] = 0.0
    r[-1] = 0.0
    return RevolutionBody3D(s=s, r=r, z=z, label=f"sphere(R={radius:g})")


def build_spheroid_body(a: float, c: float, n_cells: int = 1024) -> RevolutionBody3D:
    """Spheroid with equatorial semi-axis a and polar semi-axis c.

    The ellipse quarter-turn parametrization (a sin tau, c cos tau) is
    reparametrized to arclength numerically.
    """
    s, r, z = _arclength_reparametrize(
        lambda tau: a * np.sin(tau),
        lambda tau: c * np.cos(tau),
        0.0, math.pi, n_cells,
        speed_fn=lambda tau: np.sqrt(
            a * a * np.cos(tau) ** 2 + c * c * np.sin(tau) ** 2
        ),
    )
    r = r.copy()
    r[0] = 0.0
    r[-1] = 0.0
    return RevolutionBody3D(s=s, r=r, z=z, label=f"spheroid(a={a:g},c={c:g})")


def build_revolution_body(profile_spec, n_cells: int = 1024) -> RevolutionBody3D:
    """Dispatch on a profile spec: ('sphere', R) | ('spheroid', a, c) |
    (r_callable, z_callable, tau0, tau1)."""
    if isinstance(profile_spec, (tuple, list)):
        if profile_spec and profile_spec[0] == "sphere":
            return build_sphere_body(*profile_spec[1:], n_cells=n_cells)
        if profile_spec and profile_spec[0] == "spheroid":
            return build_spheroid_body(*profile_spec[1:], n_cells=n_cells)
        if len(profile_spec) == 4 and callable(profile_spec[0]):
            x, y, t0, t1 = profile_spec
            s, r, z = _arclength_reparametrize(x, y, t0, t1, n_cells)
            r = r.copy()
            r[0] = 0.0
            r[-1] = 0.0
            return RevolutionBody3D(s=s, r=r, z=z, label="revolution")
    raise ValueError(f"unrecognized profile spec: {profile_spec!r}")


@dataclass(frozen=True)
class SphereCap:
    """Geodesic cap of radius r_cap on the unit 2-sphere."""

    r_cap: float

    def __post_init__(self):
        if not 0.0 < self.r_cap < math.pi:
            raise ValueError("cap radius must lie in (0, pi)")

    def area(self, extra: float = 0.0) -> float:
        return 2.0 * math.pi * (1.0 - math.cos(self.r_cap + extra))

    def boundary_length(self) -> float:
        return 2.0 * math.pi * math.sin(self.r_cap)

    def geodesic_curvature(self) -> float:
        """Curvature of the boundary circle wrt the outward conormal: cot r."""
        return math.cos(self.r_cap) / math.sin(self.r_cap)

    def area_by_quadrature(self, n: int = 4097) -> float:
        """Latitude quadrature of sin(phi); independent check of area()."""
        phi = np.linspace(0.0, self.r_cap, n)
        return 2.0 * math.pi * simpson_uniform(np.sin(phi), phi[1] - phi[0])


def build_sphere_cap(r_cap: float) -> SphereCap:
    return SphereCap(r_cap=r_cap)
