"""Discrete weighted Laplacians, Poisson solvers, eigensolvers, quadrature.

The interval discretization is the conservative flux form

    (L u)_i = [ b_{i+1/2} (u_{i+1} - u_i)/h - b_{i-1/2} (u_i - u_{i-1})/h ] / m_i

with face coefficients b = exp(-V) and cell measures m_i.  Conjugating by
sqrt(m) makes the matrix exactly symmetric, and Neumann walls enter as
zero boundary fluxes (the ghost-node reflection of the half end cells),
so the operator annihilates constants to machine precision.  Closed
curves use the trigonometric differentiation matrix D in the factored
form diag(e^V / r) D diag(e^{-V} / r) D, which is exactly symmetrizable
because D is antisymmetric.

On an even periodic grid D annihilates the alternating (Nyquist) vector
as well as constants, so the factored operator carries one inert extra
null mode.  That mode is an exact, known vector; eigensolves shift it
out of the low spectrum and the singular Poisson solve removes it by
minimal-norm least squares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, eigh, eigh_tridiagonal, solve_banded

from .bodies import ConvexPlaneBody, RevolutionBody3D, SphereCap
from .errors import ConvergenceFailure, SingularSystem
from .models import IntervalModel, RadialBall
from .numerics import fourier_diff_matrix, periodic_trapezoid, simpson_uniform

NEUMANN = "neumann"
DIRICHLET = "dirichlet"
PERIODIC = "periodic"


@dataclass(frozen=True)
class DiscreteOperator:
    """Discretized weighted Laplacian with a boundary-condition tag.

    kind 'tridiagonal' stores the three bands of L (action on node values);
    kind 'periodic' stores the dense matrix.  `weights` are the cell
    measures w_i exp(-V_i) of the weighted inner product, frozen at
    assembly time; `symmetrizer` = sqrt(weights) conjugates L to symmetric
    form.
    """

    kind: str
    bc: str
    n: int
    weights: np.ndarray
    symmetrizer: np.ndarray
    model_ref: str
    h: float
    lower: Optional[np.ndarray] = None
    diag: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None
    dense: Optional[np.ndarray] = None

    def apply(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self.kind == "periodic":
            return self.dense @ u
        out = self.diag * u
        out[:-1] += self.upper * u[1:]
        out[1:] += self.lower * u[:-1]
        return out

    def weighted_inner(self, u: np.ndarray, v: np.ndarray) -> float:
        return float(np.dot(self.weights * np.asarray(u), np.asarray(v)))

    def symmetric_form(self):
        """Return data for the conjugated operator S = D L D^{-1}, D = diag(symmetrizer).

        Tridiagonal: (diag, off) arrays of S.  Periodic: the dense S.
        """
        d = self.symmetrizer
        if self.kind == "periodic":
            return (self.dense * d[:, None]) / d[None, :]
        off = self.upper * d[:-1] / d[1:]
        return self.diag.copy(), off

    def symmetry_defect(self) -> float:
        """Max |S - S^T| of the conjugated matrix, relative to its entry scale."""
        if self.kind == "periodic":
            s = self.symmetric_form()
            return float(np.max(np.abs(s - s.T)) / max(1.0, np.max(np.abs(s))))
        d = self.symmetrizer
        up = self.upper * d[:-1] / d[1:]
        lo = self.lower * d[1:] / d[:-1]
        scale = max(1.0, float(np.max(np.abs(up))))
        return float(np.max(np.abs(up - lo)) / scale)

    def constant_defect(self) -> float:
        """Max |L 1| relative to the operator's entry scale (zero for
        Neumann/periodic assemblies up to roundoff)."""
        ones = np.ones(self.n)
        scale = max(1.0, float(np.max(np.abs(self.diag)))
                    if self.diag is not None
                    else float(np.max(np.abs(self.dense))))
        return float(np.max(np.abs(self.apply(ones))) / scale)

    def nyquist_mode(self) -> Optional[np.ndarray]:
        """The inert alternating null vector of an even periodic grid."""
        if self.kind != "periodic" or self.n % 2 != 0:
            return None
        saw = np.ones(self.n)
        saw[1::2] = -1.0
        return saw

    def deflated_symmetric(self) -> np.ndarray:
        """Symmetric form with the alternating null mode shifted far negative.

        The shift is exact because the mode is an exact null vector of L,
        so the remaining spectrum moves only at roundoff level.
        """
        s = self.symmetric_form()
        saw = self.nyquist_mode()
        if saw is None:
            return s
        q = self.symmetrizer * saw
        q = q / np.linalg.norm(q)
        # just above the spectral radius: large enough to clear the low
        # spectrum, small enough not to degrade eigh's absolute accuracy
        shift = 4.0 * float(np.max(np.abs(np.diag(s)))) + 10.0
        return s - shift * np.outer(q, q)


def _interval_flux_data(model: IntervalModel):
    h = model.h
    b_face = np.exp(-0.5 * (model.V[:-1] + model.V[1:]))
    return h, b_face


def assemble_laplacian(model, bc: str) -> DiscreteOperator:
    """Assemble L = Delta - <grad V, grad .> for a model or a closed boundary.

    IntervalModel takes 'neumann' or 'dirichlet'; the boundary curve of a
    ConvexPlaneBody takes 'periodic'; a RevolutionBody3D yields the
    axisymmetric mode of its boundary Laplacian (see boundary_gap_revolution
    for the full azimuthal decomposition).
    """
    if isinstance(model, IntervalModel):
        if bc not in (NEUMANN, DIRICHLET):
            raise ValueError(f"interval operator needs neumann/dirichlet, got {bc}")
        if model.n_pts < 8:
            raise ValueError("operator assembly requires n_pts >= 8")
        h, b_face = _interval_flux_data(model)
        n = model.n_pts
        w = np.full(n, h)
        w[0] = w[-1] = h / 2.0
        measures = w * model.density
        lower = b_face / h / measures[1:]
        upper = b_face / h / measures[:-1]
        diag = np.zeros(n)
        diag[0] = -b_face[0] / h / measures[0]
        diag[-1] = -b_face[-1] / h / measures[-1]
        diag[1:-1] = -(b_face[:-1] + b_face[1:]) / h / measures[1:-1]
        return DiscreteOperator(
            kind="tridiagonal", bc=bc, n=n, weights=measures,
            symmetrizer=np.sqrt(measures), model_ref=model.label, h=h,
            lower=lower, diag=diag, upper=upper,
        )
    if isinstance(model, ConvexPlaneBody):
        if bc != PERIODIC:
            raise ValueError("a closed curve takes periodic conditions only")
        m = model.m
        if m < 8:
            raise ValueError("operator assembly requires at least 8 samples")
        r = model.curvature_radius
        ev = (np.exp(model.v_boundary) if model.v_boundary is not None
              else np.ones(m))
        d1 = fourier_diff_matrix(m)
        inner = d1 * (1.0 / (ev * r))[:, None]      # diag(e^{-V}/r) D
        dense = (ev / r)[:, None] * (d1 @ inner)    # diag(e^{V}/r) D (...)
        weights = model.boundary_weight() * model.d_angle
        return DiscreteOperator(
            kind="periodic", bc=PERIODIC, n=m, weights=weights,
            symmetrizer=np.sqrt(weights), model_ref=model.label,
            h=model.d_angle, dense=dense,
        )
    if isinstance(model, RevolutionBody3D):
        ops = _revolution_mode_operators(model, m_max=0)
        return ops[0]
    raise TypeError(f"cannot assemble a Laplacian for {type(model).__name__}")


def _revolution_mode_operators(body: RevolutionBody3D, m_max: int):
    """Sturm-Liouville operators of the boundary Laplacian per azimuthal mode.

    Unknowns sit at the cell centers of the profile grid (never at the
    poles); the face fluxes r exp(-V) vanish at the poles, which is the
    natural regularity condition.
    """
    h = body.h
    n = body.n_cells
    ev_face = np.exp(-body.v3d) if body.v3d is not None else np.ones(n + 1)
    flux = body.r * ev_face                      # at faces; zero at poles
    r_center = 0.5 * (body.r[:-1] + body.r[1:])
    w_center = h * 0.5 * (flux[:-1] + flux[1:])  # cell measure density wrt ds
    ops = []
    for mode in range(m_max + 1):
        lower = flux[1:-1] / h / w_center[1:]
        upper = flux[1:-1] / h / w_center[:-1]
        diag = -(flux[:-1] + flux[1:]) / h / w_center
        if mode > 0:
            diag = diag - (mode * mode) / r_center**2
        ops.append(DiscreteOperator(
            kind="tridiagonal", bc=NEUMANN, n=n,
            weights=2.0 * math.pi * w_center,
            symmetrizer=np.sqrt(2.0 * math.pi * w_center),
            model_ref=f"{body.label}/mode{mode}", h=h,
            lower=lower, diag=diag, upper=upper,
        ))
    return ops


def spectral_gap(op: DiscreteOperator, count: int = 1):
    """Smallest positive eigenvalue of -L and its eigenvector.

    Neumann and periodic operators have an exact zero mode (constants);
    the gap is the next eigenvalue.  Dirichlet operators restrict to the
    interior nodes first.  The eigenvector is normalized in the weighted
    norm and returned on the full grid.
    """
    try:
        if op.kind == "periodic":
            s = -op.deflated_symmetric()
            vals, vecs = eigh(s)
            idx = 1
        elif op.bc == DIRICHLET:
            diag, off = op.symmetric_form()
            vals, vecs = eigh_tridiagonal(-diag[1:-1], -off[1:-1],
                                          select="i",
                                          select_range=(0, max(count, 1)))
            idx = 0
        else:
            diag, off = op.symmetric_form()
            vals, vecs = eigh_tridiagonal(-diag, -off, select="i",
                                          select_range=(0, max(count, 1)))
            idx = 1
    except LinAlgError as exc:  # pragma: no cover - grid pathology
        raise ConvergenceFailure(f"eigensolve failed on {op.model_ref}") from exc
    lam = float(vals[idx])
    phi = vecs[:, idx]
    if op.bc == DIRICHLET:
        full = np.zeros(op.n)
        full[1:-1] = phi / op.symmetrizer[1:-1]
    else:
        full = phi / op.symmetrizer
    norm = math.sqrt(float(np.dot(op.weights * full, full)))
    return lam, full / norm


def eigenvalues(op: DiscreteOperator, count: int) -> np.ndarray:
    """Leading eigenvalues of -L (ascending), including any zero mode."""
    if op.kind == "periodic":
        s = -op.deflated_symmetric()
        vals = eigh(s, eigvals_only=True)
        return vals[:count]
    diag, off = op.symmetric_form()
    if op.bc == DIRICHLET:
        diag, off = diag[1:-1], off[1:-1]
    return eigh_tridiagonal(-diag, -off, eigvals_only=True, select="i",
                            select_range=(0, count - 1))


def solve_poisson(op: DiscreteOperator, f: np.ndarray, bc_data=None):
    """Solve L u = f under the operator's boundary condition.

    Dirichlet: bc_data = (u(a), u(b)).  Neumann/periodic: homogeneous flux;
    f is projected onto the compatible subspace (zero weighted mean) and
    the projection magnitude recorded.  Returns (u, info) where info holds
    'residual' (max |Lu - f| over solved rows), the scale-free
    'backward_error' = residual / (|L| |u| + |f|), and 'projection'.

    Raises SingularSystem when the compatibility defect exceeds 1e-6
    relative, which signals a caller bug rather than roundoff.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (op.n,):
        raise ValueError("f must match the operator's grid")
    info = {"projection": 0.0}
    if op.bc == DIRICHLET:
        ua, ub = (0.0, 0.0) if bc_data is None else bc_data
        rhs = f[1:-1].copy()
        rhs[0] -= op.lower[0] * ua
        rhs[-1] -= op.upper[-1] * ub
        ab = np.zeros((3, op.n - 2))
        ab[0, 1:] = op.upper[1:-1]
        ab[1, :] = op.diag[1:-1]
        ab[2, :-1] = op.lower[1:-1]
        inner = solve_banded((1, 1), ab, rhs)
        u = np.concatenate([[ua], inner, [ub]])
        resid = float(np.max(np.abs(op.apply(u)[1:-1] - f[1:-1])))
        info["residual"] = resid
        info["backward_error"] = resid / _system_scale(op, u, f)
        return u, info
    # Neumann / periodic: singular system, null space = constants
    mass = float(np.sum(op.weights))
    defect = float(np.dot(op.weights, f))
    scale = float(np.max(np.abs(f))) if np.max(np.abs(f)) > 0 else 1.0
    if abs(defect) / (mass * scale) > 1e-6:
        raise SingularSystem(
            f"compatibility defect {defect:.3e} exceeds tolerance; "
            "Neumann data must integrate to zero against the measure"
        )
    fproj = f - defect / mass
    info["projection"] = abs(defect)
    if op.kind == "periodic":
        # kernel holds constants plus (even m) the alternating mode; the
        # minimal-norm least-squares solution zeroes both components
        u, *_ = np.linalg.lstsq(op.dense, fproj, rcond=None)
    else:
        ab = np.zeros((3, op.n))
        ab[0, 1:] = op.upper
        ab[1, :] = op.diag
        ab[2, :-1] = op.lower
        # pin the first unknown to lift the constant null space
        ab[0, 1] = 0.0
        ab[1, 0] = 1.0
        rhs = fproj.copy()
        rhs[0] = 0.0
        u = solve_banded((1, 1), ab, rhs)
    u = u - float(np.dot(op.weights, u)) / mass
    resid = op.apply(u) - fproj
    if op.kind == "periodic":
        info["residual"] = float(np.max(np.abs(resid)))
    else:
        info["residual"] = float(np.max(np.abs(resid[1:])))
    info["backward_error"] = info["residual"] / _system_scale(op, u, fproj)
    return u, info


def _system_scale(op: DiscreteOperator, u: np.ndarray, f: np.ndarray) -> float:
    if op.kind == "periodic":
        opnorm = float(np.max(np.abs(op.dense)))
    else:
        opnorm = float(np.max(np.abs(op.diag)))
    return opnorm * float(np.max(np.abs(u))) + float(np.max(np.abs(f))) + 1e-300


def weighted_integral(samples: np.ndarray, domain) -> float:
    """Integral of samples against the weighted measure of the domain.

    Composite Simpson for interval and radial domains; full-period
    trapezoid (spectrally accurate) for closed curves; arclength Simpson
    for revolution boundaries.
    """
    samples = np.asarray(samples, dtype=float)
    if isinstance(domain, IntervalModel):
        if samples.shape != (domain.n_pts,):
            raise ValueError("sample length must match the grid")
        return simpson_uniform(samples * domain.density, domain.h)
    if isinstance(domain, RadialBall):
        if samples.shape != (domain.n_pts,):
            raise ValueError("sample length must match the grid")
        return simpson_uniform(samples * domain.volume_element(), domain.h)
    if isinstance(domain, ConvexPlaneBody):
        if samples.shape != (domain.m,):
            raise ValueError("sample length must match the angle grid")
        return periodic_trapezoid(samples * domain.boundary_weight(),
                                  domain.d_angle)
    if isinstance(domain, RevolutionBody3D):
        if samples.shape != domain.s.shape:
            raise ValueError("sample length must match the profile grid")
        return simpson_uniform(samples * domain.boundary_weight(), domain.h)
    raise TypeError(f"no quadrature rule for {type(domain).__name__}")


@dataclass(frozen=True)
class BoundaryGeometry:
    """Per-sample extrinsic data of a boundary hypersurface.

    For curves II is the scalar curvature; for revolution surfaces the
    two principal curvatures are kept separately and II reports their
    minimum.  `element` is the weighted line/area density against the
    sample parameter, matching weighted_integral's convention.
    """

    nu: np.ndarray
    II: np.ndarray
    H_g: np.ndarray
    H_mu: np.ndarray
    element: np.ndarray
    kappa1: Optional[np.ndarray] = None
    kappa2: Optional[np.ndarray] = None

    @property
    def sigma(self) -> float:
        """Uniform lower bound of II actually achieved on the samples."""
        return float(np.min(self.II))

    @property
    def xi(self) -> float:
        """Uniform lower bound of H_mu achieved on the samples."""
        return float(np.min(self.H_mu))


def boundary_geometry(body) -> BoundaryGeometry:
    """Extract nu, II, H_g, H_mu and the weighted element for a body."""
    if isinstance(body, ConvexPlaneBody):
        radius = body.curvature_radius
        curv = 1.0 / radius
        dvn = body.dv_normal if body.dv_normal is not None else 0.0
        return BoundaryGeometry(
            nu=body.normals(), II=curv, H_g=curv.copy(),
            H_mu=curv - dvn, element=body.boundary_weight(),
        )
    if isinstance(body, RevolutionBody3D):
        k1, k2 = body.principal_curvatures()
        rp, zp, _, _ = body.derivatives()
        nu = np.stack([-zp, rp], axis=1)          # (radial, axial) components
        hg = k1 + k2
        dvn = body.dv_normal if body.dv_normal is not None else 0.0
        return BoundaryGeometry(
            nu=nu, II=np.minimum(k1, k2), H_g=hg, H_mu=hg - dvn,
            element=body.boundary_weight(), kappa1=k1, kappa2=k2,
        )
    if isinstance(body, RadialBall):
        n, rr = body.n_ambient, body.r_outer
        curv = 1.0 / rr
        hg = (n - 1) / rr
        hmu = body.boundary_h_mu()
        one = np.ones(1)
        return BoundaryGeometry(
            nu=one.copy(), II=np.array([curv]), H_g=np.array([hg]),
            H_mu=np.array([hmu]), element=np.array([body.boundary_measure()]),
        )
    if isinstance(body, SphereCap):
        kg = body.geodesic_curvature()
        return BoundaryGeometry(
            nu=np.ones(1), II=np.array([kg]), H_g=np.array([kg]),
            H_mu=np.array([kg]), element=np.array([body.boundary_length()]),
        )
    raise TypeError(f"no boundary geometry for {type(body).__name__}")


def boundary_gap_revolution(body: RevolutionBody3D, m_max: int = 8):
    """Spectral gap of the boundary weighted Laplacian of a revolution body.

    Fourier decomposition in the rotation angle reduces the surface
    eigenproblem to 1-D Sturm-Liouville problems over the profile; the
    gap is the minimum over azimuthal modes 0..m_max, excluding the
    constant mode of the axisymmetric block.  Returns (lambda_1, mode).
    """
    ops = _revolution_mode_operators(body, m_max)
    best = math.inf
    best_mode = -1
    for mode, op in enumerate(ops):
        diag, off = op.symmetric_form()
        try:
            take = 1 if mode == 0 else 0
            vals = eigh_tridiagonal(-diag, -off, eigvals_only=True,
                                    select="i", select_range=(0, take))
        except LinAlgError as exc:  # pragma: no cover
            raise ConvergenceFailure(
                f"mode {mode} eigensolve failed on {body.label}") from exc
        lam = float(vals[-1])
        if lam < best:
            best, best_mode = lam, mode
    return best, best_mode
