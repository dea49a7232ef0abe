"""Command-line interface: verify / sweep / flow.

Exit codes: 0 all pass-required checks passed, 1 check failure,
2 configuration error, 3 internal error.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import List, Optional

from . import __version__
from .bodies import ConvexPlaneBody, SphereCap
from .config import SuiteConfig, load_config, validate_flow, validate_sweep
from .dimension import theta_from_config_n
from .errors import ConfigError, ReillyLabError
from .flows import (concavity_check, hausdorff_points, latitude_circle,
                    minkowski_sum_support, parallel_normal_flow,
                    weingarten_wave)
from .inequalities import check_lichnerowicz, sharpness_ratio
from .models import build_gaussian_interval, build_model_density
from .presets import body_from_spec, disk_body, model_density_params
from .reporting import emit_report, flow_csv, overall_pass, sweep_csv
from .suites import run_suite_checks
from .trig import TrigPolynomial

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_CONFIG = 2
EXIT_INTERNAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reilly-lab",
        description="Numerical verification lab for weighted-manifold "
                    "Poincare and Brunn-Minkowski inequalities.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a key = value config file")
    common.add_argument("--out", help="output path (JSON for verify, CSV "
                                      "for sweep/flow)")
    common.add_argument("--tol-scale", type=float, dest="tol_scale",
                        help="multiply every tolerance by this factor")
    common.add_argument("--workers", type=int,
                        help="concurrent check workers (default 1 or "
                             "REILLY_LAB_WORKERS)")
    common.add_argument("--seed", type=int, help="corpus seed (default 1234)")

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run a named check suite")
    p_verify.add_argument("--suite", help="one of reilly, bln, spectral, "
                                          "colesanti, boundary, flows, "
                                          "isoperimetric, all")

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="sweep one numeric parameter of a check")
    p_sweep.add_argument("--check", help="sharpness | lichnerowicz | flow-oracle")
    p_sweep.add_argument("--param", help="parameter to sweep")
    p_sweep.add_argument("--values", help="comma-separated values")

    p_flow = sub.add_parser("flow", parents=[common],
                            help="run a geometric flow and dump trajectories")
    p_flow.add_argument("--kind", help="parallel-normal | weingarten")
    p_flow.add_argument("--body", help="disk | ellipse:a,b | wavy | cap:r")
    p_flow.add_argument("--phi-coeffs", dest="phi_coeffs",
                        help="cosine coefficients a0,a1,... of the speed")
    p_flow.add_argument("--t-end", dest="t_end", type=float)
    p_flow.add_argument("--dt", type=float)
    p_flow.add_argument("--m", type=int, help="marker count")
    return parser


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        try:
            with open(path, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
        except OSError as exc:
            raise ConfigError(f"cannot write {path}: {exc}") from exc


def _cmd_verify(args) -> int:
    cfg = load_config(args.config, overrides={
        "suite": args.suite, "seed": args.seed, "workers": args.workers,
        "tol_scale": args.tol_scale, "out": args.out,
    })
    reports = run_suite_checks(cfg.suite, seed=cfg.seed, workers=cfg.workers,
                               tol_scale=cfg.tol_scale)
    document = emit_report(reports, cfg.echo())
    if cfg.out:
        _write(cfg.out, document)
    else:
        sys.stdout.write(document)
    passed = sum(1 for r in reports if r.passed is True)
    failed = [r.name for r in reports if r.passed is False]
    diag = sum(1 for r in reports if r.passed is None)
    print(f"# suite={cfg.suite} checks={len(reports)} passed={passed} "
          f"failed={len(failed)} diagnostic={diag}", file=sys.stderr)
    for name in failed:
        print(f"# FAIL {name}", file=sys.stderr)
    return EXIT_OK if overall_pass(reports) else EXIT_CHECK_FAILURE


def _sweep_rows(spec: dict, cfg: SuiteConfig):
    check = spec["check"]
    rows = []
    for raw in spec["values"]:
        if check == "sharpness":
            value = float(raw)
            kwargs = {"rho": spec["rho"],
                      "n_value": float(spec["N"]),
                      "variant": spec["case"]}
            if spec["param"] == "beta_frac":
                params = model_density_params(beta_frac=value, **kwargs)
                n_pts = spec["n_pts"]
            elif spec["param"] == "beta_trunc":
                params = model_density_params(beta_trunc=value, **kwargs)
                n_pts = spec["n_pts"]
            else:  # n_pts
                params = model_density_params(**kwargs)
                n_pts = int(value)
            rows.append([sharpness_ratio(params, case=spec["case"],
                                         n_pts=n_pts)])
        elif check == "lichnerowicz":
            theta = theta_from_config_n(raw if spec["param"] == "N"
                                        else spec["N"])
            n_pts = int(float(raw)) if spec["param"] == "n_pts" else spec["n_pts"]
            rho = spec["rho"]
            if theta.is_infinite_n:
                model = build_gaussian_interval(1.0 / math.sqrt(rho), 6.0, n_pts)
            else:
                nval = theta.n_value
                params = model_density_params(
                    rho, nval, beta_trunc=8.0 if rho / (nval - 1) < 0 else None)
                model = build_model_density(params, n_pts)
            rows.append([check_lichnerowicz(model, rho, theta,
                                            case=spec["case"])])
        else:  # flow-oracle: space-time refinement locked, m ~ 1/dt
            dt = float(raw)
            m = max(16, int(round(spec["m"] * (1e-3 / dt))))
            m += m % 2
            disk = disk_body(m=m)
            phi = TrigPolynomial((1.0, 0.0, 0.12, 0.0, 0.02))
            from .bodies import build_plane_body
            speed_body = build_plane_body(phi, m=m, label="speed-body")
            res = parallel_normal_flow(disk, phi, spec["t_end"], dt,
                                       snapshot_every=10**9)
            target = minkowski_sum_support(disk, speed_body, spec["t_end"])
            dist = hausdorff_points(res.states[-1].points, target.points())
            from .checks import from_identity
            rows.append([from_identity("flow-vs-oracle", residual=dist,
                                       tolerance=1e-4, lhs=dist, rhs=0.0,
                                       params={"dt": dt, "m": m})])
    return rows


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config, overrides={
        "seed": args.seed, "workers": args.workers,
        "tol_scale": args.tol_scale, "out": args.out,
        "sweep.check": args.check, "sweep.param": args.param,
        "sweep.values": args.values,
    })
    spec = validate_sweep(cfg)
    rows = _sweep_rows(spec, cfg)
    if cfg.tol_scale != 1.0:
        rows = [[r.with_tol_scale(cfg.tol_scale) for r in row] for row in rows]
    text = sweep_csv(spec["param"], spec["values"], rows)
    _write(cfg.out, text)
    ok = all(r.gate() for row in rows for r in row)
    return EXIT_OK if ok else EXIT_CHECK_FAILURE


def _cmd_flow(args) -> int:
    cfg = load_config(args.config, overrides={
        "seed": args.seed, "workers": args.workers,
        "tol_scale": args.tol_scale, "out": args.out,
        "flow.kind": args.kind, "flow.body": args.body,
        "flow.phi_coeffs": args.phi_coeffs,
        "flow.t_end": args.t_end, "flow.dt": args.dt, "flow.m": args.m,
    })
    spec = validate_flow(cfg)
    phi = TrigPolynomial.from_flat(spec["phi_coeffs"])
    body = body_from_spec(spec["body"], m=spec["m"])
    if spec["kind"] == "weingarten":
        if not isinstance(body, ConvexPlaneBody):
            raise ConfigError("the Weingarten wave runs on plane bodies")
        result = weingarten_wave(body, phi, spec["t_end"], spec["dt"],
                                 snapshot_every=spec["snapshot_every"])
    else:
        if isinstance(body, SphereCap):
            body = latitude_circle(body.r_cap, m=spec["m"])
        elif not isinstance(body, ConvexPlaneBody):
            raise ConfigError(
                "the parallel normal flow runs on plane bodies or caps")
        result = parallel_normal_flow(body, phi, spec["t_end"], spec["dt"],
                                      snapshot_every=spec["snapshot_every"])
    reports = []
    if result.series is not None:
        reports.append(concavity_check(result.series, name="flow-concavity"))
    from .checks import from_inequality
    reports.append(from_inequality(
        "flow-alive", lhs=1.0, rhs=1.0 if result.alive else 0.0,
        tolerance=0.0,
        params={"death_reason": result.death_reason or "",
                "normal_drift": result.normal_drift,
                **{k: v for k, v in result.diagnostics.items()}},
    ))
    document = emit_report(sorted(reports, key=lambda r: r.name), cfg.echo())
    sys.stdout.write(document)
    if cfg.out:
        _write(cfg.out, flow_csv(result.states))
    return EXIT_OK if all(r.gate() for r in reports) else EXIT_CHECK_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "flow":
            return _cmd_flow(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ReillyLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
