"""Flat key = value configuration with bracketed sections.

The format is deliberately diff-friendly for regression fixtures:

    [suite]
    name = colesanti
    seed = 1234

    [sweep]
    check = sharpness
    param = beta_frac
    values = 0.9, 0.99, 0.999

Unknown sections or keys are rejected with the offending name; every
effective value, including defaults, is echoed into report output.
N values are spelled as plain numbers with `0` meaning theta = -inf and
`inf` meaning theta = 0.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict, Optional

from .errors import ConfigError
from .suites import SUITE_NAMES

WORKERS_ENV = "REILLY_LAB_WORKERS"

_SCHEMA = {
    "suite": {"name", "seed", "workers", "tol_scale", "out"},
    "sweep": {"check", "param", "values", "rho", "N", "case", "n_pts",
              "beta_trunc", "m", "t_end", "body", "phi_coeffs"},
    "flow": {"kind", "body", "phi_coeffs", "t_end", "dt", "m",
             "snapshot_every"},
}

_SWEEP_CHECKS = {
    "sharpness": {"beta_frac", "beta_trunc", "n_pts"},
    "lichnerowicz": {"N", "n_pts"},
    "flow-oracle": {"dt"},
}


def parse_config_text(text: str) -> Dict[str, Dict[str, str]]:
    sections: Dict[str, Dict[str, str]] = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith(";"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in _SCHEMA:
                raise ConfigError(f"unknown section [{current}] (line {lineno})")
            sections.setdefault(current, {})
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value at line {lineno}: {raw!r}")
        if current is None:
            raise ConfigError(f"key outside any [section] at line {lineno}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _SCHEMA[current]:
            raise ConfigError(f"unknown key {key!r} in section [{current}]")
        sections[current][key] = value.strip()
    return sections


@dataclass
class SuiteConfig:
    """Effective configuration of one CLI invocation."""

    suite: str = "all"
    seed: int = 1234
    workers: int = 1
    tol_scale: float = 1.0
    out: Optional[str] = None
    sweep: Dict[str, str] = field(default_factory=dict)
    flow: Dict[str, str] = field(default_factory=dict)

    def echo(self) -> dict:
        """Every effective parameter, defaults included."""
        return {
            "suite": self.suite,
            "seed": self.seed,
            "workers": self.workers,
            "tol_scale": self.tol_scale,
            "out": self.out if self.out is not None else "",
            "sweep": dict(sorted(self.sweep.items())),
            "flow": dict(sorted(self.flow.items())),
        }


def _to_int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from exc


def _to_float(value: str, key: str) -> float:
    try:
        return float(value)
    except ValueError as exc:
        raise ConfigError(f"{key} must be a number, got {value!r}") from exc


def load_config(path: Optional[str] = None,
                overrides: Optional[dict] = None) -> SuiteConfig:
    """Assemble the effective config: file, then CLI overrides, then env.

    The worker default honors the REILLY_LAB_WORKERS environment variable.
    """
    cfg = SuiteConfig()
    env_workers = os.environ.get(WORKERS_ENV)
    if env_workers is not None:
        cfg.workers = _to_int(env_workers, WORKERS_ENV)
    sections: Dict[str, Dict[str, str]] = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                sections = parse_config_text(handle.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    suite_section = sections.get("suite", {})
    if "name" in suite_section:
        cfg.suite = suite_section["name"]
    if "seed" in suite_section:
        cfg.seed = _to_int(suite_section["seed"], "seed")
    if "workers" in suite_section:
        cfg.workers = _to_int(suite_section["workers"], "workers")
    if "tol_scale" in suite_section:
        cfg.tol_scale = _to_float(suite_section["tol_scale"], "tol_scale")
    if "out" in suite_section:
        cfg.out = suite_section["out"]
    cfg.sweep = dict(sections.get("sweep", {}))
    cfg.flow = dict(sections.get("flow", {}))
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key == "suite":
            cfg.suite = value
        elif key == "seed":
            cfg.seed = int(value)
        elif key == "workers":
            cfg.workers = int(value)
        elif key == "tol_scale":
            cfg.tol_scale = float(value)
        elif key == "out":
            cfg.out = value
        elif key.startswith("sweep."):
            cfg.sweep[key.split(".", 1)[1]] = str(value)
        elif key.startswith("flow."):
            cfg.flow[key.split(".", 1)[1]] = str(value)
        else:
            raise ConfigError(f"unknown override {key!r}")
    if cfg.suite not in SUITE_NAMES:
        raise ConfigError(f"unknown suite {cfg.suite!r}; expected one of "
                          f"{', '.join(SUITE_NAMES)}")
    if cfg.workers < 1:
        raise ConfigError("workers must be >= 1")
    if cfg.tol_scale <= 0.0:
        raise ConfigError("tol_scale must be positive")
    return cfg


def validate_sweep(cfg: SuiteConfig) -> dict:
    """Parse and validate the [sweep] section into typed fields."""
    sweep = cfg.sweep
    if "check" not in sweep:
        raise ConfigError("sweep requires a 'check' key")
    check = sweep["check"]
    if check not in _SWEEP_CHECKS:
        raise ConfigError(f"unknown sweep check {check!r}; expected one of "
                          f"{', '.join(sorted(_SWEEP_CHECKS))}")
    if "param" not in sweep:
        raise ConfigError("sweep requires a 'param' key")
    param = sweep["param"]
    if param not in _SWEEP_CHECKS[check]:
        raise ConfigError(
            f"check {check!r} cannot sweep {param!r}; numeric fields: "
            f"{', '.join(sorted(_SWEEP_CHECKS[check]))}")
    if "values" not in sweep:
        raise ConfigError("sweep requires a 'values' key")
    raw_values = [v.strip() for v in sweep["values"].split(",") if v.strip()]
    if not raw_values:
        raise ConfigError("sweep values must be a non-empty comma list")
    out = {
        "check": check,
        "param": param,
        "values": raw_values,
        "rho": _to_float(sweep.get("rho", "1.0"), "rho"),
        "N": sweep.get("N", "5"),
        "case": sweep.get("case", "neumann"),
        "n_pts": _to_int(sweep.get("n_pts", "4001"), "n_pts"),
        "m": _to_int(sweep.get("m", "256"), "m"),
        "t_end": _to_float(sweep.get("t_end", "0.5"), "t_end"),
    }
    return out


def validate_flow(cfg: SuiteConfig) -> dict:
    flow = cfg.flow
    kind = flow.get("kind", "parallel-normal")
    if kind not in ("parallel-normal", "weingarten"):
        raise ConfigError(f"unknown flow kind {kind!r}")
    coeffs_text = flow.get("phi_coeffs", "1")
    try:
        coeffs = [float(c) for c in coeffs_text.split(",") if c.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad phi_coeffs {coeffs_text!r}") from exc
    if not coeffs:
        raise ConfigError("phi_coeffs must be a non-empty comma list")
    return {
        "kind": kind,
        "body": flow.get("body", "disk"),
        "phi_coeffs": coeffs,
        "t_end": _to_float(flow.get("t_end", "0.5"), "t_end"),
        "dt": _to_float(flow.get("dt", "1e-3"), "dt"),
        "m": _to_int(flow.get("m", "256"), "m"),
        "snapshot_every": _to_int(flow.get("snapshot_every", "10"),
                                  "snapshot_every"),
    }
