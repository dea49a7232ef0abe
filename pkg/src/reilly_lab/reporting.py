"""Deterministic JSON and CSV emission.

All floating-point numbers are rendered with 17 significant digits and
dictionary keys are emitted in a fixed order, so two runs of the same
configuration produce byte-identical output.  Non-finite values are
rendered as the strings "inf", "-inf" and "nan" (valid JSON, unlike the
bare tokens).
"""

from __future__ import annotations

import math
from typing import Iterable, List

from .checks import CheckReport

SCHEMA_VERSION = "1"


def format_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    v = float(x)
    if math.isnan(v):
        return '"nan"'
    if math.isinf(v):
        return '"inf"' if v > 0 else '"-inf"'
    return format(v, ".17g")


def _json_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, str):
        return _json_string(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return format_number(value)
    if isinstance(value, dict):
        inner = ",".join(
            f"{_json_string(str(k))}:{_json_value(v)}"
            for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))
        )
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_json_value(v) for v in value) + "]"
    # numpy scalars and anything float-like
    try:
        return format_number(float(value))
    except (TypeError, ValueError):
        return _json_string(str(value))


def _json_string(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def check_to_json(report: CheckReport) -> str:
    fields = [
        ("name", _json_string(report.name)),
        ("params", _json_value(report.params)),
        ("lhs", format_number(report.lhs)),
        ("rhs", format_number(report.rhs)),
        ("slack", format_number(report.slack)),
        ("tolerance", format_number(report.tolerance)),
        ("pass", _json_value(report.passed)),
        ("grids", _json_value([list(g) for g in report.grids])),
        ("order_estimate", _json_value(report.order_estimate)),
    ]
    return "{" + ",".join(f"{_json_string(k)}:{v}" for k, v in fields) + "}"


def emit_report(reports: Iterable[CheckReport], config_echo: dict,
                version: str = SCHEMA_VERSION) -> str:
    """Full JSON document: {version, config_echo, checks: [...]}."""
    checks = ",".join(check_to_json(r) for r in reports)
    return ("{" + f"{_json_string('version')}:{_json_string(version)},"
            f"{_json_string('config_echo')}:{_json_value(config_echo)},"
            f"{_json_string('checks')}:[{checks}]" + "}\n")


def overall_pass(reports: Iterable[CheckReport]) -> bool:
    return all(r.gate() for r in reports)


def sweep_csv(param: str, values: List[str],
              rows: List[List[CheckReport]]) -> str:
    """One row per swept value; columns flatten every check in name order."""
    names = sorted({r.name for row in rows for r in row})
    header = [param]
    for name in names:
        header.extend([f"{name}:lhs", f"{name}:rhs", f"{name}:slack",
                       f"{name}:pass"])
    lines = [",".join(header)]
    for value, row in zip(values, rows):
        by_name = {r.name: r for r in row}
        cells = [str(value)]
        for name in names:
            rep = by_name.get(name)
            if rep is None:
                cells.extend(["", "", "", ""])
            else:
                passed = rep.passed
                cells.extend([
                    format(rep.lhs, ".17g"), format(rep.rhs, ".17g"),
                    format(rep.slack, ".17g"),
                    "" if passed is None else str(passed).lower(),
                ])
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def flow_csv(states) -> str:
    """Trajectory dump: t, marker index, coordinates, speed, curvature, normal."""
    dim = states[0].points.shape[1]
    if dim == 2:
        header = "t,idx,x,y,phi,kappa,nux,nuy"
    else:
        header = "t,idx,x,y,z,phi,kappa,nux,nuy,nuz"
    lines = [header]
    for state in states:
        for i in range(state.points.shape[0]):
            cells = [format(state.t, ".17g"), str(i)]
            cells.extend(format(c, ".17g") for c in state.points[i])
            cells.append(format(state.phi[i], ".17g"))
            cells.append(format(state.kappa[i], ".17g"))
            cells.extend(format(c, ".17g") for c in state.normals[i])
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
