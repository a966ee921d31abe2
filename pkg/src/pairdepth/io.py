"""Point-set CSV files and the versioned JSON experiment report.

CSV format: header ``x1,x2,...,xn``, one point per row, plain decimal
floats, UTF-8, LF line endings, no quoting.  Written floats use the shortest
round-tripping representation, so a written file parses back bit for bit.

Reports are JSON with ``schema_version`` "1"; every float is emitted with 17
significant digits so that golden files compare exactly.  The wall-clock
``timing_ms`` field is the only part expected to differ between runs.
"""

from __future__ import annotations

import json

import numpy as np

from .geometry import as_point_set

SCHEMA_VERSION = "1"


def write_point_csv(path, X) -> None:
    P = as_point_set(X) if np.asarray(X).size else np.asarray(X, dtype=float).reshape(0, -1)
    header = ",".join(f"x{i + 1}" for i in range(P.shape[1]))
    lines = [header]
    for row in P:
        lines.append(",".join(repr(float(v)) for v in row))
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def read_point_csv(path) -> np.ndarray:
    """Parse a point-set CSV; malformed content reports its line number."""
    if hasattr(path, "read"):
        lines = path.read().splitlines()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    if not lines:
        raise ValueError("empty point file: missing header")
    header = lines[0].split(",")
    expected = [f"x{i + 1}" for i in range(len(header))]
    if header != expected:
        raise ValueError(f"line 1: bad header {lines[0]!r}, expected {','.join(expected)!r}")
    dim = len(header)
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != dim:
            raise ValueError(f"line {lineno}: expected {dim} fields, got {len(fields)}")
        try:
            rows.append([float(f) for f in fields])
        except ValueError:
            raise ValueError(f"line {lineno}: non-numeric field in {line!r}") from None
    out = np.array(rows, dtype=float) if rows else np.empty((0, dim))
    if rows and not np.all(np.isfinite(out)):
        raise ValueError("point file contains non-finite values")
    return out


def _emit(value) -> str:
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if not np.isfinite(v):
            raise ValueError(f"cannot serialize non-finite float {v} in a report")
        return format(v, ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, np.ndarray):
        return _emit(value.tolist())
    if isinstance(value, dict):
        inner = ",".join(f"{json.dumps(str(k))}:{_emit(v)}" for k, v in value.items())
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_emit(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__} in a report")


def dumps_report(report: dict) -> str:
    """Serialize a report dict deterministically (insertion key order)."""
    return _emit(report) + "\n"


def make_report(command: str, params: dict, timing_ms: float, result: dict, bound: dict | None = None) -> dict:
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "timing_ms": timing_ms,
        "result": result,
    }
    if bound is not None:
        report["bound"] = bound
    return report


def bound_block(formula_name: str, bound_value: float, achieved_value, met: bool) -> dict:
    return {
        "formula_name": formula_name,
        "bound_value": float(bound_value),
        "achieved_value": achieved_value,
        "met": bool(met),
    }
