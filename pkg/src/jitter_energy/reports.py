"""Report serialisation: JSON-lines, CSV and JSON with 17 significant digits."""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

ROW_FIELDS = (
    "command",
    "trial",
    "check",
    "R",
    "gamma",
    "delta",
    "scaled",
    "coefficient_norm",
    "energy_closed_form",
    "energy_oracle",
    "oracle_tail_bound",
    "oracle_quadrature_tolerance",
    "parseval_residual",
    "c1",
    "c2",
    "lhs",
    "rhs",
    "slack",
    "status",
)

SWEEP_FIELDS = ("gamma", "c1", "observed_min", "observed_max", "c2", "trials", "status")
CURVE_FIELDS = ("theta", "g", "h")


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        # non-finite values have no JSON literal
        return format_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return _encode(obj)


def make_row(**values) -> dict:
    unknown = set(values) - set(ROW_FIELDS)
    if unknown:
        raise KeyError(f"unknown report fields {sorted(unknown)}")
    return {k: values.get(k) for k in ROW_FIELDS}


def jsonl_text(rows) -> str:
    return "".join(dumps(r) + "\n" for r in rows)


def csv_text(fields, rows) -> str:
    def cell(v):
        if isinstance(v, (float, np.floating)):
            return format_float(v)
        return "" if v is None else str(v)

    lines = [",".join(fields)]
    lines += [",".join(cell(r[f]) for f in fields) for r in rows]
    return "\n".join(lines) + "\n"


def sibling(path: Path, suffix: str) -> Path:
    """``out.csv`` -> ``out.<suffix>``."""
    return path.with_name(path.stem + "." + suffix)


def write_atomic(files: dict) -> None:
    """Write ``{path: text}``; each file appears only once fully written."""
    staged = []
    try:
        for path, text in files.items():
            path = Path(path)
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix="." + path.name, suffix=".tmp")
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
            staged.append((tmp, path))
        for tmp, path in staged:
            os.replace(tmp, path)
    finally:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
