"""Deterministic CSV/JSON serialisation of result tables."""
from __future__ import annotations

import json
import math
from typing import Sequence


class RaggedTableError(ValueError):
    pass


def format_number(v) -> str:
    """Nine significant digits, bare exponent: ``1.00000000e0``, ``-2.5e-3`` style."""
    if isinstance(v, str):
        return v
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        v = float(v)
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    mant, exp = f"{v:.8e}".split("e")
    return f"{mant}e{int(exp)}"


def _check(rows, columns):
    for i, r in enumerate(rows):
        if len(r) != len(columns):
            raise RaggedTableError(f"row {i} has {len(r)} values, expected {len(columns)}")


def _json_value(v):
    if isinstance(v, str):
        return v
    v = float(v)
    return v if math.isfinite(v) else None


def emit_table(rows: Sequence[Sequence], columns: Sequence[str], fmt: str = "csv") -> bytes:
    rows = [list(r) for r in rows]
    _check(rows, columns)
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(format_number(v) for v in r) for r in rows]
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        objs = [{c: _json_value(v) for c, v in zip(columns, r)} for r in rows]
        return (json.dumps(objs, indent=1) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}; use csv or json")
