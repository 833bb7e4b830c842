"""Deterministic text persistence: CSV tables and canonical JSON.

Floats are printed with 17 significant digits so every table round-trips
bit-for-bit; booleans are the words true/false; no timestamps or other
run-dependent noise ever enters an output file.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .grid import GridFunction

Cell = Union[float, bool, str, int]


def format_cell(v: Cell) -> str:
    if isinstance(v, bool) or isinstance(v, np.bool_):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return str(v)


def parse_cell(s: str) -> Cell:
    if s == "true":
        return True
    if s == "false":
        return False
    try:
        return float(s)
    except ValueError:
        return s


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence[Cell]]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_cell(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path) -> Tuple[List[str], List[Tuple[Cell, ...]]]:
    text = Path(path).read_text()
    lines = [ln for ln in text.split("\n") if ln != ""]
    header = lines[0].split(",")
    rows = [tuple(parse_cell(tok) for tok in ln.split(",")) for ln in lines[1:]]
    return header, rows


def write_snapshots(path, snaps: Sequence[Tuple[float, GridFunction]]) -> None:
    """Long-format solution table, one (t, x, u) row per node per snapshot."""
    def rows():
        for t, g in snaps:
            x = g.x
            for i in range(g.n):
                yield (float(t), float(x[i]), float(g.values[i]))
    write_csv(path, ("t", "x", "u"), rows())


def write_profile(path, x: np.ndarray, values: np.ndarray) -> None:
    write_csv(path, ("x", "S"),
              ((float(a), float(b)) for a, b in zip(x, values)))


def write_z_table(path, points) -> None:
    """Rows of cubic-wave evaluations (ZPoint instances)."""
    write_csv(path, ("t", "x", "z", "zx", "zxx", "zxxx"),
              ((p.t, p.x, p.z, p.zx, p.zxx, p.zxxx) for p in points))


def write_sweep(path, outcomes) -> None:
    """Per-viscosity errors of a zoom or rate sweep (ZoomOutcome instances)."""
    write_csv(path, ("eps", "sup_error", "l1_error", "shift"),
              ((o.eps, o.sup_error, o.l1_error, o.shift) for o in outcomes))


def write_audit(path, rows: Iterable[Tuple[str, float, float, bool]]) -> None:
    write_csv(path, ("check", "t", "margin", "pass"), rows)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def write_summary(path, payload: dict) -> None:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    Path(path).write_text(
        json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n")


def read_summary(path) -> dict:
    return json.loads(Path(path).read_text())
