"""Parameter sweeps of alpha(|.|^p) and their CSV form (columns ``p,alpha``)."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, List

import numpy as np

from .symmetry import DEFAULT_TOL, alpha_power


@dataclass(frozen=True)
class SweepRow:
    p: float
    alpha: float


def format_float(x: float) -> str:
    """Shortest decimal that round-trips, without a trailing '.0'."""
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def sweep_grid(p_min: float, p_max: float, points: int, spacing: str = "log") -> np.ndarray:
    p_min, p_max = float(p_min), float(p_max)
    if not (1.0 < p_min < p_max and math.isfinite(p_max)):
        raise ValueError("need 1 < p_min < p_max < inf")
    if int(points) != points or points < 2:
        raise ValueError("points must be an integer >= 2")
    if spacing == "log":
        grid = np.exp(np.linspace(math.log(p_min), math.log(p_max), int(points)))
    elif spacing == "linear":
        grid = np.linspace(p_min, p_max, int(points))
    else:
        raise ValueError(f"spacing must be 'log' or 'linear', got {spacing!r}")
    grid[0], grid[-1] = p_min, p_max
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("grid is not strictly increasing; use fewer points")
    return grid


def sweep(p_min: float = 2.0, p_max: float = 1000.0, points: int = 200,
          spacing: str = "log", tol: float = DEFAULT_TOL) -> List[SweepRow]:
    return [SweepRow(float(p), alpha_power(float(p), tol).alpha)
            for p in sweep_grid(p_min, p_max, points, spacing)]


def write_csv(rows: Iterable[SweepRow], stream) -> None:
    stream.write("p,alpha\n")
    for row in rows:
        stream.write(f"{format_float(row.p)},{format_float(row.alpha)}\n")


def to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def read_csv(stream) -> List[SweepRow]:
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != ["p", "alpha"]:
        raise ValueError(f"unexpected header {header!r}")
    return [SweepRow(float(p), float(a)) for p, a in reader]
