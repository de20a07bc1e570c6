"""Parametric study of worst-case capture locations over speed ratio, capture radius and start offset."""

from __future__ import annotations

import csv
import enum
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .core import Direction, ScenarioParams
from .worst_case import worst_case_start


class Varied(enum.Enum):
    GAMMA = "gamma"
    RHO = "rho"
    RSTART = "r"

    @classmethod
    def parse(cls, value) -> "Varied":
        if isinstance(value, Varied):
            return value
        aliases = {"gamma": cls.GAMMA, "rho": cls.RHO, "r": cls.RSTART, "rstart": cls.RSTART}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"vary: must be one of gamma, rho, r (got {value!r})") from None


def default_headings(n: int = 73) -> np.ndarray:
    """Uniform grid over the bottom half of the heading circle, [pi, 2pi]."""
    return np.linspace(math.pi, 2 * math.pi, n)


DEFAULT_VALUES = {
    Varied.GAMMA: (0.3, 0.5, 0.7),
    Varied.RHO: (0.5, 0.3, 0.1, 0.0),
    Varied.RSTART: (0.4, 0.2, 0.0),
}


@dataclass(frozen=True)
class SweepRecord:
    varied_param: Varied
    value: float
    heading: float
    capture_point: tuple
    capture_radius_from_center: float
    theta_pf: float
    regime: str
    error: Optional[str] = None


CSV_HEADER = ("param", "value", "heading_rad", "cap_x", "cap_y", "cap_r", "theta_pf", "regime")


def _cell(args):
    base, varied, value, heading, direction = args
    try:
        params = replace(base, **{varied.value: value})
        wc = worst_case_start(params, heading, direction)
    except (ValueError, ArithmeticError) as exc:
        nan = float("nan")
        return SweepRecord(varied, value, heading, (nan, nan), nan, nan, "ERROR", str(exc))
    x, y = wc.solution.capture_point
    return SweepRecord(varied, value, heading, (x, y), math.hypot(x, y), wc.solution.theta_pf, wc.regime.value)


def sweep(params_base: ScenarioParams, varied, values, headings=None, direction=Direction.CW,
          workers: int = 1) -> list[SweepRecord]:
    """Worst-case capture for every (value, heading) cell, value-major order.

    Cell failures are recorded in the row (regime ``ERROR``) and never abort the sweep.
    """
    varied = Varied.parse(varied)
    direction = Direction.parse(direction)
    headings = default_headings() if headings is None else headings
    cells = [(params_base, varied, float(v), float(h), direction) for v in values for h in headings]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_cell, cells, chunksize=16))
    return [_cell(c) for c in cells]


def mean_capture_radius(records, value: float) -> float:
    rs = [rec.capture_radius_from_center for rec in records if rec.value == value and rec.error is None]
    return float(np.mean(rs))


def regime_fraction(records, value: float, regime: str) -> float:
    rows = [rec for rec in records if rec.value == value and rec.error is None]
    return sum(rec.regime == regime for rec in rows) / len(rows)


def to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow([
            rec.varied_param.value,
            f"{rec.value:.12g}",
            f"{rec.heading:.12g}",
            f"{rec.capture_point[0]:.12g}",
            f"{rec.capture_point[1]:.12g}",
            f"{rec.capture_radius_from_center:.12g}",
            f"{rec.theta_pf:.12g}",
            rec.regime,
        ])
    return buf.getvalue()


def read_csv(text: str) -> list[SweepRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if tuple(rows[0]) != CSV_HEADER:
        raise ValueError(f"unexpected sweep header {rows[0]}")
    out = []
    for param, value, heading, x, y, cap_r, theta_pf, regime in rows[1:]:
        out.append(SweepRecord(Varied.parse(param), float(value), float(heading), (float(x), float(y)),
                               float(cap_r), float(theta_pf), regime))
    return out
