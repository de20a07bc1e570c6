"""Command line front end: ``ringpursuit {solve,simulate,sweep,reach}``.

Scenario values come from an optional TOML config file and are overridden by
flags. Angles accept plain radians or a ``pi`` multiple such as ``1.6pi``.
Exit status: 0 success, 1 domain error, 2 usage or config syntax error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import re
import sys
from dataclasses import dataclass, field, replace
from typing import Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .core import (
    Direction,
    DomainError,
    EvaderIntent,
    NoBracket,
    NoConvergence,
    NoTangency,
    Policy,
    PursuerSpec,
    ScenarioParams,
    ToleranceConfig,
)
from .geometry import exc_start, point_capture_start, tac_start
from .reach import escape_set
from .sim import simulate
from .sweep import DEFAULT_VALUES, Varied, default_headings, sweep, to_csv as sweep_to_csv
from .tgc import solve_tgc
from .worst_case import REGIME_OF_KIND, worst_case_start

PROG = "ringpursuit"
HELP_WIDTH = 100


class ConfigError(ValueError):
    """Malformed config document or unknown key (usage-level error)."""


_ANGLE_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*(pi)?\s*$")


def parse_angle(text) -> float:
    if isinstance(text, (int, float)):
        return float(text)
    m = _ANGLE_RE.match(str(text))
    if not m or (m.group(1) is None and m.group(2) is None):
        raise DomainError("angle", "radians or a multiple of pi like 1.6pi", text)
    coef = float(m.group(1)) if m.group(1) is not None else 1.0
    return coef * math.pi if m.group(2) else coef


def parse_pursuer(text: str) -> PursuerSpec:
    """``ANGLE[:cw|ccw[:fixed|favorable]]``; ``fav`` alone means favorable starting CW."""
    parts = str(text).split(":")
    theta = parse_angle(parts[0])
    direction, policy = Direction.CW, Policy.FIXED
    for extra in parts[1:]:
        key = extra.strip().lower()
        if key in ("cw", "ccw"):
            direction = Direction.parse(key)
        elif key in ("fav", "favorable"):
            policy = Policy.FAVORABLE
        elif key == "fixed":
            policy = Policy.FIXED
        else:
            raise DomainError("pursuer", "ANGLE[:cw|ccw][:fixed|favorable]", text)
    return PursuerSpec(theta, direction, policy)


# --- config ---------------------------------------------------------------

_SCHEMA = {
    "scenario": {"R", "rho", "gamma", "r"},
    "tolerance": {"angle_tol", "range_tol", "time_step", "max_bisection_iters"},
    "evader": {"heading", "headings"},
    "pursuer": {"theta", "direction", "policy"},
    "sweep": {"vary", "values", "workers"},
    "reach": {"grid", "resolution"},
    "output": {"path", "svg"},
}


@dataclass
class RunConfig:
    scenario: ScenarioParams
    evader: Optional[EvaderIntent] = None
    headings: Optional[list] = None
    pursuers: list = field(default_factory=list)
    options: dict = field(default_factory=dict)


def _check_keys(section: str, table) -> None:
    if not isinstance(table, dict):
        raise ConfigError(f"{section}: expected a table")
    unknown = set(table) - _SCHEMA[section]
    if unknown:
        raise ConfigError(f"{section}.{sorted(unknown)[0]}: unknown key")


def _heading_grid(spec) -> list:
    if isinstance(spec, dict):
        extra = set(spec) - {"start", "stop", "count"}
        if extra:
            raise ConfigError(f"evader.headings.{sorted(extra)[0]}: unknown key")
        start = parse_angle(spec.get("start", "pi"))
        stop = parse_angle(spec.get("stop", "2pi"))
        count = int(spec.get("count", 73))
        if count < 1:
            raise DomainError("evader.headings.count", ">= 1", count)
        return [start + (stop - start) * k / max(count - 1, 1) for k in range(count)]
    return [parse_angle(h) for h in spec]


def parse_config(text: str) -> RunConfig:
    """Validate a TOML run configuration; errors name the offending key."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config syntax: {exc}") from exc
    for section in doc:
        if section not in _SCHEMA:
            raise ConfigError(f"{section}: unknown key")
    for section in ("scenario", "tolerance", "evader", "sweep", "reach", "output"):
        if section in doc:
            _check_keys(section, doc[section])

    scen = dict(doc.get("scenario", {}))
    missing = [k for k in ("rho", "gamma", "r") if k not in scen]
    if missing:
        raise ConfigError(f"scenario.{missing[0]}: required key missing")
    tol = ToleranceConfig(**doc.get("tolerance", {}))
    params = ScenarioParams(tol=tol, **{k: float(v) for k, v in scen.items()})

    evader, headings = None, None
    ev = doc.get("evader", {})
    if "heading" in ev:
        evader = EvaderIntent(parse_angle(ev["heading"]))
    if "headings" in ev:
        headings = _heading_grid(ev["headings"])

    pursuers = []
    raw = doc.get("pursuer", [])
    if isinstance(raw, dict):
        raw = [raw]
    for i, table in enumerate(raw):
        _check_keys("pursuer", table)
        if "theta" not in table:
            raise ConfigError(f"pursuer[{i}].theta: required key missing")
        pursuers.append(PursuerSpec(
            parse_angle(table["theta"]),
            Direction.parse(table.get("direction", "cw")),
            Policy(table.get("policy", "fixed")),
        ))

    options = {}
    for section in ("sweep", "reach", "output"):
        for key, val in doc.get(section, {}).items():
            options[f"{section}.{key}"] = val
    return RunConfig(params, evader, headings, pursuers, options)


# --- output helpers -------------------------------------------------------

SOLUTION_HEADER = ("kind", "regime", "heading_rad", "theta_f", "theta_pf", "theta_p0",
                   "t_c", "cap_x", "cap_y", "evader_travel", "travel")


def solution_row(sol, regime: str, travel: float) -> list:
    vals = (sol.psi_e, sol.theta_f, sol.theta_pf, sol.theta_p0, sol.t_c,
            sol.capture_point[0], sol.capture_point[1], sol.evader_travel, travel)
    return [sol.kind.value, regime] + [f"{v:.12g}" for v in vals]


def solutions_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SOLUTION_HEADER)
    w.writerows(rows)
    return buf.getvalue()


def read_solutions_csv(text: str) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames) != SOLUTION_HEADER:
        raise ValueError(f"unexpected solution header {reader.fieldnames}")
    out = []
    for row in reader:
        out.append({k: (v if k in ("kind", "regime") else float(v)) for k, v in row.items()})
    return out


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- argument parsing -----------------------------------------------------


def _formatter(prog):
    return argparse.HelpFormatter(prog, width=HELP_WIDTH)


def _scenario_flags(p):
    g = p.add_argument_group("scenario")
    g.add_argument("--config", metavar="FILE", help="TOML run configuration (flags override it)")
    g.add_argument("--R", dest="R", type=float, help="disk radius (default 1)")
    g.add_argument("--rho", type=float, help="capture radius, 0 <= rho < 2R")
    g.add_argument("--gamma", type=float, help="speed ratio v_P/v_E, 0 < gamma < 1")
    g.add_argument("--r", dest="r", type=float, help="evader start offset along +x, 0 <= r < R")
    g.add_argument("--time-step", type=float, help="simulation step (default: anti-tunnelling step)")
    g.add_argument("--out", metavar="FILE", help="write CSV here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG, formatter_class=_formatter, allow_abbrev=False,
        description="Capture geometry, worst-case starts, sweeps and escape sets for a ring pursuer.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("solve", formatter_class=_formatter, allow_abbrev=False, help="closed-form or worst-case capture start")
    _scenario_flags(p)
    p.add_argument("--kind", choices=("point", "exc", "tac", "tgc", "worst"), default="worst",
                   help="capture configuration to solve (default worst)")
    p.add_argument("--heading", type=parse_angle, help="evader heading (rad or e.g. 1.6pi)")
    p.add_argument("--dir", choices=("cw", "ccw"), default=None, help="pursuer direction (default cw)")

    p = sub.add_parser("simulate", formatter_class=_formatter, allow_abbrev=False, help="simulate one engagement to CSV")
    _scenario_flags(p)
    p.add_argument("--heading", type=parse_angle, help="evader heading")
    p.add_argument("--theta-p0", type=parse_angle, help="pursuer start angle (default: worst-case start)")
    p.add_argument("--dir", choices=("cw", "ccw"), default=None, help="pursuer direction (default cw)")
    p.add_argument("--full", action="store_true", help="keep sampling past capture up to the exit")

    p = sub.add_parser("sweep", formatter_class=_formatter, allow_abbrev=False, help="parametric capture-location study")
    _scenario_flags(p)
    p.add_argument("--vary", choices=("gamma", "rho", "r"), help="parameter to sweep")
    p.add_argument("--values", help="comma-separated values of the swept parameter")
    p.add_argument("--headings", type=int, default=None, help="heading grid size over [pi, 2pi] (default 73)")
    p.add_argument("--dir", choices=("cw", "ccw"), default=None, help="pursuer direction (default cw)")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default 1)")
    p.add_argument("--svg", metavar="FILE", help="also write a capture-location scatter")

    p = sub.add_parser("reach", formatter_class=_formatter, allow_abbrev=False, help="escape/capture heading intervals")
    _scenario_flags(p)
    p.add_argument("--pursuer", action="append", type=parse_pursuer, metavar="ANGLE[:cw|ccw][:fav]",
                   help="pursuer start and direction; repeat for several pursuers")
    p.add_argument("--grid", type=int, default=None, help="initial heading grid (default 720)")
    p.add_argument("--resolution", type=float, default=None, help="boundary tolerance in rad (default 1e-6)")
    p.add_argument("--svg", metavar="FILE", help="also write the escape-set figure")
    return parser


_DEFAULT_SCENARIO = {"rho": 0.5, "gamma": 0.5, "r": 0.4}


def _resolve(args) -> RunConfig:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = parse_config(fh.read())
    else:
        cfg = RunConfig(ScenarioParams(**_DEFAULT_SCENARIO))
    over = {k: getattr(args, k) for k in ("R", "rho", "gamma", "r") if getattr(args, k, None) is not None}
    params = replace(cfg.scenario, **over)
    if args.time_step is not None:
        params = replace(params, tol=replace(params.tol, time_step=args.time_step))
    cfg.scenario = params
    return cfg


def _direction(args, default=Direction.CW) -> Direction:
    return Direction.parse(args.dir) if args.dir else default


def _heading(args, cfg) -> float:
    if getattr(args, "heading", None) is not None:
        return args.heading
    if cfg.evader is not None:
        return cfg.evader.psi_e
    raise ConfigError("heading: required (flag --heading or [evader] heading)")


def _cmd_solve(args, cfg):
    params = cfg.scenario
    psi = _heading(args, cfg)
    d = _direction(args, cfg.pursuers[0].direction if cfg.pursuers else Direction.CW)
    if args.kind == "worst":
        wc = worst_case_start(params, psi, d)
        row = solution_row(wc.solution, wc.regime.value, wc.travel)
    else:
        fn = {"point": point_capture_start, "exc": exc_start, "tac": tac_start, "tgc": solve_tgc}[args.kind]
        sol = fn(params, psi, d)
        row = solution_row(sol, REGIME_OF_KIND[sol.kind].value, sol.setback)
    _emit(solutions_to_csv([row]), args.out or cfg.options.get("output.path"))


def _cmd_simulate(args, cfg):
    params = cfg.scenario
    psi = _heading(args, cfg)
    if args.theta_p0 is not None:
        pursuer = PursuerSpec(args.theta_p0, _direction(args))
    elif cfg.pursuers:
        pursuer = cfg.pursuers[0]
        if args.dir:
            pursuer = replace(pursuer, direction=_direction(args))
    else:
        d = _direction(args)
        pursuer = PursuerSpec(worst_case_start(params, psi, d).solution.theta_p0, d)
    traj = simulate(params, EvaderIntent(psi), pursuer, stop_at_capture=not args.full)
    _emit(traj.to_csv(), args.out or cfg.options.get("output.path"))
    print(str(traj.outcome), file=sys.stderr)


def _parse_values(text) -> list:
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise DomainError("values", "comma-separated numbers", text) from None


def _cmd_sweep(args, cfg):
    params = cfg.scenario
    vary = Varied.parse(args.vary or cfg.options.get("sweep.vary", "gamma"))
    if args.values is not None:
        values = _parse_values(args.values)
    elif "sweep.values" in cfg.options:
        values = _parse_values(cfg.options["sweep.values"])
    else:
        values = list(DEFAULT_VALUES[vary])
    if args.headings is not None:
        headings = default_headings(args.headings)
    elif cfg.headings is not None:
        headings = cfg.headings
    else:
        headings = default_headings()
    # validate every value up front so bad input is a domain error, not an ERROR row
    for v in values:
        replace(params, **{vary.value: v})
    workers = args.workers or int(cfg.options.get("sweep.workers", 1))
    records = sweep(params, vary, values, headings, _direction(args), workers=workers)
    _emit(sweep_to_csv(records), args.out or cfg.options.get("output.path"))
    svg = args.svg or cfg.options.get("output.svg")
    if svg:
        from .plots import sweep_figure

        sweep_figure(records, params, svg)


def _cmd_reach(args, cfg):
    params = cfg.scenario
    pursuers = args.pursuer or cfg.pursuers
    if not pursuers:
        raise ConfigError("pursuer: at least one --pursuer or [[pursuer]] table is required")
    grid = args.grid or int(cfg.options.get("reach.grid", 720))
    resolution = args.resolution or float(cfg.options.get("reach.resolution", 1e-6))
    if grid < 2:
        raise DomainError("grid", ">= 2", grid)
    if not resolution > 0:
        raise DomainError("resolution", "> 0", resolution)
    intervals = escape_set(params, pursuers, grid=grid, resolution=resolution)
    _emit(intervals.to_csv(), args.out or cfg.options.get("output.path"))
    svg = args.svg or cfg.options.get("output.svg")
    if svg:
        from .plots import escape_set_figure

        escape_set_figure(intervals, params, pursuers, svg)


COMMANDS = {"solve": _cmd_solve, "simulate": _cmd_simulate, "sweep": _cmd_sweep, "reach": _cmd_reach}


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _resolve(args)
        COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, NoTangency, NoBracket, NoConvergence) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run_command())
