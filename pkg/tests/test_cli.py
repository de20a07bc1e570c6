import argparse
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ringpursuit import ScenarioParams, worst_case_start
from ringpursuit.cli import (
    ConfigError,
    build_parser,
    parse_angle,
    parse_config,
    parse_pursuer,
    read_solutions_csv,
    run_command,
)
from ringpursuit.core import Direction, DomainError, Policy
from ringpursuit.reach import HeadingIntervalSet
from ringpursuit.sim import read_trajectory_csv
from ringpursuit.sweep import read_csv as read_sweep_csv

GOLDEN = Path(__file__).parent / "golden"
MINIMAL = """
[scenario]
R = 1.0
rho = 0.5
gamma = 0.5
r = 0.4
"""


def test_parse_angle():
    assert parse_angle("1.6pi") == pytest.approx(1.6 * math.pi)
    assert parse_angle("pi") == pytest.approx(math.pi)
    assert parse_angle("2*pi") == pytest.approx(2 * math.pi)
    assert parse_angle("5.0265") == 5.0265
    assert parse_angle(-1) == -1.0
    with pytest.raises(DomainError):
        parse_angle("east")


def test_parse_pursuer():
    p = parse_pursuer("1.5708:ccw:fav")
    assert p.theta_p0 == 1.5708 and p.direction is Direction.CCW and p.policy is Policy.FAVORABLE
    p = parse_pursuer("0.5pi")
    assert p.direction is Direction.CW and p.policy is Policy.FIXED
    with pytest.raises(DomainError):
        parse_pursuer("1.0:up")


def test_minimal_config_fills_defaults():
    cfg = parse_config(MINIMAL)
    assert cfg.scenario == ScenarioParams(rho=0.5, gamma=0.5, r=0.4)
    assert cfg.evader is None and cfg.headings is None and cfg.pursuers == []
    assert cfg.scenario.tol.angle_tol == 1e-10


def test_full_config():
    cfg = parse_config(MINIMAL + """
[tolerance]
time_step = 0.005
[evader]
heading = "1.6pi"
headings = {start = "pi", stop = "2pi", count = 5}
[[pursuer]]
theta = "0.5pi"
direction = "ccw"
policy = "favorable"
[[pursuer]]
theta = 4.7124
[reach]
grid = 90
""")
    assert cfg.scenario.dt == 0.005
    assert cfg.evader.psi_e == pytest.approx(1.6 * math.pi)
    assert cfg.headings == pytest.approx([math.pi * (1 + k / 4) for k in range(5)])
    assert [p.direction for p in cfg.pursuers] == [Direction.CCW, Direction.CW]
    assert cfg.pursuers[0].policy is Policy.FAVORABLE
    assert cfg.options == {"reach.grid": 90}


def test_gamma_domain_violation_names_key():
    with pytest.raises(DomainError) as exc:
        parse_config(MINIMAL.replace("gamma = 0.5", "gamma = 1.2"))
    assert exc.value.key == "gamma"
    assert str(exc.value).startswith("gamma:")


def test_duplicate_key_is_syntax_error():
    with pytest.raises(ConfigError, match="syntax"):
        parse_config(MINIMAL + "rho = 0.3\n")


@pytest.mark.parametrize("doc, key", [
    (MINIMAL + "speed = 2\n", "scenario.speed"),
    (MINIMAL + "[display]\ncolor = 1\n", "display"),
    (MINIMAL + "[[pursuer]]\ntheta = 1\nspin = 2\n", "pursuer.spin"),
    ("[scenario]\nrho = 0.5\ngamma = 0.5\n", "scenario.r"),
])
def test_unknown_or_missing_keys_named(doc, key):
    with pytest.raises(ConfigError, match=key.replace(".", r"\.")):
        parse_config(doc)


def test_solve_worst_case_row(tmp_path, capsys):
    out = tmp_path / "solve.csv"
    argv = ["solve", "--kind", "worst", "--heading", "5.0265", "--rho", "0.5", "--gamma", "0.5",
            "--r", "0.4", "--dir", "cw", "--out", str(out)]
    assert run_command(argv) == 0
    rows = read_solutions_csv(out.read_text())
    assert len(rows) == 1 and rows[0]["regime"] == "TGC"
    wc = worst_case_start(ScenarioParams(rho=0.5, gamma=0.5, r=0.4), 5.0265, Direction.CW)
    assert rows[0]["theta_p0"] == pytest.approx(wc.solution.theta_p0, abs=1e-10)
    assert rows[0]["travel"] == pytest.approx(wc.travel, abs=1e-10)
    assert rows[0]["t_c"] == pytest.approx(wc.solution.t_c, abs=1e-10)


@pytest.mark.parametrize("kind, regime", [("exc", "EXC"), ("tac", "TAC"), ("tgc", "TGC")])
def test_solve_each_kind(capsys, kind, regime):
    assert run_command(["solve", "--kind", kind, "--heading", "1.6pi"]) == 0
    rows = read_solutions_csv(capsys.readouterr().out)
    assert rows[0]["regime"] == regime


def test_solve_point_kind(capsys):
    assert run_command(["solve", "--kind", "point", "--heading", "pi", "--rho", "0"]) == 0
    assert read_solutions_csv(capsys.readouterr().out)[0]["theta_p0"] == pytest.approx(math.pi + 0.7)


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text(MINIMAL + '[evader]\nheading = "1.6pi"\n')
    assert run_command(["solve", "--config", str(cfg), "--kind", "exc"]) == 0
    base = read_solutions_csv(capsys.readouterr().out)[0]
    assert base["theta_p0"] == pytest.approx(6.32276, abs=1e-5)
    assert run_command(["solve", "--config", str(cfg), "--kind", "exc", "--rho", "0.3"]) == 0
    assert read_solutions_csv(capsys.readouterr().out)[0]["theta_p0"] != base["theta_p0"]


def test_exit_codes(tmp_path, capsys):
    assert run_command(["solve", "--heading", "4", "--gamma", "1.2"]) == 1
    err = capsys.readouterr().err
    assert "gamma" in err and len(err.strip().splitlines()) == 1
    assert run_command(["solve", "--kind", "tac", "--heading", "1.6pi", "--dir", "ccw"]) == 1
    assert run_command(["solve", "--bogus"]) == 2
    assert run_command([]) == 2
    assert run_command(["solve"]) == 2
    bad = tmp_path / "bad.toml"
    bad.write_text(MINIMAL + "rho = 0.1\n")
    assert run_command(["solve", "--config", str(bad), "--heading", "4"]) == 2
    assert run_command(["solve", "--config", str(tmp_path / "missing.toml"), "--heading", "4"]) == 2
    capsys.readouterr()


def test_simulate_round_trip(tmp_path, capsys):
    out = tmp_path / "traj.csv"
    assert run_command(["simulate", "--heading", "1.6pi", "--out", str(out)]) == 0
    assert capsys.readouterr().err.startswith("CapturedAt(")
    cols = read_trajectory_csv(out.read_text())
    assert cols["r_pe"][-1] == pytest.approx(0.5, abs=1e-9)
    assert run_command(["simulate", "--heading", "0", "--theta-p0", "pi", "--out", str(out)]) == 0
    err = capsys.readouterr().err.strip()
    assert err.startswith("EscapedAt(")
    assert float(err[len("EscapedAt("):-1]) == pytest.approx(0.6, abs=1e-9)


def test_sweep_round_trip(tmp_path):
    out, svg = tmp_path / "sweep.csv", tmp_path / "sweep.svg"
    argv = ["sweep", "--vary", "gamma", "--values", "0.3,0.5,0.7", "--headings", "9",
            "--out", str(out), "--svg", str(svg)]
    assert run_command(argv) == 0
    recs = read_sweep_csv(out.read_text())
    assert len(recs) == 27 and [r.value for r in recs[::9]] == [0.3, 0.5, 0.7]
    assert svg.read_text().lstrip().startswith("<?xml")
    assert run_command(["sweep", "--vary", "rho", "--values", "0.5,2.5", "--out", str(out)]) == 1
    assert run_command(["sweep", "--vary", "rho", "--values", "a,b", "--out", str(out)]) == 1


def test_reach_round_trip(tmp_path):
    out, svg = tmp_path / "reach.csv", tmp_path / "reach.svg"
    argv = ["reach", "--pursuer", "1.5708:cw", "--pursuer", "4.7124:cw", "--grid", "90",
            "--resolution", "1e-5", "--out", str(out), "--svg", str(svg)]
    assert run_command(argv) == 0
    iv = HeadingIntervalSet.from_csv(out.read_text())
    assert iv.intervals[0][0] == 0.0 and iv.intervals[-1][1] == pytest.approx(2 * math.pi)
    assert {lab for _, _, lab in iv.intervals} == {"ESCAPE", "CAPTURE"}
    assert "<svg" in svg.read_text()
    assert run_command(["reach", "--out", str(out)]) == 2


def _help_texts():
    parser = build_parser()
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    texts = {"main": (parser.format_help(), parser)}
    for name, p in sub.choices.items():
        texts[name] = (p.format_help(), p)
    return texts


@pytest.mark.parametrize("name", ["main", "solve", "simulate", "sweep", "reach"])
def test_help_matches_golden(name):
    text, parser = _help_texts()[name]
    golden = GOLDEN / f"help_{name}.txt"
    if os.environ.get("UPDATE_GOLDEN"):
        golden.write_text(text)
    assert text == golden.read_text()
    for action in parser._actions:
        for flag in action.option_strings:
            assert flag in text


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ringpursuit", "solve", "--heading", "1.6pi", "--kind", "tac"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.splitlines()[1].startswith("Tangent,TAC,")
