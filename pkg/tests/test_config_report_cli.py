from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from k3walls.cli import main
from k3walls.config import (ENV_VAR, Config, ConfigError, config_fields, load_config,
                            parse_config_text, parse_sweep, parse_window, validate)
from k3walls.k3lattice import DEFAULT_PARAMS, MukaiVec, named_vectors
from k3walls.plotting import render_svg
from k3walls.report import (CSV_HEADER, Check, Report, WallRecord, case_from_dict, case_to_dict,
                            parse_target, walls_csv)
from k3walls.walls import verify_genericity_cases, verify_heart_cases, verify_Px_stability

WINDOW_FILL = "#c6dbef"
WALL_STROKE = "#b2182b"
SMALL = "sweep = 1,2\nbox_x = 3\nbox_z = 20\ngrid_step = 1/64\n"


@pytest.fixture
def small_cfg(tmp_path):
    path = tmp_path / "small.conf"
    path.write_text(SMALL)
    return str(path)


# -- config ------------------------------------------------------------------

def test_defaults():
    cfg = validate(Config())
    assert (cfg.sh, cfg.s2) == (1, 2)
    assert cfg.window_lo_sq == Fraction(3, 8) and cfg.window_hi == Fraction(3, 4)
    assert len(cfg.sweep) == 24
    assert "window_lo_sq" in config_fields()


def test_parse_config_text():
    cfg = parse_config_text("# comment\nsh = 3\ns2 = 6  # trailing\nwindow_hi = 0.75\n"
                            "sweep = 1,2; -1,6\n")
    assert (cfg.sh, cfg.s2, cfg.window_hi) == (3, 6, Fraction(3, 4))
    assert cfg.sweep == [(1, 2), (-1, 6)]


def test_parse_config_errors_carry_line_numbers():
    with pytest.raises(ConfigError) as info:
        parse_config_text("sh = 1\ncolour = red\nnonsense\ns2 = two\nwindow_hi = 1.5e")
    assert info.value.errors == [
        "line 2: unknown key 'colour'",
        "line 3: expected 'key = value'",
        "line 4: s2: expected an integer, got 'two'",
        "line 5: window_hi: cannot read '1.5e' as an exact rational",
    ]


def test_parse_helpers():
    assert parse_window("0.5..1") == (Fraction(1, 4), Fraction(1))
    assert parse_sweep(" 1,2 ;; 3,10 ") == [(1, 2), (3, 10)]
    with pytest.raises(ConfigError):
        parse_window("0.5-1")
    with pytest.raises(ConfigError):
        parse_sweep("1,2,3")


@pytest.mark.parametrize("overrides,message", [
    ({"sh": 2}, "sh must be odd"),
    ({"s2": 4}, "s² ≢ 2 mod 4"),
    ({"sweep": [(1, 2), (2, 6)]}, "sweep (2,6): sh must be odd"),
    ({"window_lo_sq": Fraction(1, 2), "window_hi": Fraction(1, 2)}, "window_lo_sq must be below window_hi²"),
    ({"window_lo_sq": Fraction(1, 8)}, "window must lie in λ > 1/2 (window_lo_sq ≥ 1/4)"),
    ({"box_z": 0}, "box limits must be positive"),
    ({"grid_step": Fraction(0)}, "grid_step must be positive"),
    ({"workers": 0}, "workers must be at least 1"),
])
def test_validation(overrides, message):
    with pytest.raises(ConfigError) as info:
        validate(Config(**overrides))
    assert message in info.value.errors


def test_load_config_from_env(tmp_path, monkeypatch):
    path = tmp_path / "c.conf"
    path.write_text("sh = 3\ns2 = 10\n")
    monkeypatch.setenv(ENV_VAR, str(path))
    assert (load_config().sh, load_config().s2) == (3, 10)
    assert load_config(None).params.t == 3
    monkeypatch.setenv(ENV_VAR, str(tmp_path / "missing.conf"))
    with pytest.raises(ConfigError, match="cannot read config"):
        load_config()


# -- report ------------------------------------------------------------------

def _sample_report() -> Report:
    r = Report("0.1.0", Config().echo())
    r.add("first", True, "detail")
    r.add("second", False)
    p = DEFAULT_PARAMS
    r.cases = verify_heart_cases(p) + verify_genericity_cases(None, p) + verify_Px_stability(p=p)
    r.walls = [WallRecord(Fraction(9, 16), (0, 1, 0), (0, "0*s+2*h", 0),
                          ((0, 1, 0), (1, 1, 1)))]
    return r


def test_report_round_trip():
    r = _sample_report()
    again = Report.from_json(r.to_json())
    assert again == r
    assert again.to_json() == r.to_json()


def test_report_json_is_canonical():
    text = _sample_report().to_json()
    assert text.endswith("\n")
    d = json.loads(text)
    assert list(d) == sorted(d)
    assert d["summary"] == {"passed": 1, "failed": 1, "failures": ["second"], "status": "fail"}
    assert d["walls"][0]["lambda_sq"] == "9/16"
    assert "λ" in text  # UTF-8, not escaped


@given(st.fractions(max_denominator=64), st.integers(-9, 9), st.integers(-9, 9))
def test_wall_record_round_trip(l2, y, z):
    rec = WallRecord(l2, (1, y, z), (2, f"1*s+{y}*h", z), ((1, y, z),))
    assert WallRecord.from_dict(json.loads(json.dumps(rec.to_dict()))) == rec


def test_case_round_trip():
    for case in verify_Px_stability(p=DEFAULT_PARAMS):
        assert case_from_dict(json.loads(json.dumps(case_to_dict(case)))) == case


def test_check_line():
    assert Check("a", True).line() == "PASS  a"
    assert Check("b", False, "why").line() == "FAIL  b: why"


def test_walls_csv():
    rec = WallRecord(Fraction(9, 16), (0, 1, 0), (0, "0*s+2*h", 0))
    rows = list(csv.reader(io.StringIO(walls_csv([rec]))))
    assert tuple(rows[0]) == CSV_HEADER == ("lambda_sq", "witness_x", "witness_y", "witness_z")
    assert rows[1] == ["9/16", "0", "1", "0"]


def test_parse_target():
    named = dict(named_vectors(DEFAULT_PARAMS).items())
    assert parse_target("Px", named) == parse_target("v_Px", named) == MukaiVec(1, 2, 1)
    assert parse_target("(1, -2, 3)", named) == MukaiVec(1, -2, 3)
    for bad in ("1,2", "a,b,c", "Qx"):
        with pytest.raises(ValueError, match="cannot parse target"):
            parse_target(bad, named)


# -- CLI -----------------------------------------------------------------------

def test_cli_walls_json_wide_window(capsys):
    assert main(["walls", "--target", "Px", "--window", "0.5..1"]) == 0
    records = json.loads(capsys.readouterr().out)
    assert [r["lambda_sq"] for r in records] == ["9/16"]
    assert records[0]["witness"] == [0, 1, 0]
    assert records[0]["witnesses"] == [[0, 1, 0], [1, 1, 1]]
    assert records[0]["ambient"] == [0, "0*s+1*h", 0]


def test_cli_walls_default_window_is_empty(capsys):
    assert main(["walls", "--target", "Px", "--window-from-paper"]) == 0
    assert json.loads(capsys.readouterr().out) == []


def test_cli_walls_csv_to_file(tmp_path, capsys):
    out = tmp_path / "w.csv"
    assert main(["walls", "--window", "0.5..1", "--format", "csv", "--output", str(out)]) == 0
    assert out.read_text() == "lambda_sq,witness_x,witness_y,witness_z\n9/16,0,1,0\n"
    assert "1 wall(s)" in capsys.readouterr().out


@pytest.mark.parametrize("argv,message", [
    (["walls", "--target", "0,1,0", "--window", "0.5..1"], "target must have positive rank"),
    (["walls", "--target", "bogus"], "cannot parse target"),
    (["walls", "--sh", "2"], "sh must be odd"),
    (["walls", "--lo-sq", "1/8"], "window_lo_sq ≥ 1/4"),
    (["params", "--s2", "4"], "s² ≢ 2 mod 4"),
    (["cubic", "project", "O(2H"], "position 4"),
    (["cubic", "euler", "O"], "euler takes exactly two"),
    (["walls", "--config", "/nonexistent/x.conf"], "cannot read config"),
])
def test_cli_usage_errors(argv, message, capsys):
    assert main(argv) == 2
    err = capsys.readouterr().err
    assert err.startswith("error: ") and message in err


def test_cli_unwritable_plot_path(tmp_path, capsys):
    assert main(["plot", "--output", str(tmp_path / "no" / "such" / "dir" / "w.svg")]) == 2
    assert capsys.readouterr().err.startswith("error: ")


def test_cli_cubic(capsys):
    assert main(["cubic", "table"]) == 0
    out = capsys.readouterr().out
    assert "χ(pr(O_x),pr(O_x)) = -6" in out and "χ(O(3H)) = 55" in out
    assert main(["cubic", "project", "Ox"]) == 0
    assert capsys.readouterr().out.strip() == "[O(-H)] - 5[O] + [O(H)] - [Ox]"
    assert main(["cubic", "euler", "O(H)", "O(2H)"]) == 0
    assert capsys.readouterr().out.strip() == "6"


def test_cli_params(capsys):
    assert main(["params"]) == 0
    out = capsys.readouterr().out
    assert "sh=1 s2=2 t=1" in out and "(1,2,1)" in out
    assert main(["params", "--sweep"]) == 0
    assert capsys.readouterr().out.count("gram") == 24


def test_cli_plot(tmp_path, capsys):
    out = tmp_path / "w.svg"
    assert main(["plot", "--output", str(out), "--window", "0.5..1"]) == 0
    svg = out.read_text()
    assert svg.startswith("<?xml") and 'version="1.1"' in svg
    assert "(0,1,0)" in svg and WINDOW_FILL in svg


def test_cli_plot_without_window(tmp_path):
    out = tmp_path / "w.svg"
    assert main(["plot", "--output", str(out), "--no-window"]) == 0
    svg = out.read_text()
    assert WINDOW_FILL not in svg and WALL_STROKE in svg


def test_plot_axis_only(tmp_path):
    out = tmp_path / "w.svg"
    render_svg([], None, str(out))
    svg = out.read_text()
    assert WINDOW_FILL not in svg and WALL_STROKE not in svg and "λ" in svg


def test_plot_sweep_rows_share_wall_position(tmp_path, capsys):
    out = tmp_path / "w.svg"
    assert main(["plot", "--output", str(out), "--sweep", "--box-x", "3", "--box-z", "20"]) == 0
    svg = out.read_text()
    # witness coordinates depend on sh, the position does not
    assert svg.count("λ=3/4 (") == 24
    assert svg.count("sh=") == 24


def test_cli_verify_wide_window_fails(small_cfg, capsys):
    assert main(["verify-paper", "--config", small_cfg, "--window", "0.5..1"]) == 1
    out = capsys.readouterr().out
    assert "FAIL  walls in (1/2,1): λ=3/4 (λ²=9/16) witnessed by (0,1,0) and (1,1,1)" in out


def test_cli_verify_config_from_env(small_cfg, monkeypatch, capsys):
    monkeypatch.setenv(ENV_VAR, small_cfg)
    assert main(["verify-paper"]) == 0
    assert "PASS  walls in (√(3/8),3/4): none" in capsys.readouterr().out


def test_cli_verify_out_dir(small_cfg, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["verify-paper", "--config", small_cfg, "--out-dir", str(out)]) == 0
    assert sorted(p.name for p in out.iterdir()) == ["report.json", "walls.csv", "walls.svg"]
    report = Report.from_json((out / "report.json").read_text())
    assert report.ok and report.params["box_x"] == "3"
    assert (out / "walls.csv").read_text() == ",".join(CSV_HEADER) + "\n"
