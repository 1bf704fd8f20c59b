"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage and configuration errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .config import (DEFAULT_HI, DEFAULT_LO_SQ, Config, ConfigError, load_config,
                     parse_rat, parse_window, validate)
from .cubicx import ClassParseError, TableMismatch, euler, parse_class, projection_class, euler_table
from .exact import LamInterval
from .k3lattice import ParamError, gram, named_vectors
from .report import WallRecord, parse_target, walls_csv, walls_json
from .verify import run_verification, window_str
from .walls import walls_for

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--config", help="key = value config file (default: $K3WALLS_CONFIG)")
    g.add_argument("--sh", type=int, help="intersection number s·h (odd)")
    g.add_argument("--s2", type=int, help="self-intersection s² (≡ 2 mod 4)")
    g.add_argument("--box-x", type=int, help="candidate box |x| limit")
    g.add_argument("--box-z", type=int, help="candidate box |z| limit")
    g.add_argument("--grid-step", help="λ² step of the brute-force scan, e.g. 1/256")
    g.add_argument("--workers", type=int, help="processes for candidate enumeration")
    w = common.add_argument_group("window")
    w.add_argument("--lo-sq", help="lower end of the window as λ²")
    w.add_argument("--hi", help="upper end of the window as λ")
    w.add_argument("--window", help="window 'lo..hi' with both ends given as λ")
    w.add_argument("--window-from-paper", action="store_true",
                   help=f"use the default window λ ∈ (√({DEFAULT_LO_SQ}), {DEFAULT_HI})")
    return common


def build_config(args: argparse.Namespace) -> Config:
    cfg = load_config(args.config)
    overrides = {}
    for name in ("sh", "s2", "box_x", "box_z", "workers"):
        if getattr(args, name) is not None:
            overrides[name] = getattr(args, name)
    if args.grid_step is not None:
        overrides["grid_step"] = parse_rat(args.grid_step, "grid-step")
    if args.window_from_paper:
        overrides["window_lo_sq"], overrides["window_hi"] = DEFAULT_LO_SQ, DEFAULT_HI
    if args.window is not None:
        overrides["window_lo_sq"], overrides["window_hi"] = parse_window(args.window)
    if args.lo_sq is not None:
        overrides["window_lo_sq"] = parse_rat(args.lo_sq, "lo-sq")
    if args.hi is not None:
        overrides["window_hi"] = parse_rat(args.hi, "hi")
    return validate(replace(cfg, **overrides))


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _plot(path: str, rows, window: LamInterval | None) -> None:
    from .plotting import render_svg

    render_svg(rows, window, path)


def _wall_rows(cfg: Config, target_text: str, params_list) -> list:
    from .plotting import PlotRow

    rows = []
    axis = LamInterval.open_sq("1/4", 1)
    for p in params_list:
        target = _target(target_text, p)
        walls = walls_for(target, axis, cfg.box, p, cfg.workers)
        label = f"sh={p.sh}, s²={p.s2}" if len(params_list) > 1 else ""
        rows.append(PlotRow(label, tuple((w.lam, " / ".join(str(c.w) for c in w.witnesses))
                                         for w in walls)))
    return rows


def _target(text: str, p):
    try:
        return parse_target(text, dict(named_vectors(p).items()))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify_paper(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    report = run_verification(cfg)
    print(report.text())
    summary = report.summary()
    print(f"{summary['passed']} passed, {summary['failed']} failed")
    if args.json:
        _write(args.json, report.to_json())
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        _write(os.path.join(args.out_dir, "report.json"), report.to_json())
        _write(os.path.join(args.out_dir, "walls.csv"), walls_csv(report.walls))
        _plot(os.path.join(args.out_dir, "walls.svg"),
              _wall_rows(cfg, "Px", [cfg.params]), cfg.window)
    return OK if report.ok else FAILED


def cmd_walls(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    p = cfg.params
    target = _target(args.target, p)
    walls = walls_for(target, cfg.window, cfg.box, p, cfg.workers)
    records = [WallRecord.of(w, p) for w in walls]
    text = walls_csv(records) if args.format == "csv" else walls_json(records)
    _write(args.output, text)
    if args.output not in (None, "-"):
        print(f"{len(records)} wall(s) in {window_str(cfg.window)} written to {args.output}")
    return OK


def cmd_plot(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    params_list = cfg.sweep_params if args.sweep else [cfg.params]
    rows = _wall_rows(cfg, args.target, params_list)
    _plot(args.output, rows, None if args.no_window else cfg.window)
    print(f"wrote {args.output}")
    return OK


def cmd_cubic(args: argparse.Namespace) -> int:
    if args.action == "table":
        try:
            rows = euler_table(strict=True)
        except TableMismatch as exc:
            for r in exc.rows:
                print(f"FAIL  {r.label} = {r.value} (expected {r.expected})")
            return FAILED
        for r in rows:
            print(f"{r.label} = {r.value}")
        return OK
    try:
        classes = [parse_class(e) for e in args.exprs]
    except ClassParseError as exc:
        raise UsageError(str(exc)) from None
    if args.action == "project":
        if len(classes) != 1:
            raise UsageError("project takes exactly one class expression")
        print(projection_class(classes[0]))
    else:
        if len(classes) != 2:
            raise UsageError("euler takes exactly two class expressions")
        print(euler(*classes))
    return OK


def cmd_params(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    params_list = cfg.sweep_params if args.sweep else [cfg.params]
    for p in params_list:
        print(f"sh={p.sh} s2={p.s2} t={p.t} h2={p.h2} brauer_order={p.d}")
        print("  gram " + " ".join(str(list(row)) for row in gram(p)))
        for name, v in named_vectors(p).items():
            r, c, d = v.ambient_str(p)
            print(f"  {name:6} {v}  ambient ({r}, {c}, {d})")
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="k3walls", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify-paper", parents=[common],
                       help="run every identity, bound, wall search and table check")
    v.add_argument("--json", help="write the JSON report here")
    v.add_argument("--out-dir", help="write report.json, walls.csv and walls.svg here")
    v.set_defaults(func=cmd_verify_paper)

    w = sub.add_parser("walls", parents=[common], help="exact walls of a target class")
    w.add_argument("--target", default="Px", help="'Px', 'U1', ... or 'x,y,z'")
    w.add_argument("--format", choices=("json", "csv"), default="json")
    w.add_argument("--output", help="output file (default stdout)")
    w.set_defaults(func=cmd_walls)

    pl = sub.add_parser("plot", parents=[common], help="SVG wall diagram over λ ∈ (1/2, 1)")
    pl.add_argument("--target", default="Px")
    pl.add_argument("--output", default="walls.svg")
    pl.add_argument("--sweep", action="store_true", help="one row per swept (sh, s2)")
    pl.add_argument("--no-window", action="store_true", help="do not shade the window")
    pl.set_defaults(func=cmd_plot)

    c = sub.add_parser("cubic", help="Euler characteristics on the cubic fourfold")
    c.add_argument("action", choices=("table", "project", "euler"))
    c.add_argument("exprs", nargs="*", help="class expressions such as 'O(H)', 'pr(Ox)'")
    c.set_defaults(func=cmd_cubic)

    pa = sub.add_parser("params", parents=[common], help="show lattice data")
    pa.add_argument("--sweep", action="store_true")
    pa.set_defaults(func=cmd_params)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParamError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"error: {exc.filename or ''}: {exc.strerror}", file=sys.stderr)
        return USAGE
    except ValueError as exc:
        # precondition violations from the library (e.g. rank-0 targets)
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
