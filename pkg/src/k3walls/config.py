"""Run configuration: a flat ``key = value`` file plus command-line overrides.

Rationals are written ``p/q`` (exact decimals such as ``0.5`` are accepted
too, since they convert exactly).  Example::

    # defaults
    sh = 1
    s2 = 2
    window_lo_sq = 3/8
    window_hi = 3/4
    sweep = 1,2; -1,6; 3,10
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction

from .exact import LamInterval, SqrtRat
from .k3lattice import SWEEP, LatticeParams, validate_params
from .walls import DOMAIN_LO_SQ, Box

ENV_VAR = "K3WALLS_CONFIG"
DEFAULT_LO_SQ = Fraction(3, 8)
DEFAULT_HI = Fraction(3, 4)


class ConfigError(ValueError):
    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


def parse_rat(text: str, key: str = "value") -> Fraction:
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError([f"{key}: cannot read {text!r} as an exact rational"]) from None


def parse_int(text: str, key: str = "value") -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError([f"{key}: expected an integer, got {text!r}"]) from None


def parse_sweep(text: str) -> list[tuple[int, int]]:
    """``"1,2; -1,6"`` → ``[(1, 2), (-1, 6)]``."""
    out = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ConfigError([f"sweep: expected 'sh,s2' pairs, got {chunk.strip()!r}"])
        out.append((parse_int(parts[0], "sweep"), parse_int(parts[1], "sweep")))
    return out


def parse_window(text: str) -> tuple[Fraction, Fraction]:
    """``"a..b"`` in λ; returns ``(a², b)``."""
    if ".." not in text:
        raise ConfigError([f"window: expected 'lo..hi', got {text!r}"])
    lo, hi = text.split("..", 1)
    lo_q = parse_rat(lo, "window")
    return lo_q * lo_q, parse_rat(hi, "window")


@dataclass
class Config:
    sh: int = 1
    s2: int = 2
    window_lo_sq: Fraction = DEFAULT_LO_SQ
    window_hi: Fraction = DEFAULT_HI
    box_x: int = 6
    box_z: int = 60
    grid_step: Fraction = Fraction(1, 256)
    sweep: list[tuple[int, int]] = field(default_factory=lambda: [(p.sh, p.s2) for p in SWEEP])
    workers: int = 1

    @property
    def params(self) -> LatticeParams:
        return LatticeParams(self.sh, self.s2)

    @property
    def sweep_params(self) -> list[LatticeParams]:
        return [LatticeParams(sh, s2) for sh, s2 in self.sweep]

    @property
    def window(self) -> LamInterval:
        return LamInterval(SqrtRat(self.window_lo_sq), SqrtRat.of(self.window_hi), True, True)

    @property
    def box(self) -> Box:
        return Box(self.box_x, self.box_z)

    def echo(self) -> dict[str, str]:
        return {
            "sh": str(self.sh), "s2": str(self.s2),
            "window_lo_sq": str(self.window_lo_sq), "window_hi": str(self.window_hi),
            "box_x": str(self.box_x), "box_z": str(self.box_z),
            "grid_step": str(self.grid_step),
            "sweep": "; ".join(f"{a},{b}" for a, b in self.sweep),
        }


_PARSERS = {
    "sh": parse_int, "s2": parse_int, "box_x": parse_int, "box_z": parse_int,
    "workers": parse_int,
    "window_lo_sq": parse_rat, "window_hi": parse_rat, "grid_step": parse_rat,
    "sweep": lambda text, key: parse_sweep(text),
}


def parse_config_text(text: str, base: Config | None = None) -> Config:
    values = {}
    errors = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"line {lineno}: expected 'key = value'")
            continue
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _PARSERS:
            errors.append(f"line {lineno}: unknown key {key!r}")
            continue
        try:
            values[key] = _PARSERS[key](value, key)
        except ConfigError as exc:
            errors.extend(f"line {lineno}: {e}" for e in exc.errors)
    if errors:
        raise ConfigError(errors)
    return replace(base or Config(), **values)


def load_config(path: str | None = None) -> Config:
    """Read ``path``, or the file named by ``$K3WALLS_CONFIG``, or use defaults."""
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return Config()
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError([f"cannot read config {path}: {exc.strerror}"]) from None
    return parse_config_text(text)


def validate(cfg: Config) -> Config:
    errors = list(validate_params(cfg.params))
    for sh, s2 in cfg.sweep:
        errors += [f"sweep ({sh},{s2}): {e}" for e in validate_params(LatticeParams(sh, s2))]
    if cfg.window_hi <= 0:
        errors.append("window_hi must be positive")
    elif cfg.window_lo_sq >= cfg.window_hi ** 2:
        errors.append("window_lo_sq must be below window_hi²")
    if cfg.window_lo_sq < DOMAIN_LO_SQ:
        errors.append("window must lie in λ > 1/2 (window_lo_sq ≥ 1/4)")
    if cfg.box_x <= 0 or cfg.box_z <= 0:
        errors.append("box limits must be positive")
    if cfg.grid_step <= 0:
        errors.append("grid_step must be positive")
    if cfg.workers < 1:
        errors.append("workers must be at least 1")
    if errors:
        raise ConfigError(errors)
    return cfg


def config_fields() -> list[str]:
    return [f.name for f in fields(Config)]
