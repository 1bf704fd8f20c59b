"""Report records and their deterministic JSON / CSV renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .k3lattice import LatticeParams, MukaiVec
from .walls import CaseReport, Wall

CSV_HEADER = ("lambda_sq", "witness_x", "witness_y", "witness_z")


def _q(x: Fraction | None) -> str | None:
    return None if x is None else str(x)


def _unq(x: str | None) -> Fraction | None:
    return None if x is None else Fraction(x)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass(frozen=True)
class WallRecord:
    lambda_sq: Fraction
    witness: tuple[int, int, int]
    ambient: tuple
    witnesses: tuple[tuple[int, int, int], ...] = ()

    @classmethod
    def of(cls, wall: Wall, p: LatticeParams) -> "WallRecord":
        w = wall.witness.w
        return cls(wall.lambda_sq, w.coords(), tuple(w.ambient_str(p)),
                   tuple(c.w.coords() for c in wall.witnesses))

    def to_dict(self) -> dict:
        return {"lambda_sq": str(self.lambda_sq), "witness": list(self.witness),
                "ambient": list(self.ambient), "witnesses": [list(w) for w in self.witnesses]}

    @classmethod
    def from_dict(cls, d: dict) -> "WallRecord":
        return cls(Fraction(d["lambda_sq"]), tuple(d["witness"]), tuple(d["ambient"]),
                   tuple(tuple(w) for w in d.get("witnesses", [])))


def case_to_dict(c: CaseReport) -> dict:
    interval = None
    if c.interval is not None:
        lo, hi, lo_open, hi_open = c.interval
        interval = [str(lo), str(hi), lo_open, hi_open]
    return {
        "name": c.name, "kind": c.kind,
        "bound_sq": _q(c.bound_sq), "bound_strict": c.bound_strict,
        "interval": interval, "excludes_window": c.excludes_window,
        "assumptions": list(c.assumptions), "steps": list(c.steps),
        "checks": [[k, v] for k, v in c.checks],
        "annotations": list(c.annotations),
        "extra": [[k, v] for k, v in c.extra],
    }


def case_from_dict(d: dict) -> CaseReport:
    interval = d["interval"]
    if interval is not None:
        interval = (Fraction(interval[0]), Fraction(interval[1]), interval[2], interval[3])
    return CaseReport(
        name=d["name"], kind=d["kind"], bound_sq=_unq(d["bound_sq"]),
        bound_strict=d["bound_strict"], interval=interval,
        excludes_window=d["excludes_window"], assumptions=tuple(d["assumptions"]),
        steps=tuple(d["steps"]), checks=tuple((k, v) for k, v in d["checks"]),
        annotations=tuple(d["annotations"]), extra=tuple((k, v) for k, v in d["extra"]))


@dataclass
class Report:
    tool_version: str
    params: dict[str, str]
    results: list[Check] = field(default_factory=list)
    cases: list[CaseReport] = field(default_factory=list)
    walls: list[WallRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.results)

    def summary(self) -> dict:
        failed = [c.name for c in self.results if not c.ok]
        return {"passed": len(self.results) - len(failed), "failed": len(failed),
                "failures": failed, "status": "pass" if not failed else "fail"}

    def add(self, name: str, ok: bool, detail: str = "") -> Check:
        check = Check(name, bool(ok), detail)
        self.results.append(check)
        return check

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "params": dict(self.params),
            "results": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.results],
            "cases": [case_to_dict(c) for c in self.cases],
            "walls": [w.to_dict() for w in self.walls],
            "summary": self.summary(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            tool_version=d["tool_version"], params=dict(d["params"]),
            results=[Check(r["name"], r["ok"], r["detail"]) for r in d["results"]],
            cases=[case_from_dict(c) for c in d["cases"]],
            walls=[WallRecord.from_dict(w) for w in d["walls"]])

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def text(self) -> str:
        return "\n".join(c.line() for c in self.results)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def walls_json(records: list[WallRecord]) -> str:
    return dumps([r.to_dict() for r in records])


def walls_csv(records: list[WallRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([str(r.lambda_sq), *r.witness])
    return buf.getvalue()


def parse_target(text: str, named: dict[str, MukaiVec]) -> MukaiVec:
    """``"Px"`` (or any ``v_``-name) or ``"x,y,z"``."""
    key = text.strip()
    for name, v in named.items():
        if key in (name, name.removeprefix("v_")):
            return v
    parts = key.strip("()").split(",")
    if len(parts) != 3:
        raise ValueError(f"cannot parse target {text!r}: expected a name or 'x,y,z'")
    try:
        return MukaiVec(*(int(s) for s in parts))
    except ValueError:
        raise ValueError(f"cannot parse target {text!r}: coordinates must be integers") from None
