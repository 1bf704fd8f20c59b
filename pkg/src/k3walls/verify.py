"""Batch verification: every identity, bound and table value, in one report."""

from __future__ import annotations

import random
from fractions import Fraction

from . import __version__
from .charge import (ChargeModel, central_charge, cross_coefficients, equality_class,
                     hodge_min_re, im_quantization, re_quantization_offset)
from .config import Config
from .cubicx import ch_point, euler, projection_class, euler_table
from .exact import ChargeValue, LamInterval, SqrtRat, solve_lambda2_root
from .k3lattice import LatticeParams, MukaiVec, moduli_dimension, named_vectors, pair, twist
from .report import Report, WallRecord
from .walls import (check_agreement, px_scan_defaults, scan_grid, verdict,
                    verify_genericity_cases, verify_heart_cases, verify_Px_stability,
                    walls_for)

HODGE_TABLE = {
    (1, 2): (Fraction(-5, 8), False),
    (1, 4): (Fraction(-5, 16), True),
    (2, 2): (Fraction(-1), True),
    (2, 4): (Fraction(-1, 2), True),
}


def lam_str(lam: SqrtRat) -> str:
    exact = lam.as_rat()
    return str(exact) if exact is not None else f"√({lam.radicand})"


def window_str(w: LamInterval) -> str:
    if w.is_empty:
        return "∅"
    hi = "∞" if w.hi is None else lam_str(w.hi)
    return f"{'(' if w.lo_open else '['}{lam_str(w.lo)},{hi}{')' if w.hi_open or w.hi is None else ']'}"


def _tag(p: LatticeParams) -> str:
    return f"[sh={p.sh},s2={p.s2}]"


def vector_checks(report: Report, p: LatticeParams) -> None:
    nv = named_vectors(p)
    report.add(f"vectors{_tag(p)}",
               pair(nv.px, nv.px, p) == 6 and moduli_dimension(nv.px, p) == 8
               and pair(nv.u0, nv.u0, p) == -2 and pair(nv.u1, nv.u1, p) == -2
               and twist(nv.u0, 2, p) - nv.q == nv.px and nv.px - nv.tor == nv.u1,
               "⟨v_Px,v_Px⟩=6, dim=8, v_U0 and v_U1 spherical, v_Px=e^h·v_U0−v_Q, v_Px−v_tor=v_U1")


def charge_checks(report: Report, p: LatticeParams) -> None:
    nv = named_vectors(p)
    m = ChargeModel(p)
    z_px, z_tor = central_charge(nv.px, m), central_charge(nv.tor, m)
    c0, c1 = cross_coefficients(z_tor, z_px)
    flip = solve_lambda2_root(c0, c1, 0, 0)
    report.add(f"charges{_tag(p)}",
               z_px == ChargeValue(Fraction(3, 8), 2, 3) and z_tor == ChargeValue(1, 0, 2)
               and flip == Fraction(9, 16) and c1 < 0,
               f"Z(v_Px)={z_px}, Z(v_tor)={z_tor}, φ(v_tor)<φ(v_Px) iff λ²<{flip}")


def quantization_checks(report: Report, p: LatticeParams, samples: int = 1000,
                        seed: int = 0, bound: int = 50) -> None:
    rng = random.Random(seed)
    model = ChargeModel(p)
    ok = True
    for _ in range(samples):
        v = MukaiVec(*(rng.randint(-bound, bound) for _ in range(3)))
        z = central_charge(v, model)
        off = re_quantization_offset(v, p)
        ok &= z.im_lam == im_quantization(v) and off.denominator == 1 and (4 * off).denominator == 1
    report.add(f"quantization{_tag(p)}", ok,
               f"{samples} random classes: Im Z/λ ∈ ℤ, Re offset ∈ ℤ ⊂ ¼ℤ")


def hodge_checks(report: Report, p: LatticeParams) -> None:
    nv = named_vectors(p)
    ok = True
    parts = []
    for (n, r), (a, strict) in HODGE_TABLE.items():
        b = hodge_min_re(n, r, p=p)
        ok &= b.a == a and b.b == r and b.strict == strict
        parts.append(f"(n={n},r={r}) {b}")
    ok &= equality_class(1, 2, p) == nv.u1
    try:
        equality_class(2, 2, p)
        ok = False
    except ValueError:
        pass
    report.add(f"hodge bounds{_tag(p)}", ok, "; ".join(parts))


def case_checks(report: Report, p: LatticeParams, window: LamInterval, keep: bool) -> None:
    groups = {
        "heart cases": verify_heart_cases(p, window),
        "genericity cases": verify_genericity_cases(None, p, window),
        "stability cases": verify_Px_stability(window, p),
    }
    for label, cases in groups.items():
        failing = [c.name for c in cases if not c.excludes_window]
        detail = "all exclude the window" if not failing else "not excluded: " + ", ".join(failing)
        report.add(f"{label}{_tag(p)}", not failing, detail)
        if keep:
            report.cases.extend(cases)
    v = verdict(groups["stability cases"])
    report.add(f"stability verdict{_tag(p)}", v != "not-established", v)


def cubic_checks(report: Report, p: LatticeParams) -> None:
    for row in euler_table(strict=False):
        report.add(f"cubic {row.label}", row.ok, f"{row.value} (expected {row.expected})")
    pr = projection_class(ch_point())
    chi = euler(pr, pr)
    px = named_vectors(p).px
    report.add("cross-module −χ(pr(O_x),pr(O_x)) = ⟨v_Px,v_Px⟩",
               -chi == pair(px, px, p), f"{-chi} = {pair(px, px, p)}")


def run_verification(cfg: Config) -> Report:
    p = cfg.params
    report = Report(__version__, cfg.echo())
    sweep = [p] + [q for q in cfg.sweep_params if q != p]
    for q in sweep:
        vector_checks(report, q)
        charge_checks(report, q)
        quantization_checks(report, q)
        hodge_checks(report, q)
        case_checks(report, q, cfg.window, keep=q == p)
    walls = walls_for(named_vectors(p).px, cfg.window, cfg.box, p, cfg.workers)
    report.walls = [WallRecord.of(w, p) for w in walls]
    listing = ", ".join(f"λ={lam_str(w.lam)} (λ²={w.lambda_sq}) witnessed by "
                        + " and ".join(str(c.w) for c in w.witnesses) for w in walls)
    report.add(f"walls in {window_str(cfg.window)}", not walls, listing or "none")
    scan = scan_grid(named_vectors(p).px, cfg.window, cfg.grid_step, cfg.box, p,
                     workers=cfg.workers, **px_scan_defaults(p))
    problems = check_agreement(walls, scan)
    report.add("grid scan agrees with exact walls", not problems,
               f"{len(scan.samples)} samples at step {cfg.grid_step}"
               + ("" if not problems else "; " + "; ".join(problems[:3])))
    bad = scan.violations
    report.add("grid scan finds no destabilising subobject", not bad,
               "none" if not bad else f"{len(bad)} violations, first at λ²={bad[0].lambda_sq}: "
               f"sub {bad[0].sub}, quotient {bad[0].quotient}")
    cubic_checks(report, p)
    return report
