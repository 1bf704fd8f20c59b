"""Acceptance suite: one test group per criterion, all exact.

The terminal summary prints one ``criterion N PASS/FAIL`` line per group.
"""

from __future__ import annotations

import filecmp
import random
from fractions import Fraction

import pytest

from k3walls.charge import (ChargeModel, PhaseCmp, central_charge, cross_coefficients,
                            equality_class, hodge_min_re, im_quantization, phase_compare,
                            re_quantization_offset)
from k3walls.cli import main
from k3walls.cubicx import ch_line, ch_point, euler, in_Ax, projection_class, euler_table
from k3walls.exact import ChargeValue, LamInterval, SqrtRat, quarter_points, solve_lambda2_root
from k3walls.k3lattice import (DEFAULT_PARAMS, SWEEP, MukaiVec, is_spherical, moduli_dimension,
                               named_vectors, pair, twist)
from k3walls.walls import (HOM_U1_PX, Box, check_agreement, px_scan_defaults, scan_grid,
                           verify_genericity_cases, verify_heart_cases, verify_Px_stability,
                           walls_for)

ALL_PARAMS = [DEFAULT_PARAMS] + [p for p in SWEEP if p != DEFAULT_PARAMS]
ids = [f"sh{p.sh}_s2{p.s2}" for p in ALL_PARAMS]
WINDOW = LamInterval.open_sq(Fraction(3, 8), Fraction(9, 16))
WIDE = LamInterval.open_sq(Fraction(1, 4), 1)


# 1 -------------------------------------------------------------------------

@pytest.mark.criterion(1)
@pytest.mark.parametrize("p", ALL_PARAMS, ids=ids)
def test_mukai_vector_identities(p):
    nv = named_vectors(p)
    assert pair(nv.px, nv.px, p) == 6
    assert moduli_dimension(nv.px, p) == 2 + 6 == 8
    assert pair(nv.u0, nv.u0, p) == pair(nv.u1, nv.u1, p) == -2
    assert is_spherical(nv.u0, p) and is_spherical(nv.u1, p)
    assert twist(nv.u0, 2, p) - MukaiVec(0, 0, 2) == nv.px
    assert nv.px.ambient(p) == (2, (1, 2), p.t + p.sh)
    assert nv.px - nv.tor == nv.u1


# 2 -------------------------------------------------------------------------

@pytest.mark.criterion(2)
@pytest.mark.parametrize("p", ALL_PARAMS, ids=ids)
def test_central_charge_closed_forms(p):
    nv, m = named_vectors(p), ChargeModel(p)
    # ChargeValue(a, b, c) is a + bλ² + cλi
    assert central_charge(nv.px, m) == ChargeValue(Fraction(3, 8), 2, 3)
    assert central_charge(nv.tor, m) == ChargeValue(1, 0, 2)


@pytest.mark.criterion(2)
@pytest.mark.parametrize("p", ALL_PARAMS, ids=ids)
def test_phase_flip(p):
    nv, m = named_vectors(p), ChargeModel(p)
    c0, c1 = cross_coefficients(central_charge(nv.tor, m), central_charge(nv.px, m))
    assert solve_lambda2_root(c0, c1, 0, 0) == Fraction(9, 16)
    for l2 in (Fraction(3, 8), Fraction(1, 2), Fraction(143, 256), Fraction(9, 16),
               Fraction(145, 256), Fraction(5, 8), Fraction(1)):
        got = phase_compare(nv.tor, nv.px, SqrtRat(l2), m)
        assert (got is PhaseCmp.LT) == (l2 < Fraction(9, 16))
        assert (got is PhaseCmp.EQ) == (l2 == Fraction(9, 16))


# 3 -------------------------------------------------------------------------

@pytest.mark.criterion(3)
@pytest.mark.parametrize("p", ALL_PARAMS, ids=ids)
def test_quantization(p):
    rng = random.Random(p.sh * 1000 + p.s2)
    m = ChargeModel(p)
    for _ in range(10_000):
        v = MukaiVec(*(rng.randint(-100, 100) for _ in range(3)))
        z = central_charge(v, m)
        assert z.im_lam.denominator == 1 and z.im_lam == im_quantization(v)
        off = re_quantization_offset(v, p)
        assert off.denominator == 1
        # Re Z itself sits in ¼ℤ + (rank/2)(2λ² + 3/8)
        assert z.re_const - Fraction(v.rank, 2) * Fraction(3, 8) == off
        assert z.re_lam2 == v.rank


# 4 -------------------------------------------------------------------------

@pytest.mark.criterion(4)
@pytest.mark.parametrize("nr,a,strict", [
    ((1, 2), Fraction(-5, 8), False),
    ((1, 4), Fraction(-5, 16), True),
    ((2, 2), Fraction(-1), True),
    ((2, 4), Fraction(-1, 2), True),
])
def test_hodge_bounds(nr, a, strict):
    n, r = nr
    for p in ALL_PARAMS:
        b = hodge_min_re(n, r, p=p)
        assert (b.a, b.b, b.strict) == (a, r, strict)


@pytest.mark.criterion(4)
@pytest.mark.parametrize("p", ALL_PARAMS, ids=ids)
def test_hodge_equality_classes(p):
    assert equality_class(1, 2, p) == named_vectors(p).u1
    with pytest.raises(ValueError, match="no integral equality class"):
        equality_class(2, 2, p)


# 5 -------------------------------------------------------------------------

def _cases(p=DEFAULT_PARAMS):
    cases = verify_heart_cases(p, WINDOW) + verify_genericity_cases(None, p, WINDOW) \
        + verify_Px_stability(WINDOW, p)
    return {c.name: c for c in cases}


@pytest.mark.criterion(5)
def test_case_bounds():
    c = _cases()
    assert c["heart Im Z(F[1])=1λ"].bound_sq == Fraction(3, 16)
    assert c["heart Im Z(F[1])=2λ"].bound_sq == Fraction(9, 40)
    # (3√10/20)² = 90/400
    assert (Fraction(3, 20) ** 2) * 10 == Fraction(9, 40)
    assert c["generic n=1 r>=4"].bound_sq == Fraction(21, 160)
    assert c["generic n=2 r>=4"].bound_sq == Fraction(9, 32)
    assert c["stability n=1 r>=4"].bound_sq == Fraction(21, 160)
    assert c["stability n=2 r>=4"].bound_sq == Fraction(9, 32)
    for bound in (Fraction(3, 16), Fraction(9, 40), Fraction(21, 160), Fraction(9, 32)):
        assert bound < Fraction(3, 8)


@pytest.mark.criterion(5)
def test_quantization_gaps():
    c = _cases()
    expected = {
        "generic n=1 r=0": (Fraction(3, 8), Fraction(1, 2)),
        "generic n=1 r=2": (Fraction(-1), Fraction(-3, 4)),
        "generic n=2 r=0": (Fraction(3, 4), Fraction(1)),
        "generic n=2 r=2": (Fraction(-1, 2), Fraction(-3, 8)),
    }
    for name, (lo, hi) in expected.items():
        assert c[name].interval == (lo, hi, True, True)
        assert quarter_points(lo, hi) == []
    # over the relaxed window λ ∈ (1/2, 3/4) the n=1 interval widens to (7/24, 1/2)
    assert dict(c["generic n=1 r=0"].extra)["relaxed_interval"] == "(7/24, 1/2)"
    assert quarter_points(Fraction(7, 24), Fraction(1, 2)) == []


@pytest.mark.criterion(5)
@pytest.mark.parametrize("p", ALL_PARAMS, ids=ids)
def test_every_case_excludes_window(p):
    c = _cases(p)
    assert all(case.excludes_window for case in c.values())
    pinned = c["stability n=1 r=2"]
    assert pinned.assumptions == (HOM_U1_PX,) == ("Hom(U_1,P_x)=0 for all x",)
    assert all(not case.assumptions for name, case in c.items() if name != "stability n=1 r=2")


# 6 -------------------------------------------------------------------------

@pytest.mark.criterion(6)
def test_no_walls_in_window():
    px = named_vectors(DEFAULT_PARAMS).px
    assert walls_for(px, WINDOW, Box(), DEFAULT_PARAMS) == []


@pytest.mark.criterion(6)
def test_single_wall_on_wide_window():
    px = named_vectors(DEFAULT_PARAMS).px
    walls = walls_for(px, WIDE, Box(), DEFAULT_PARAMS)
    assert [w.lambda_sq for w in walls] == [Fraction(9, 16)]


@pytest.mark.criterion(6)
def test_grid_scan_agrees():
    p = DEFAULT_PARAMS
    nv = named_vectors(p)
    step = Fraction(1, 256)
    for window in (WINDOW, WIDE):
        walls = walls_for(nv.px, window, Box(), p)
        scan = scan_grid(nv.px, window, step, Box(), p, **px_scan_defaults(p))
        assert check_agreement(walls, scan) == []
    inside = scan_grid(nv.px, WINDOW, step, Box(), p, **px_scan_defaults(p))
    assert inside.violations == [] and len(inside.samples) == 47


@pytest.mark.criterion(6)
def test_violation_past_the_wall():
    p = DEFAULT_PARAMS
    nv = named_vectors(p)
    scan = scan_grid(nv.px, WIDE, Fraction(1, 256), Box(), p, **px_scan_defaults(p))
    at = [v for v in scan.violations if v.lambda_sq == Fraction(5, 8)]
    assert at, "no violation at λ² = 5/8"
    # the destabilising sequence is v_tor → v_Px → v_U1
    assert any(v.sub == nv.tor and v.quotient == nv.u1 and v.relation == "gt" for v in at)
    # equal phases on the wall, strictly larger beyond it, nothing before it
    assert {(v.sub, v.quotient) for v in scan.violations} == {(nv.tor, nv.u1)}
    assert [v.relation for v in scan.violations if v.lambda_sq == Fraction(9, 16)] == ["eq"]
    assert all(v.relation == "gt" for v in scan.violations if v.lambda_sq > Fraction(9, 16))
    assert min(v.lambda_sq for v in scan.violations) == Fraction(9, 16)


# 7 -------------------------------------------------------------------------

@pytest.mark.criterion(7)
def test_cubic_table():
    got = {r.label: r.value for r in euler_table(strict=True)}
    assert got == {
        "χ(O)": 1, "χ(O(H))": 6, "χ(O(2H))": 21, "χ(O(3H))": 55, "χ(I_x(H))": 5,
        "χ(I_x(2H))": 20, "χ(F_x(H))": 10, "χ(O,F_x)": 0, "χ(F_x,O(-H))": 1,
        "χ(I_x(H),O)": -1, "χ(F_x,F_x)": 4, "χ(O_x,O_x)": 0, "χ(pr(O_x),pr(O_x))": -6,
    }


@pytest.mark.criterion(7)
def test_projection_and_cross_module():
    assert projection_class(ch_line(0)).is_zero()
    assert projection_class(ch_line(1)).is_zero()
    pr = projection_class(ch_point())
    assert in_Ax(pr)
    px = named_vectors(DEFAULT_PARAMS).px
    assert -euler(pr, pr) == pair(px, px, DEFAULT_PARAMS) == 6


# 8 -------------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_verify_exits_zero_on_defaults(capsys):
    assert main(["verify-paper"]) == 0
    out = capsys.readouterr().out
    assert "walls in (√(3/8),3/4): none" in out
    assert "0 failed" in out


@pytest.mark.criterion(8)
def test_outputs_are_byte_deterministic(tmp_path):
    cfg = tmp_path / "run.conf"
    cfg.write_text("sweep = 1,2; -1,6; 3,10\n")
    dirs = []
    for i, workers in enumerate(("1", "1", "2")):
        out = tmp_path / f"run{i}"
        assert main(["verify-paper", "--config", str(cfg), "--workers", workers,
                     "--out-dir", str(out)]) == 0
        dirs.append(out)
    names = ["report.json", "walls.csv", "walls.svg"]
    for other in dirs[1:]:
        match, mismatch, errors = filecmp.cmpfiles(dirs[0], other, names, shallow=False)
        assert (mismatch, errors) == ([], [])


@pytest.mark.criterion(8)
@pytest.mark.parametrize("flag,value,message", [
    ("--sh", "2", "sh must be odd"),
    ("--s2", "4", "s² ≢ 2 mod 4"),
])
def test_invalid_params_exit_two(flag, value, message, capsys):
    assert main(["verify-paper", flag, value]) == 2
    assert message in capsys.readouterr().err
