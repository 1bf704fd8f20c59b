"""The λ-family of central charges ``Z_λ(v) = ⟨v, exp(B̃ + iλh)⟩``.

The twisting class is ``B̃ = s/2 + h/4``, so ``B̃·h = (sh + 1)/2`` and
``B̃² = s²/4 + sh/4 + 1/8``.  Pairing against

    Re exp(B̃ + iλh) = (1, B̃, B̃²/2 − λ²)
    Im exp(B̃ + iλh) = (0, λh, λ·B̃h)

gives ``Re Z = c·B̃ − r·B̃²/2 + r·λ² − d`` and ``Im Z = λ(c·h − r·B̃h)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exact import ChargeValue, SqrtRat, sign, sign_at
from .k3lattice import H2, LatticeParams, MukaiVec, check_params, pair

DEFAULT_CHI_MAX = 2


@dataclass(frozen=True)
class ChargeModel:
    params: LatticeParams = LatticeParams()

    def __post_init__(self) -> None:
        check_params(self.params)

    @property
    def bt_h(self) -> Fraction:
        """B̃·h."""
        return Fraction(self.params.sh + 1, 2)

    @property
    def bt_sq(self) -> Fraction:
        """B̃²."""
        p = self.params
        return Fraction(2 * p.s2 + 2 * p.sh + 1, 8)


class PhaseCmp(enum.Enum):
    LT = "lt"
    EQ = "eq"
    GT = "gt"
    INCOMPARABLE = "incomparable"


def central_charge(v: MukaiVec, m: ChargeModel) -> ChargeValue:
    p = m.params
    r, (a, b), d = v.ambient(p)
    c_s = a * p.s2 + b * p.sh
    c_h = a * p.sh + b * H2
    # everything below is scaled by 8 so that it stays integral
    c_bt8 = 4 * c_s + 2 * c_h
    bt_sq8 = 2 * p.s2 + 2 * p.sh + 1
    re_const8 = c_bt8 - r * bt_sq8 // 2 - 8 * d
    im2 = 2 * c_h - r * (p.sh + 1)
    return ChargeValue(Fraction(re_const8, 8), Fraction(r), Fraction(im2, 2))


def im_quantization(v: MukaiVec) -> int:
    """``Im Z(v)/λ``; always the integer ``2y − x``."""
    return 2 * v.y - v.x


def re_quantization_offset(v: MukaiVec, p: LatticeParams) -> Fraction:
    """``Re Z(v) − (rk v/2)(2λ² + 3/8)``, an integer for every lattice class."""
    z = central_charge(v, ChargeModel(p))
    half_rank = Fraction(v.rank, 2)
    offset_lam2 = z.re_lam2 - 2 * half_rank
    assert offset_lam2 == 0, "λ² terms must cancel"
    offset = z.re_const - half_rank * Fraction(3, 8)
    assert offset.denominator == 1, f"offset {offset} is not integral"
    return offset


def _heart_check(z: ChargeValue, lam2: Fraction) -> str | None:
    n = sign(z.im_lam)
    if n > 0:
        return None
    if n < 0:
        return "not in heart image"
    re = sign_at(z.re_const, z.re_lam2, lam2)
    if re == 0:
        return "vanishing central charge"
    return None if re < 0 else "not in heart image"


def phase_compare(v: MukaiVec, w: MukaiVec, lam: SqrtRat, m: ChargeModel,
                  *, strict: bool = True) -> PhaseCmp:
    """Compare ``φ(v)`` with ``φ(w)`` at ``λ``.

    Both charges must lie in ``{Im > 0} ∪ (−∞, 0)``.  With ``strict=False``
    an out-of-range charge gives ``INCOMPARABLE`` instead of raising.
    """
    lam2 = lam.radicand
    if lam2 <= 0:
        raise ValueError("λ must be positive")
    zv, zw = central_charge(v, m), central_charge(w, m)
    return compare_charges(zv, zw, lam2, strict=strict)


def compare_charges(zv: ChargeValue, zw: ChargeValue, lam2: Fraction,
                    *, strict: bool = True) -> PhaseCmp:
    for z in (zv, zw):
        problem = _heart_check(z, lam2)
        if problem:
            if strict:
                raise ValueError(problem)
            return PhaseCmp.INCOMPARABLE
    # Re(v)·Im(w) − Re(w)·Im(v) = λ·(cross_const + cross_lam2·λ²)
    cross_const, cross_lam2 = cross_coefficients(zv, zw)
    s = sign_at(cross_const, cross_lam2, lam2)
    return {1: PhaseCmp.LT, 0: PhaseCmp.EQ, -1: PhaseCmp.GT}[s]


def cross_coefficients(zv: ChargeValue, zw: ChargeValue) -> tuple[Fraction, Fraction]:
    """Coefficients of ``(Re v·Im w − Re w·Im v)/λ`` as a polynomial in λ²."""
    return (zw.im_lam * zv.re_const - zv.im_lam * zw.re_const,
            zw.im_lam * zv.re_lam2 - zv.im_lam * zw.re_lam2)


def slope_exceeds_tilt(v: MukaiVec, p: LatticeParams) -> str:
    """Compare the twisted slope ``c₁·h / rk`` with ``B̃·h``.

    Rank-zero classes of non-negative degree count as slope ∞.  Classes of
    negative rank, or rank zero with negative degree, are not classes of
    sheaves and give ``"undefined"``.
    """
    bt_h = Fraction(p.sh + 1, 2)
    c_h = v.x * p.sh + v.y * H2
    if v.rank == 0:
        return "above" if im_quantization(v) >= 0 else "undefined"
    if v.rank < 0:
        return "undefined"
    s = sign(Fraction(c_h, v.rank) - bt_h)
    return {1: "above", 0: "equal", -1: "below"}[s]


@dataclass(frozen=True)
class HodgeBound:
    """``Re Z ≥ a + b·λ²`` for simple objects; strict when never attained."""

    n: int
    rank: int
    a: Fraction
    b: Fraction
    strict: bool

    def as_charge(self) -> ChargeValue:
        return ChargeValue(self.a, self.b, self.n)

    def __str__(self) -> str:
        rel = ">" if self.strict else "≥"
        return f"Re Z {rel} {self.b}λ² {'-' if self.a < 0 else '+'} {abs(self.a)}"


def _check_rank(r: int) -> None:
    if r <= 0 or r % 2:
        raise ValueError(f"rank must be even and positive, got {r}")


def hodge_min_re(n: int, r: int, chi_max: int = DEFAULT_CHI_MAX,
                 p: LatticeParams = LatticeParams()) -> HodgeBound:
    """Lower bound on ``Re Z`` for a simple object of rank ``r`` and ``Im Z = nλ``.

    ``Re Z = (−χ + 2r²λ² − L²)/(2r)`` with ``L = c − rB̃`` and
    ``L·h = n``; Hodge index gives ``L² ≤ n²/h²`` and simplicity
    gives ``χ ≤ chi_max``.
    """
    _check_rank(r)
    l_sq_max = Fraction(n * n, H2)
    a = (-chi_max - l_sq_max) / (2 * r)
    try:
        equality_class(n, r, p, chi_max)
        strict = False
    except ValueError:
        strict = True
    return HodgeBound(n, r, a, Fraction(r), strict)


def equality_class(n: int, r: int, p: LatticeParams = LatticeParams(),
                   chi_max: int = DEFAULT_CHI_MAX) -> MukaiVec:
    """The integral class attaining :func:`hodge_min_re`, if any.

    Equality needs ``L = (n/2)·h`` (so ``y = r/4 + n/2``) and
    ``⟨v, v⟩ = −chi_max``, which pins ``z``.
    """
    _check_rank(r)
    check_params(p)
    x = r // 2
    y = Fraction(r, 4) + Fraction(n, 2)
    if y.denominator != 1:
        raise ValueError(f"no integral equality class: c = {x}s + {y}h is not integral")
    y = int(y)
    z = Fraction(-2 * x * x + 2 * x * y * p.sh + 2 * y * y + chi_max, 4 * x)
    if z.denominator != 1:
        raise ValueError("no integral equality class: ⟨v,v⟩ = "
                         f"{-chi_max} forces z = {z}")
    v = MukaiVec(x, y, int(z))
    assert pair(v, v, p) == -chi_max and im_quantization(v) == n
    return v


def re_from_square(v: MukaiVec, p: LatticeParams) -> ChargeValue:
    """``Re Z`` rebuilt from ``⟨v,v⟩`` using ``L² = n²/2`` (Pic S = ℤh)."""
    if v.rank <= 0:
        raise ValueError("needs positive rank")
    n = im_quantization(v)
    r = v.rank
    a = (Fraction(pair(v, v, p)) - Fraction(n * n, H2)) / (2 * r)
    return ChargeValue(a, r, n)
