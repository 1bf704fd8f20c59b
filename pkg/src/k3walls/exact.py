"""Exact scalars: rationals, square roots of rationals, and λ-charges.

Every λ-dependent quantity handled by this package has the shape
``(a + b·λ²) + i·n·λ`` with rational ``a, b, n``; phase comparisons between
two such charges reduce to the sign of a polynomial that is linear in λ².
Nothing here ever touches a float.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Fraction
RatLike = Union[Fraction, int, str]

_OPS = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
}


def rat(value: RatLike) -> Fraction:
    """Coerce ``value`` to a reduced :class:`~fractions.Fraction`.

    Strings accept ``"p/q"`` and exact decimals such as ``"0.5"``.
    Floats are refused because their binary expansion is not what the
    user typed.
    """
    if type(value) is Fraction:
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


def rat_arith(a: RatLike, b: RatLike, op: str) -> Fraction:
    try:
        fn = _OPS[op.replace("×", "*").replace("÷", "/").replace("−", "-")]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None
    a, b = rat(a), rat(b)
    if fn is operator.truediv and b == 0:
        raise ZeroDivisionError("division by zero")
    return fn(a, b)


def sign(q: RatLike) -> int:
    q = rat(q)
    return (q > 0) - (q < 0)


def sign_at(a: RatLike, b: RatLike, lam2: RatLike) -> int:
    """Sign of ``a + b·λ²`` at the exact value ``λ² = lam2``."""
    lam2 = rat(lam2)
    if lam2 < 0:
        raise ValueError("λ² must be non-negative")
    return sign(rat(a) + rat(b) * lam2)


@dataclass(frozen=True, order=False)
class SqrtRat:
    """The non-negative real number ``√radicand``."""

    radicand: Fraction

    def __post_init__(self) -> None:
        r = rat(self.radicand)
        if r < 0:
            raise ValueError("radicand must be non-negative")
        object.__setattr__(self, "radicand", r)

    @classmethod
    def of(cls, value: RatLike) -> "SqrtRat":
        """Embed a non-negative rational ``q`` as ``√(q²)``."""
        value = rat(value)
        if value < 0:
            raise ValueError("SqrtRat represents non-negative reals only")
        return cls(value * value)

    @property
    def square(self) -> Fraction:
        return self.radicand

    def as_rat(self) -> Fraction | None:
        """The value as a rational when the radicand is a rational square."""
        num = _isqrt_exact(self.radicand.numerator)
        den = _isqrt_exact(self.radicand.denominator)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    def __lt__(self, other: "SqrtRat") -> bool:
        return self.radicand < other.radicand

    def __le__(self, other: "SqrtRat") -> bool:
        return self.radicand <= other.radicand

    def __gt__(self, other: "SqrtRat") -> bool:
        return self.radicand > other.radicand

    def __ge__(self, other: "SqrtRat") -> bool:
        return self.radicand >= other.radicand

    def __float__(self) -> float:
        return float(self.radicand) ** 0.5

    def __str__(self) -> str:
        exact = self.as_rat()
        return str(exact) if exact is not None else f"sqrt({self.radicand})"


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    root = isqrt(n)
    return root if root * root == n else None


def sign_linear_in_lambda(p: RatLike, q: RatLike, lam: SqrtRat) -> int:
    """Exact sign of ``p + q·λ`` for ``λ = √r``."""
    p, q = rat(p), rat(q)
    sp, sq = sign(p), sign(q)
    if sq == 0 or lam.radicand == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: compare |p| with |q|·λ through squares
    return sp * sign(p * p - q * q * lam.radicand)


class _All:
    __slots__ = ()

    def __repr__(self) -> str:
        return "ALL"


ALL = _All()


def solve_lambda2_root(a1: RatLike, b1: RatLike, a2: RatLike, b2: RatLike):
    """Solve ``a1 + b1·λ² = a2 + b2·λ²`` for λ² ≥ 0.

    Returns the root as a Fraction, :data:`ALL` when both sides coincide,
    or ``None`` when there is no admissible root.
    """
    da, db = rat(a1) - rat(a2), rat(b1) - rat(b2)
    if db == 0:
        return ALL if da == 0 else None
    root = -da / db
    return root if root >= 0 else None


@dataclass(frozen=True)
class ChargeValue:
    """``Z = (re_const + re_lam2·λ²) + i·im_lam·λ``."""

    re_const: Fraction
    re_lam2: Fraction
    im_lam: Fraction

    def __post_init__(self) -> None:
        for name in ("re_const", "re_lam2", "im_lam"):
            object.__setattr__(self, name, rat(getattr(self, name)))

    def __add__(self, other: "ChargeValue") -> "ChargeValue":
        return ChargeValue(self.re_const + other.re_const,
                           self.re_lam2 + other.re_lam2,
                           self.im_lam + other.im_lam)

    def __sub__(self, other: "ChargeValue") -> "ChargeValue":
        return self + (-other)

    def __neg__(self) -> "ChargeValue":
        return ChargeValue(-self.re_const, -self.re_lam2, -self.im_lam)

    def scale(self, k: RatLike) -> "ChargeValue":
        k = rat(k)
        return ChargeValue(k * self.re_const, k * self.re_lam2, k * self.im_lam)

    def re_at(self, lam2: RatLike) -> Fraction:
        return self.re_const + self.re_lam2 * rat(lam2)

    def __str__(self) -> str:
        return f"({self.re_const} + {self.re_lam2}λ²) + {self.im_lam}λi"


@dataclass(frozen=True)
class LamInterval:
    """An interval of λ values with exact √-rational endpoints.

    ``hi is None`` means +∞.  The empty interval is normalised to
    ``(0, 0)`` with both ends open.
    """

    lo: SqrtRat
    hi: SqrtRat | None
    lo_open: bool = True
    hi_open: bool = True

    def __post_init__(self) -> None:
        if self._is_empty_raw():
            object.__setattr__(self, "lo", SqrtRat(Fraction(0)))
            object.__setattr__(self, "hi", SqrtRat(Fraction(0)))
            object.__setattr__(self, "lo_open", True)
            object.__setattr__(self, "hi_open", True)

    def _is_empty_raw(self) -> bool:
        if self.hi is None:
            return False
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and (self.lo_open or self.hi_open)

    @classmethod
    def empty(cls) -> "LamInterval":
        return cls(SqrtRat(Fraction(0)), SqrtRat(Fraction(0)), True, True)

    @classmethod
    def open_sq(cls, lo_sq: RatLike, hi_sq: RatLike | None) -> "LamInterval":
        """Open interval ``(√lo_sq, √hi_sq)``."""
        hi = None if hi_sq is None else SqrtRat(rat(hi_sq))
        return cls(SqrtRat(rat(lo_sq)), hi, True, True)

    @property
    def is_empty(self) -> bool:
        return self.hi is not None and self.lo == self.hi and self.lo_open and self.hi_open

    @property
    def lo_sq(self) -> Fraction:
        return self.lo.radicand

    @property
    def hi_sq(self) -> Fraction | None:
        return None if self.hi is None else self.hi.radicand

    def contains_sq(self, lam2: RatLike) -> bool:
        """Membership test for ``λ = √lam2``."""
        lam2 = rat(lam2)
        if self.is_empty:
            return False
        above = lam2 > self.lo_sq if self.lo_open else lam2 >= self.lo_sq
        if self.hi is None:
            return above
        below = lam2 < self.hi_sq if self.hi_open else lam2 <= self.hi_sq
        return above and below

    def contains(self, lam: SqrtRat) -> bool:
        return self.contains_sq(lam.radicand)

    def __str__(self) -> str:
        if self.is_empty:
            return "∅"
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open or self.hi is None else "]"
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{left}{self.lo}, {hi}{right}"


def linear_sign_on(a: RatLike, b: RatLike, lo_sq: RatLike, hi_sq: RatLike) -> int:
    """Sign of ``a + b·λ²`` on the whole open range ``lo_sq < λ² < hi_sq``.

    Returns ``+1``/``-1`` when the sign is constant there and ``0`` when the
    function vanishes or changes sign inside.
    """
    a, b = rat(a), rat(b)
    s_lo, s_hi = sign(a + b * rat(lo_sq)), sign(a + b * rat(hi_sq))
    if s_lo >= 0 and s_hi >= 0 and (s_lo, s_hi) != (0, 0):
        return 1
    if s_lo <= 0 and s_hi <= 0 and (s_lo, s_hi) != (0, 0):
        return -1
    return 0


def quarter_points(lo: RatLike, hi: RatLike, *, lo_open: bool = True,
                   hi_open: bool = True, denominator: int = 4) -> list[Fraction]:
    """All points of ``(1/denominator)·ℤ`` inside the given interval."""
    lo, hi = rat(lo), rat(hi)
    k = (lo * denominator).__floor__()
    out = []
    while Fraction(k, denominator) <= hi:
        point = Fraction(k, denominator)
        left_ok = point > lo if lo_open else point >= lo
        right_ok = point < hi if hi_open else point <= hi
        if left_ok and right_ok:
            out.append(point)
        k += 1
    return out
