"""Numerical K-theory of a smooth cubic fourfold ``X ⊂ P⁵``.

Only line bundles ``O(kH)`` and skyscrapers ``O_x`` enter, so cohomology is
modelled by ``ℚ[H]/(H⁵)`` with ``∫H⁴ = 3`` and the point class ``H⁴/3``.
K-classes are integer combinations of those generators; their Chern
characters are computed on demand and equality is numerical (equal ``ch``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

DEGREE = 3
DIM = 4


@dataclass(frozen=True)
class CohClass:
    """``c0 + c1·H + … + c4·H⁴`` in ``ℚ[H]/(H⁵)``."""

    c: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.c) != DIM + 1:
            raise ValueError("need exactly five coefficients")
        object.__setattr__(self, "c", tuple(Fraction(x) for x in self.c))

    @classmethod
    def of(cls, *coeffs) -> "CohClass":
        coeffs = list(coeffs) + [0] * (DIM + 1 - len(coeffs))
        return cls(tuple(coeffs))

    def __add__(self, other: "CohClass") -> "CohClass":
        return CohClass(tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other: "CohClass") -> "CohClass":
        return CohClass(tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self) -> "CohClass":
        return CohClass(tuple(-a for a in self.c))

    def scale(self, k) -> "CohClass":
        return CohClass(tuple(Fraction(k) * a for a in self.c))

    def __mul__(self, other: "CohClass") -> "CohClass":
        out = [Fraction(0)] * (DIM + 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(other.c[: DIM + 1 - i]):
                out[i + j] += a * b
        return CohClass(tuple(out))

    def dual(self) -> "CohClass":
        """Negate odd-degree parts (``ch(E^∨)`` from ``ch(E)``)."""
        return CohClass(tuple(a if i % 2 == 0 else -a for i, a in enumerate(self.c)))

    def inverse(self) -> "CohClass":
        if self.c[0] == 0:
            raise ZeroDivisionError("degree-0 part vanishes")
        inv = [1 / self.c[0]] + [Fraction(0)] * DIM
        for k in range(1, DIM + 1):
            inv[k] = -sum(self.c[j] * inv[k - j] for j in range(1, k + 1)) / self.c[0]
        return CohClass(tuple(inv))

    def integral(self) -> Fraction:
        return DEGREE * self.c[DIM]

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.c) + ")"


ONE = CohClass.of(1)
HYPERPLANE = CohClass.of(0, 1)
POINT = CohClass.of(0, 0, 0, 0, Fraction(1, DEGREE))


def chern_tangent() -> CohClass:
    """``c(T_X) = (1 + H)⁶ / (1 + 3H)``."""
    num = ONE
    for _ in range(6):
        num = num * (ONE + HYPERPLANE)
    return num * (ONE + HYPERPLANE.scale(DEGREE)).inverse()


def todd() -> CohClass:
    """Todd class from the Chern classes, through degree four."""
    c = chern_tangent().c
    c1, c2, c3, c4 = c[1], c[2], c[3], c[4]
    return CohClass((Fraction(1),
                     c1 / 2,
                     (c1 ** 2 + c2) / 12,
                     c1 * c2 / 24,
                     (-c1 ** 4 + 4 * c1 ** 2 * c2 + 3 * c2 ** 2 + c1 * c3 - c4) / 720))


def _exp_line(k: int) -> CohClass:
    return CohClass(tuple(Fraction(k ** i, factorial(i)) for i in range(DIM + 1)))


# K-classes ---------------------------------------------------------------

POINT_KEY = "Ox"


def _key_order(key) -> tuple:
    return (1, 0) if key == POINT_KEY else (0, key)


def _generator_name(key) -> str:
    if key == POINT_KEY:
        return "Ox"
    if key == 0:
        return "O"
    if key == 1:
        return "O(H)"
    if key == -1:
        return "O(-H)"
    return f"O({key}H)"


@dataclass(frozen=True, eq=False)
class KClass:
    """Integer combination of ``[O(kH)]`` and ``[O_x]``.

    The formal combination is kept for display; equality and hashing use
    the Chern character only.
    """

    terms: tuple[tuple[object, int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict) -> "KClass":
        items = sorted(((k, v) for k, v in d.items() if v), key=lambda kv: _key_order(kv[0]))
        return cls(tuple(items))

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def ch(self) -> CohClass:
        total = CohClass.of()
        for key, coeff in self.terms:
            gen = ch_point_coh() if key == POINT_KEY else _exp_line(key)
            total = total + gen.scale(coeff)
        return total

    def __add__(self, other: "KClass") -> "KClass":
        d = self.as_dict()
        for k, v in other.terms:
            d[k] = d.get(k, 0) + v
        return KClass.from_dict(d)

    def scale(self, k: int) -> "KClass":
        return KClass.from_dict({key: k * v for key, v in self.terms})

    def __neg__(self) -> "KClass":
        return self.scale(-1)

    def __sub__(self, other: "KClass") -> "KClass":
        return self + (-other)

    def __rmul__(self, k: int) -> "KClass":
        return self.scale(k)

    def twist(self, k: int) -> "KClass":
        """``⊗ O(kH)``; skyscrapers are unchanged."""
        return KClass.from_dict({key if key == POINT_KEY else key + k: v
                                 for key, v in self.terms})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KClass):
            return NotImplemented
        return self.ch == other.ch

    def __hash__(self) -> int:
        return hash(self.ch)

    def is_zero(self) -> bool:
        return self.ch == CohClass.of()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (key, v) in enumerate(self.terms):
            mag = "" if abs(v) == 1 else str(abs(v))
            body = f"{mag}[{_generator_name(key)}]"
            if i == 0:
                parts.append(("-" if v < 0 else "") + body)
            else:
                parts.append(("- " if v < 0 else "+ ") + body)
        return " ".join(parts)


def ch_point_coh() -> CohClass:
    return POINT


def ch_line(k: int) -> KClass:
    return KClass(((k, 1),))


def ch_point() -> KClass:
    return KClass(((POINT_KEY, 1),))


def euler(e: KClass, f: KClass) -> int:
    """``χ(E, F) = ∫ ch(E)^∨·ch(F)·td_X``; integral classes give integers."""
    value = (e.ch.dual() * f.ch * todd()).integral()
    if value.denominator != 1:
        raise ArithmeticError(f"non-integer Euler characteristic {value}")
    return int(value)


def mutate_left(e: KClass, f: KClass) -> KClass:
    """Class of ``L_E F = cone(RHom(E,F)⊗E → F)``."""
    return f - euler(e, f) * e


def mutate_right(e: KClass, f: KClass) -> KClass:
    """Class of ``R_E F = cone(F → RHom(F,E)^*⊗E)[−1]``."""
    return f - euler(f, e) * e


def shift(f: KClass, n: int) -> KClass:
    return f if n % 2 == 0 else -f


def projection_class(e: KClass) -> KClass:
    """``R_{O(−H)} L_O L_{O(H)}`` followed by ``[1]``."""
    step = mutate_left(ch_line(1), e)
    step = mutate_left(ch_line(0), step)
    step = mutate_right(ch_line(-1), step)
    return shift(step, 1)


def in_Ax(e: KClass) -> bool:
    return all(euler(ch_line(i), e) == 0 for i in range(3))


def ideal_point(k: int = 0) -> KClass:
    """``[I_x(kH)] = [O(kH)] − [O_x]``."""
    return ch_line(k) - ch_point()


def fx_class(k: int = 0) -> KClass:
    """``[F_x(kH)]``, from ``0 → F_x → O^{⊕5} → I_x(H) → 0``."""
    return (5 * ch_line(0) - ideal_point(1)).twist(k)


# the table ---------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    label: str
    value: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.value == self.expected


class TableMismatch(AssertionError):
    def __init__(self, rows: list[TableRow]):
        super().__init__("; ".join(f"{r.label} = {r.value}, expected {r.expected}" for r in rows))
        self.rows = rows


def euler_table(strict: bool = True) -> list[TableRow]:
    """The Euler characteristics behind the Lagrangian construction, with expected values."""
    O, pt = ch_line(0), ch_point()
    pr_pt = projection_class(pt)
    rows = [
        TableRow("χ(O)", euler(O, O), 1),
        TableRow("χ(O(H))", euler(O, ch_line(1)), 6),
        TableRow("χ(O(2H))", euler(O, ch_line(2)), 21),
        TableRow("χ(O(3H))", euler(O, ch_line(3)), 55),
        TableRow("χ(I_x(H))", euler(O, ideal_point(1)), 5),
        TableRow("χ(I_x(2H))", euler(O, ideal_point(2)), 20),
        TableRow("χ(F_x(H))", euler(O, fx_class(1)), 10),
        TableRow("χ(O,F_x)", euler(O, fx_class()), 0),
        TableRow("χ(I_x(H),O)", euler(ideal_point(1), O), -1),
        TableRow("χ(F_x,O(-H))", euler(fx_class(), ch_line(-1)), 1),
        TableRow("χ(F_x,F_x)", euler(fx_class(), fx_class()), 4),
        TableRow("χ(O_x,O_x)", euler(pt, pt), 0),
        TableRow("χ(pr(O_x),pr(O_x))", euler(pr_pt, pr_pt), -6),
    ]
    bad = [r for r in rows if not r.ok]
    if strict and bad:
        raise TableMismatch(bad)
    return rows


section4_table = euler_table  # name fixed by the external interface


# class expressions ---------------------------------------------------------

class ClassParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class _Parser:
    """``expr := ['-'] term (('+'|'-') term)*``, ``term := [int ['*']] atom``,
    atoms ``O``, ``O(kH)``, ``Ox``, ``Ix``, ``Ix(kH)``, ``Fx``, ``Fx(kH)``,
    ``pr(expr)``, ``[atom]`` and ``(expr)``.  Whitespace is ignored.
    """

    def __init__(self, text: str):
        self.src = text
        self.toks = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.i = 0

    def pos(self) -> int:
        return self.toks[self.i][0] if self.i < len(self.toks) else len(self.src)

    def peek(self, n: int = 1) -> str:
        return "".join(ch for _, ch in self.toks[self.i:self.i + n])

    def eat(self, s: str) -> bool:
        if self.peek(len(s)) == s:
            self.i += len(s)
            return True
        return False

    def expect(self, s: str) -> None:
        if not self.eat(s):
            raise ClassParseError(f"expected {s!r}", self.pos())

    def parse(self) -> KClass:
        if not self.toks:
            raise ClassParseError("empty expression", 0)
        out = self.expr()
        if self.i != len(self.toks):
            raise ClassParseError(f"unexpected {self.peek()!r}", self.pos())
        return out

    def expr(self) -> KClass:
        if self.eat("-"):
            total = -self.term()
        else:
            self.eat("+")
            total = self.term()
        while True:
            if self.eat("+"):
                total = total + self.term()
            elif self.eat("-"):
                total = total - self.term()
            else:
                return total

    def integer(self) -> int | None:
        start = self.i
        while self.peek().isdigit():
            self.i += 1
        if self.i == start:
            return None
        return int("".join(ch for _, ch in self.toks[start:self.i]))

    def term(self) -> KClass:
        k = self.integer()
        if k is not None:
            self.eat("*")
            if self.peek() == "" or self.peek() in "+-)]":
                raise ClassParseError("bare integer is not a class", self.pos())
            return k * self.atom()
        return self.atom()

    def twist_arg(self) -> int:
        """``(kH)``, ``(H)``, ``(-H)`` or ``(0)``; zero when absent."""
        if not self.eat("("):
            return 0
        sgn = -1 if self.eat("-") else 1
        k = self.integer()
        if self.eat("H"):
            k = 1 if k is None else k
        elif k != 0:
            raise ClassParseError("expected 'H'", self.pos())
        self.expect(")")
        return sgn * k

    def atom(self) -> KClass:
        at = self.pos()
        if self.eat("["):
            inner = self.expr()
            self.expect("]")
            return inner
        if self.eat("pr("):
            inner = self.expr()
            self.expect(")")
            return projection_class(inner)
        if self.eat("Ox"):
            return ch_point()
        if self.eat("Ix"):
            return ideal_point(self.twist_arg())
        if self.eat("Fx"):
            return fx_class(self.twist_arg())
        if self.eat("O"):
            return ch_line(self.twist_arg())
        if self.eat("("):
            inner = self.expr()
            self.expect(")")
            return inner
        found = self.peek() or "end of input"
        raise ClassParseError(f"expected a class, found {found!r}", at)


def parse_class(text: str) -> KClass:
    return _Parser(text).parse()
