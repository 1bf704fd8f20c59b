"""Twisted Mukai lattice of a Picard-rank-one twisted K3 surface of degree 2.

A class is stored by integer coordinates ``(x, y, z)`` over the basis

    u = (2, s, t),   η = (0, h, 0),   δ = (0, 0, 1)

so the ambient Mukai vector is ``(2x, x·s + y·h, x·t + z)``.  The Brauer
class has order 2, hence every rank is even and ``x`` is unconstrained.
Only the intersection numbers ``s·h`` and ``s²`` of the data enter any
formula; ``h² = 2`` and ``t = (s² + 2)/4`` are fixed by the geometry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

H2 = 2
BRAUER_ORDER = 2


class ParamError(ValueError):
    """Raised for lattice parameters that violate an integrality constraint."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


@dataclass(frozen=True)
class LatticeParams:
    sh: int = 1
    s2: int = 2

    @property
    def t(self) -> int:
        if (self.s2 + 2) % 4:
            raise ParamError(validate_params(self))
        return (self.s2 + 2) // 4

    @property
    def h2(self) -> int:
        return H2

    @property
    def d(self) -> int:
        return BRAUER_ORDER


DEFAULT_PARAMS = LatticeParams()
SWEEP = tuple(LatticeParams(sh, s2)
              for sh in (1, -1, 3, -3, 5, -5)
              for s2 in (2, 6, 10, -2))


def validate_params(p: LatticeParams) -> list[str]:
    """Names of every violated constraint; empty when ``p`` is admissible."""
    errors = []
    if p.sh % 2 == 0:
        errors.append("sh must be odd")
    if p.s2 % 4 != 2:
        errors.append("s² ≢ 2 mod 4")
    return errors


def check_params(p: LatticeParams) -> LatticeParams:
    errors = validate_params(p)
    if errors:
        raise ParamError(errors)
    return p


@dataclass(frozen=True)
class MukaiVec:
    x: int
    y: int
    z: int

    def __add__(self, other: "MukaiVec") -> "MukaiVec":
        return MukaiVec(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "MukaiVec") -> "MukaiVec":
        return MukaiVec(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "MukaiVec":
        return MukaiVec(-self.x, -self.y, -self.z)

    def __mul__(self, k: int) -> "MukaiVec":
        return MukaiVec(k * self.x, k * self.y, k * self.z)

    __rmul__ = __mul__

    @property
    def rank(self) -> int:
        return BRAUER_ORDER * self.x

    def coords(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def ambient(self, p: LatticeParams) -> tuple[int, tuple[int, int], int]:
        """``(r, (a, b), d)`` with first Chern class ``a·s + b·h``."""
        return (self.rank, (self.x, self.y), self.x * p.t + self.z)

    def ambient_str(self, p: LatticeParams) -> list:
        r, (a, b), d = self.ambient(p)
        return [r, f"{a}*s+{b}*h", d]

    def __str__(self) -> str:
        return f"({self.x},{self.y},{self.z})"


U0 = MukaiVec(1, 0, 0)
ETA = MukaiVec(0, 1, 0)
DELTA = MukaiVec(0, 0, 1)


def gram(p: LatticeParams) -> tuple[tuple[int, ...], ...]:
    check_params(p)
    uu = p.s2 - 4 * p.t
    return ((uu, p.sh, -2),
            (p.sh, H2, 0),
            (-2, 0, 0))


def pair(v: MukaiVec, w: MukaiVec, p: LatticeParams) -> int:
    g = gram(p)
    a, b = v.coords(), w.coords()
    return sum(a[i] * g[i][j] * b[j] for i in range(3) for j in range(3))


def ambient_pair(v: MukaiVec, w: MukaiVec, p: LatticeParams) -> int:
    """Mukai pairing ``c·c' − r·d' − d·r'`` evaluated on ambient triples."""
    r, (a, b), d = v.ambient(p)
    r2, (a2, b2), d2 = w.ambient(p)
    cc = a * a2 * p.s2 + (a * b2 + a2 * b) * p.sh + b * b2 * H2
    return cc - r * d2 - d * r2


def euler(v: MukaiVec, w: MukaiVec, p: LatticeParams) -> int:
    """χ(v, w) = −⟨v, w⟩ (twisted Riemann–Roch)."""
    return -pair(v, w, p)


def square(v: MukaiVec, p: LatticeParams) -> int:
    return pair(v, v, p)


def twist(v: MukaiVec, halves: int, p: LatticeParams) -> MukaiVec:
    """Multiply by ``exp(halves·h/2)``.

    With ``D = (k/2)·h`` the product ``(r, c, d)·(1, D, D²/2)`` is
    ``(r, c + rD, d + c·D + r·D²/2)``; in coordinates this is
    ``(x, y + kx, z + ky + x·k·(sh + k)/2)``.
    """
    k, r = halves, v.rank
    c_dot_h = v.x * p.sh + v.y * H2
    new_y = v.y + Fraction(k * r, 2)
    # d' − x·t; t cancels, so invalid s² does not matter here
    new_z = v.z + Fraction(k * c_dot_h, 2) + Fraction(r * k * k * H2, 8)
    bad = [name for name, val in (("y", new_y), ("z", new_z)) if val.denominator != 1]
    if bad:
        raise ValueError(f"twist by {k}/2·h leaves the lattice: non-integral {', '.join(bad)} coordinate")
    return MukaiVec(v.x, int(new_y), int(new_z))


@dataclass(frozen=True)
class NamedVectors:
    u0: MukaiVec
    u1: MukaiVec
    px: MukaiVec
    tor: MukaiVec
    q: MukaiVec

    def items(self):
        return (("v_U0", self.u0), ("v_U1", self.u1), ("v_Px", self.px),
                ("v_tor", self.tor), ("v_Q", self.q))


def named_vectors(p: LatticeParams) -> NamedVectors:
    """The classes of U_0, U_1, P_x, (P_x)_tor and the length-two torsion sheaf."""
    check_params(p)
    return NamedVectors(
        u0=U0,
        u1=MukaiVec(1, 1, (p.sh + 1) // 2),
        px=MukaiVec(1, 2, p.sh),
        tor=MukaiVec(0, 1, (p.sh - 1) // 2),
        q=MukaiVec(0, 0, 2),
    )


def is_spherical(v: MukaiVec, p: LatticeParams) -> bool:
    return pair(v, v, p) == -2


def moduli_dimension(v: MukaiVec, p: LatticeParams) -> int:
    return 2 + pair(v, v, p)
