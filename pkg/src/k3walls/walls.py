"""Walls for a Mukai vector along the λ-family, and exact replays of the
inequality chains that rule out destabilising subobjects in a λ-window.

Two independent routes are provided:

* :func:`walls_for` solves every phase equality exactly (linear in λ²);
* :func:`scan_grid` samples λ² on a rational grid and compares phases
  candidate by candidate, without solving anything.

:func:`check_agreement` cross-checks the two.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

from .charge import (ChargeModel, PhaseCmp, central_charge,
                     cross_coefficients, equality_class, hodge_min_re,
                     im_quantization, phase_compare)
from .exact import (ALL, ChargeValue, LamInterval, SqrtRat, linear_sign_on,
                    quarter_points, solve_lambda2_root)
from .k3lattice import LatticeParams, MukaiVec, check_params, named_vectors, pair

DEFAULT_WINDOW = LamInterval.open_sq(Fraction(3, 8), Fraction(9, 16))
# the family is defined for λ > 1/2
DOMAIN_LO_SQ = Fraction(1, 4)
HOM_U1_PX = "Hom(U_1,P_x)=0 for all x"
SAME_IM_FILTER = ("n = n_target excluded: the quotient would have Im Z = 0 "
                  "with positive-rank H^0, which is impossible")


@dataclass(frozen=True)
class Box:
    x_max: int = 6
    z_max: int = 60

    def __post_init__(self) -> None:
        if self.x_max <= 0 or self.z_max <= 0:
            raise ValueError("box limits must be positive")


@dataclass(frozen=True)
class Candidate:
    w: MukaiVec
    n: int
    rank: int
    sq: int


@dataclass(frozen=True)
class Wall:
    lam: SqrtRat
    witnesses: tuple[Candidate, ...]
    kind: str = "phase-equality"

    @property
    def lambda_sq(self) -> Fraction:
        return self.lam.radicand

    @property
    def witness(self) -> Candidate:
        return self.witnesses[0]


# -- candidate enumeration -------------------------------------------------

def _slice(x: int, n_target: int, z_max: int, sh: int, s2: int) -> list[Candidate]:
    p = LatticeParams(sh, s2)
    out = []
    for n in range(1, n_target):
        if (n + x) % 2:
            continue
        y = (n + x) // 2
        for z in range(-z_max, z_max + 1):
            w = MukaiVec(x, y, z)
            sq = pair(w, w, p)
            if sq >= -2:
                out.append(Candidate(w, n, w.rank, sq))
    return out


def enumerate_candidates(target: MukaiVec, box: Box, p: LatticeParams,
                         workers: int = 1) -> list[Candidate]:
    """Classes ``w`` in the box with ``0 < Im Z(w)/λ < Im Z(target)/λ`` and
    ``⟨w,w⟩ ≥ −2``, in lexicographic ``(x, y, z)`` order.

    With ``workers > 1`` the x-slices are computed in a process pool and
    joined in slice order, so the result does not depend on ``workers``.
    """
    check_params(p)
    n_target = im_quantization(target)
    xs = range(-box.x_max, box.x_max + 1)
    args = [(x, n_target, box.z_max, p.sh, p.s2) for x in xs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            slices = list(pool.map(_slice, *zip(*args)))
    else:
        slices = [_slice(*a) for a in args]
    out = [c for s in slices for c in s]
    out.sort(key=lambda c: c.w.coords())
    return out


# -- exact walls -----------------------------------------------------------

def _check_target(target: MukaiVec) -> None:
    if target.rank <= 0:
        raise ValueError("target must have positive rank")
    if im_quantization(target) <= 0:
        raise ValueError("target must have Im Z > 0")


def _check_window(window: LamInterval) -> None:
    if window.is_empty:
        return
    if window.lo_sq < DOMAIN_LO_SQ or (window.lo_sq == DOMAIN_LO_SQ and not window.lo_open):
        raise ValueError("window must lie in λ > 1/2")


def walls_for(target: MukaiVec, window: LamInterval, box: Box,
              p: LatticeParams, workers: int = 1) -> list[Wall]:
    _check_target(target)
    _check_window(window)
    if window.is_empty:
        return []
    m = ChargeModel(p)
    z_target = central_charge(target, m)
    found: dict[Fraction, list[Candidate]] = {}
    for cand in enumerate_candidates(target, box, p, workers):
        c0, c1 = cross_coefficients(central_charge(cand.w, m), z_target)
        root = solve_lambda2_root(c0, c1, 0, 0)
        # ALL: proportional charges for every λ, so no wall
        if root is None or root is ALL or root == 0:
            continue
        if window.contains_sq(root):
            found.setdefault(root, []).append(cand)
    walls = [Wall(SqrtRat(lam2), tuple(found[lam2])) for lam2 in sorted(found)]
    for wall in walls:
        for cand in wall.witnesses:
            assert phase_compare(cand.w, target, wall.lam, m) is PhaseCmp.EQ
    return walls


# -- λ²-sets for the case replays -------------------------------------------

@dataclass(frozen=True)
class Lam2Set:
    """``{λ² : lo ⋖ λ² ⋖ hi}``; ``None`` ends are unbounded."""

    lo: Fraction | None
    hi: Fraction | None
    lo_open: bool = True
    hi_open: bool = True

    @classmethod
    def where(cls, a: Fraction, b: Fraction, strict: bool) -> "Lam2Set | None":
        """Solution set of ``a + b·λ² ≥ 0`` (``> 0`` if strict) in λ² ≥ 0."""
        if b == 0:
            ok = a > 0 if strict else a >= 0
            return cls(Fraction(0), None, False, True) if ok else None
        root = -a / b
        if b > 0:
            return cls(max(root, Fraction(0)), None, strict or root < 0, True)
        if root < 0 or (root == 0 and strict):
            return None
        return cls(Fraction(0), root, False, strict)

    def meets(self, window: LamInterval) -> bool:
        lo, lo_open = window.lo_sq, window.lo_open
        if self.lo is not None and (self.lo > lo or (self.lo == lo and self.lo_open)):
            lo, lo_open = self.lo, self.lo_open
        hi, hi_open = window.hi_sq, window.hi_open
        if self.hi is not None and (hi is None or self.hi < hi
                                    or (self.hi == hi and self.hi_open)):
            hi, hi_open = self.hi, self.hi_open
        if window.is_empty:
            return False
        if hi is None:
            return True
        return lo < hi or (lo == hi and not lo_open and not hi_open)

    def __str__(self) -> str:
        if self.hi is None:
            return f"λ² {'>' if self.lo_open else '≥'} {self.lo}"
        return f"λ² {'<' if self.hi_open else '≤'} {self.hi}"


@dataclass(frozen=True)
class CaseReport:
    name: str
    kind: str
    bound_sq: Fraction | None = None
    bound_strict: bool = False
    interval: tuple | None = None
    excludes_window: bool = False
    assumptions: tuple[str, ...] = ()
    steps: tuple[str, ...] = ()
    checks: tuple[tuple[str, bool], ...] = ()
    annotations: tuple[str, ...] = ()
    extra: tuple[tuple[str, str], ...] = field(default=())


def _fmt(a: Fraction, b: Fraction) -> str:
    if b == 0:
        return str(a)
    return f"{b}λ² {'-' if a < 0 else '+'} {abs(a)}"


def _image(z: tuple[Fraction, Fraction], lo_sq: Fraction, hi_sq: Fraction) -> tuple:
    a, b = z
    ends = sorted((a + b * lo_sq, a + b * hi_sq))
    return (ends[0], ends[1], True, True)


def _bound_case(name: str, lhs: tuple[Fraction, Fraction], rhs: tuple[Fraction, Fraction],
                strict: bool, window: LamInterval, steps: list[str],
                assumptions: tuple[str, ...] = (), annotations: tuple[str, ...] = ()) -> CaseReport:
    """Replay ``lhs ≥ rhs`` (``>`` if strict) as a bound on λ² and test it on the window."""
    a, b = lhs[0] - rhs[0], lhs[1] - rhs[1]
    region = Lam2Set.where(a, b, strict)
    steps = steps + [f"{_fmt(*lhs)} {'>' if strict else '≥'} {_fmt(*rhs)}",
                     f"solution set: {region if region else 'empty'}"]
    bound = None
    if region is not None and region.hi is not None:
        bound = region.hi
    excludes = region is None or not region.meets(window)
    steps.append(f"window λ² ∈ ({window.lo_sq}, {window.hi_sq}): "
                 + ("disjoint" if excludes else "overlaps"))
    return CaseReport(name=name, kind="lambda-sq-bound", bound_sq=bound,
                      bound_strict=bool(region and region.hi_open),
                      excludes_window=excludes, assumptions=assumptions,
                      steps=tuple(steps), annotations=annotations)


def _quarter_case(name: str, value: tuple[Fraction, Fraction], window: LamInterval,
                  steps: list[str], relaxed: LamInterval | None = None) -> CaseReport:
    """``value(λ²)`` must be a quarter-integer; look for one over the window."""
    lo, hi, lo_open, hi_open = _image(value, window.lo_sq, window.hi_sq)
    quarter_pts = quarter_points(lo, hi, lo_open=lo_open, hi_open=hi_open)
    model_pts = quarter_points(lo, hi, lo_open=lo_open, hi_open=hi_open, denominator=1)
    steps = steps + [f"{_fmt(*value)} ranges over ({lo}, {hi})",
                     f"quarter-integers inside: {[str(q) for q in quarter_pts] or 'none'}",
                     f"integers inside: {[str(q) for q in model_pts] or 'none'}"]
    checks = [("quarter-bound", not quarter_pts), ("model-bound", not model_pts)]
    extra = []
    if relaxed is not None:
        rlo, rhi, _, _ = _image(value, relaxed.lo_sq, relaxed.hi_sq)
        r_pts = quarter_points(rlo, rhi)
        steps.append(f"over λ² ∈ ({relaxed.lo_sq}, {relaxed.hi_sq}) it ranges over "
                     f"({rlo}, {rhi}); quarter-integers inside: "
                     f"{[str(q) for q in r_pts] or 'none'}")
        checks.append(("relaxed-window", not r_pts))
        extra.append(("relaxed_interval", f"({rlo}, {rhi})"))
    return CaseReport(name=name, kind="quantization-gap",
                      interval=(lo, hi, lo_open, hi_open),
                      excludes_window=not quarter_pts, steps=tuple(steps),
                      checks=tuple(checks), extra=tuple(extra))


def _re(z: ChargeValue) -> tuple[Fraction, Fraction]:
    return (z.re_const, z.re_lam2)


def _scaled(z: tuple[Fraction, Fraction], k: Fraction) -> tuple[Fraction, Fraction]:
    return (k * z[0], k * z[1])


def _minus(u, v):
    return (u[0] - v[0], u[1] - v[1])


def _neg(u):
    return (-u[0], -u[1])


def _rank_base(r: int) -> tuple[Fraction, Fraction]:
    """``(r/2)(2λ² + 3/8)``."""
    return (Fraction(3 * r, 16), Fraction(r))


def _monotone_in_rank(n: int, r0: int, r_max: int = 64) -> bool:
    """Bound for every even rank in ``[r0, r_max]`` dominates the rank-``r0`` bound."""
    base = hodge_min_re(n, r0)
    return all(hodge_min_re(n, r).a >= base.a and hodge_min_re(n, r).b >= base.b
               for r in range(r0, r_max + 1, 2))


def _hodge(n: int, r: int, p: LatticeParams):
    b = hodge_min_re(n, r, p=p)
    return (b.a, b.b), b.strict


# -- genericity ------------------------------------------------------------

def verify_genericity_cases(target: MukaiVec | None = None, p: LatticeParams = LatticeParams(),
                            window: LamInterval = DEFAULT_WINDOW) -> list[CaseReport]:
    """Rule out equal-phase subobjects ``F`` of a class ``target`` in the window."""
    check_params(p)
    if target is None:
        target = named_vectors(p).px
    _check_target(target)
    m = ChargeModel(p)
    re_e = _re(central_charge(target, m))
    n_e = im_quantization(target)
    relaxed = LamInterval.open_sq(DOMAIN_LO_SQ, window.hi_sq)
    reports = []
    for n in range(1, n_e):
        re_f = _scaled(re_e, Fraction(n, n_e))
        head = [f"Im Z(F) = {n}λ and φ(F) = φ(E) force Re Z(F) = {n}/{n_e}·Re Z(E) = {_fmt(*re_f)}"]
        # rank 0: Re Z(F) itself is the offset
        steps = head + ["rank 0: Re Z(F) ∈ ¼ℤ"]
        if n % 2:
            steps.append("rank 0 classes have Im Z/λ = 2y even, so this case is also empty by parity")
        reports.append(_quarter_case(f"generic n={n} r=0", re_f, window, steps, relaxed=relaxed))
        off = _minus(re_f, _rank_base(2))
        case = _quarter_case(f"generic n={n} r=2", off, window,
                             head + ["rank 2: Re Z(F) − (2λ² + 3/8) ∈ ¼ℤ"])
        if window.lo_sq > DOMAIN_LO_SQ:
            # the same offset evaluated on the stretch of the domain below the window
            blo, bhi, _, _ = _image(off, DOMAIN_LO_SQ, window.lo_sq)
            case = replace(case, annotations=(
                f"below the window, λ² ∈ ({DOMAIN_LO_SQ}, {window.lo_sq}), the offset ranges over "
                f"({blo}, {bhi}); the interval over the window itself is "
                f"({case.interval[0]}, {case.interval[1]})",))
        reports.append(case)
        bound, strict = _hodge(n, 4, p)
        steps = head + [f"rank ≥ 4: Re Z(F) ≥ {_fmt(*bound)} (simple object, Hodge index)",
                        f"rank bound monotone in r ≥ 4: {_monotone_in_rank(n, 4)}"]
        reports.append(_bound_case(f"generic n={n} r>=4", re_f, bound, False, window, steps))
    return reports


# -- heart membership ------------------------------------------------------

def verify_heart_cases(p: LatticeParams = LatticeParams(),
                       window: LamInterval = DEFAULT_WINDOW,
                       target: MukaiVec | None = None) -> list[CaseReport]:
    """Replay ``E ∈ T``: a subobject ``F[1] ⊂ E`` with ``F`` a μ-stable sheaf."""
    check_params(p)
    if target is None:
        target = named_vectors(p).px
    m = ChargeModel(p)
    re_e = _re(central_charge(target, m))
    n_e = im_quantization(target)
    reports = []
    for k in range(1, n_e + 1):
        name = f"heart Im Z(F[1])={k}λ"
        if k == n_e:
            steps = (f"Im Z(G) = Im Z(E) − Im Z(F[1]) = {n_e - k}λ",
                     "H^0(G) = H^0(E) has positive rank, so Im Z(H^0(G)) > 0",
                     "Im Z(H^-1(G)[1]) ≥ 0 cannot cancel it")
            reports.append(CaseReport(name=name, kind="structural", excludes_window=True,
                                      steps=steps))
            continue
        bound, strict = _hodge(k, 2, p)
        lhs = _neg(bound)
        rhs = _scaled(re_e, Fraction(k, n_e))
        steps = [f"F of rank ≥ 2 with Im Z(F) = −{k}λ: Re Z(F) {'>' if strict else '≥'} {_fmt(*bound)}",
                 f"rank bound monotone in r ≥ 2: {_monotone_in_rank(k, 2)}",
                 f"so Re Z(F[1]) {'<' if strict else '≤'} {_fmt(*lhs)}",
                 f"φ(F[1]) ≤ φ(E) gives Re Z(F[1]) ≥ {k}/{n_e}·Re Z(E) = {_fmt(*rhs)}"]
        notes = ()
        if k == 1:
            alt = Lam2Set.where(*_minus((lhs[0], lhs[1] / 2), rhs), strict)
            notes = (f"with λ² coefficient {lhs[1] / 2} in place of {lhs[1]} the bound "
                     f"would read {alt}; the rank-2 Hodge bound fixes the coefficient at {lhs[1]}",)
        reports.append(_bound_case(name, lhs, rhs, strict, window, steps, annotations=notes))
    return reports


# -- stability of the target ------------------------------------------------

def verify_Px_stability(window: LamInterval = DEFAULT_WINDOW,
                        p: LatticeParams = LatticeParams()) -> list[CaseReport]:
    """Replay the case tree excluding a destabilising ``F ⊂ P_x`` (``φ(F) > φ(P_x)``)."""
    check_params(p)
    nv = named_vectors(p)
    m = ChargeModel(p)
    z_e = central_charge(nv.px, m)
    re_e = _re(z_e)
    n_e = im_quantization(nv.px)
    reports = []

    # rank 0: F ⊂ (P_x)_tor, so φ(F) ≤ φ((P_x)_tor)
    c0, c1 = cross_coefficients(central_charge(nv.tor, m), z_e)
    flip = solve_lambda2_root(c0, c1, 0, 0)
    s = linear_sign_on(c0, c1, window.lo_sq, window.hi_sq)
    reports.append(CaseReport(
        name="stability r=0", kind="phase",
        bound_sq=flip, bound_strict=True,
        excludes_window=s > 0,
        steps=("F ⊂ (P_x)_tor has class (0,1,k) and φ(F) ≤ φ(v_tor)",
               f"φ(v_tor) < φ(v_Px) ⇔ {_fmt(c0, c1)} > 0 ⇔ λ² < {flip}",
               f"sign on window: {'+' if s > 0 else 'not constant positive'}")))

    # n = 1, rank ≥ 4
    upper = _scaled(re_e, Fraction(1, n_e))
    bound, _ = _hodge(1, 4, p)
    reports.append(_bound_case(
        "stability n=1 r>=4", upper, bound, True, window,
        [f"φ(F) > φ(E) with Im Z(F) = λ: Re Z(F) < {_fmt(*upper)}",
         f"rank ≥ 4: Re Z(F) ≥ {_fmt(*bound)}"]))

    # n = 1, rank 2: the offset is pinned to a single quarter-integer
    bound2, _ = _hodge(1, 2, p)
    base = _rank_base(2)
    off_lo = _minus(bound2, base)
    off_hi = _minus(upper, base)
    lo_inf = min(off_lo[0] + off_lo[1] * window.lo_sq, off_lo[0] + off_lo[1] * window.hi_sq)
    hi_sup = max(off_hi[0] + off_hi[1] * window.lo_sq, off_hi[0] + off_hi[1] * window.hi_sq)
    forced = [q for q in quarter_points(lo_inf, hi_sup, lo_open=False, hi_open=True)
              if Lam2Set.where(q - off_lo[0], -off_lo[1], False) is not None
              and _meets_both(q, off_lo, off_hi, window)]
    steps = ["offset Re Z(F) − (2λ² + 3/8) ∈ ¼ℤ",
             f"offset ≥ {_fmt(*off_lo)} (rank-2 bound) and < {_fmt(*off_hi)}",
             f"over the window: offset ∈ [{lo_inf}, {hi_sup})",
             f"admissible quarter-integers: {[str(q) for q in forced]}"]
    assumptions: tuple[str, ...] = ()
    excludes = not forced
    if forced == [off_lo[0]] and off_lo[1] == 0:
        eq = equality_class(1, 2, p)
        steps += [f"offset = {forced[0]} means Re Z(F) = {_fmt(*bound2)}, the equality case",
                  f"equality class {eq} = v_U1: {eq == nv.u1}",
                  "F ≅ U_1, and the inclusion U_1 → P_x vanishes"]
        assumptions = (HOM_U1_PX,)
        excludes = eq == nv.u1
    reports.append(CaseReport(name="stability n=1 r=2", kind="quantization-pin",
                              interval=(lo_inf, hi_sup, False, True),
                              excludes_window=excludes, assumptions=assumptions,
                              steps=tuple(steps)))

    # n = 2, rank 2: the quotient has rank 0 and odd Im Z/λ
    n_g = n_e - 2
    reports.append(CaseReport(
        name="stability n=2 r=2", kind="parity",
        excludes_window=n_g % 2 == 1,
        steps=("rk G = rk P_x − rk F = 0", f"Im Z(G)/λ = {n_e} − 2 = {n_g}",
               "rank 0 classes have Im Z/λ = 2y ∈ 2ℤ",
               f"{n_g} is {'odd: contradiction for every λ' if n_g % 2 else 'even'}")))

    upper2 = _scaled(re_e, Fraction(2, n_e))
    bound4, _ = _hodge(2, 4, p)
    reports.append(_bound_case(
        "stability n=2 r>=4", upper2, bound4, True, window,
        [f"φ(F) > φ(E) with Im Z(F) = 2λ: Re Z(F) < {_fmt(*upper2)}",
         f"rank ≥ 4: Re Z(F) ≥ {_fmt(*bound4)}"]))
    return reports


def _meets_both(q: Fraction, lower, upper, window: LamInterval) -> bool:
    """Is there λ² in the window with ``lower(λ²) ≤ q < upper(λ²)``?"""
    r1 = Lam2Set.where(q - lower[0], -lower[1], False)
    r2 = Lam2Set.where(upper[0] - q, upper[1], True)
    if r1 is None or r2 is None:
        return False
    lo = max((r for r in (r1, r2) if r.lo is not None), key=lambda r: (r.lo, r.lo_open))
    his = [r for r in (r1, r2) if r.hi is not None]
    hi = min(his, key=lambda r: (r.hi, not r.hi_open)) if his else None
    merged = Lam2Set(lo.lo, hi.hi if hi else None, lo.lo_open, hi.hi_open if hi else True)
    if merged.hi is not None and (merged.lo > merged.hi or
                                  (merged.lo == merged.hi and (merged.lo_open or merged.hi_open))):
        return False
    return merged.meets(window)


def verdict(reports: list[CaseReport]) -> str:
    if not all(r.excludes_window for r in reports):
        return "not-established"
    if any(r.assumptions for r in reports):
        return "stable-modulo-assumptions"
    return "stable"


# -- brute-force scan ------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    lambda_sq: Fraction
    sub: MukaiVec
    quotient: MukaiVec
    relation: str


@dataclass(frozen=True)
class Bracket:
    candidate: MukaiVec
    lo_sq: Fraction
    hi_sq: Fraction


@dataclass
class ScanReport:
    samples: list[Fraction] = field(default_factory=list)
    brackets: list[Bracket] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    excluded: tuple[str, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.samples


def grid(window: LamInterval, step: Fraction) -> list[Fraction]:
    if step <= 0:
        raise ValueError("step must be positive")
    if window.is_empty:
        return []
    if window.hi is None:
        raise ValueError("scan needs a bounded window")
    lo, hi = window.lo_sq, window.hi_sq
    out = [] if window.lo_open else [lo]
    k = 1
    while lo + k * step < hi:
        out.append(lo + k * step)
        k += 1
    if not window.hi_open and lo + k * step == hi and hi != lo:
        out.append(hi)
    return out


def _sub_admissible(w: MukaiVec, torsion: MukaiVec | None) -> bool:
    if w.rank < 0:
        return False
    if w.rank == 0:
        if torsion is None:
            return False
        rest = torsion - w
        return rest.x == 0 and rest.y == 0 and rest.z >= 0
    return True


def scan_grid(target: MukaiVec, window: LamInterval, step: Fraction, box: Box,
              p: LatticeParams, *, torsion: MukaiVec | None = None,
              excluded: dict[MukaiVec, str] | None = None,
              workers: int = 1) -> ScanReport:
    """Sample λ² on a grid and compare phases candidate by candidate.

    Two things are recorded.  *Brackets*: grid cells (or grid points) where
    the phase order of a candidate against ``target`` changes; these are
    found without solving anything and must match :func:`walls_for`.
    *Violations*: sample points where a candidate that could be a
    subobject of ``target`` has phase ``≥ φ(target)``.  A subobject lies in
    the torsion part T, so it has rank ≥ 0; a positive-rank one is simple
    (``⟨w,w⟩ ≥ −2``, enforced by the enumeration); a rank-0 one sits inside
    ``torsion`` with a zero-dimensional quotient.  Classes in ``excluded``
    are skipped, keyed to the fact that excludes them.
    """
    _check_target(target)
    excluded = excluded or {}
    samples = grid(window, Fraction(step))
    report = ScanReport(samples=samples, excluded=tuple(sorted(set(excluded.values()))))
    if not samples:
        return report
    m = ChargeModel(p)
    z_e = central_charge(target, m)
    ends = [window.lo_sq] + samples + [window.hi_sq]
    interior = set(range(1, len(ends) - 1))
    if not window.lo_open:
        interior.add(0)
    if not window.hi_open:
        interior.add(len(ends) - 1)
    # all grid points share one denominator, so signs reduce to integer arithmetic
    den = 1
    for l2 in ends:
        den = den * l2.denominator // gcd(den, l2.denominator)
    nums = [l2.numerator * (den // l2.denominator) for l2 in ends]
    for cand in enumerate_candidates(target, box, p, workers):
        z_w = central_charge(cand.w, m)
        c0, c1 = cross_coefficients(z_w, z_e)
        if c0 == 0 and c1 == 0:
            # proportional charges for every λ: no wall, and never a proper destabiliser
            continue
        a = c0.numerator * c1.denominator * den
        b = c1.numerator * c0.denominator
        # cross > 0 means φ(w) < φ(target)
        signs = [(t > 0) - (t < 0) for t in (a + b * n for n in nums)]
        for i, s in enumerate(signs):
            if s == 0 and i in interior:
                report.brackets.append(Bracket(cand.w, ends[i], ends[i]))
        for i in range(len(signs) - 1):
            if signs[i] * signs[i + 1] < 0:
                report.brackets.append(Bracket(cand.w, ends[i], ends[i + 1]))
        if cand.w in excluded or not _sub_admissible(cand.w, torsion):
            continue
        for l2, s in zip(samples, signs[1:-1]):
            if s <= 0:
                rel = PhaseCmp.EQ if s == 0 else PhaseCmp.GT
                report.violations.append(Violation(l2, cand.w, target - cand.w, rel.value))
    report.brackets.sort(key=lambda b: (b.lo_sq, b.candidate.coords()))
    report.violations.sort(key=lambda v: (v.lambda_sq, v.sub.coords()))
    return report


def check_agreement(walls: list[Wall], scan: ScanReport) -> list[str]:
    """Disagreements between exact walls and grid brackets; empty when they agree."""
    problems = []
    exact = {(c.w, w.lambda_sq) for w in walls for c in w.witnesses}
    for b in scan.brackets:
        if not any(c == b.candidate and b.lo_sq <= l2 <= b.hi_sq for c, l2 in exact):
            problems.append(f"grid bracket [{b.lo_sq}, {b.hi_sq}] for {b.candidate} has no exact wall")
    for c, l2 in exact:
        if not any(b.candidate == c and b.lo_sq <= l2 <= b.hi_sq for b in scan.brackets):
            problems.append(f"exact wall λ²={l2} for {c} missed by the grid")
    return problems


def px_scan_defaults(p: LatticeParams) -> dict:
    """Keyword arguments for :func:`scan_grid` with target ``v_Px``."""
    nv = named_vectors(p)
    return {"torsion": nv.tor, "excluded": {nv.u1: HOM_U1_PX}}
