"""Finite enumeration of candidate numerically-destabilizing classes.

A candidate sub-class w of a target at a tilt point must clear a battery of
necessary conditions: its tilted rank is pinched between 0 and the target's,
both w and the complementary class target - w are Bogomolov-bounded (each on
the side matching the sign of its ordinary rank) and heart-admissible, and
the slope of w is at least the target's.  Under Pic = Z.H the candidates
live on the integer lattice w = (r, k hn, k^2 hn/2 - c2), and for each cell
(r, k) the battery pinches c2 into an exact finite window, computed by
rational ceiling/floor with no truncation.  Cells whose window is genuinely
unbounded raise InfiniteFamily rather than being cut off.

Candidates with vanishing tilted rank have maximal phase (infinite slope);
they are flagged and never mixed with finite-phase candidates.  The filter
is a necessary-condition sieve on classes, not a completeness claim about
actual subobjects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import Dict, List, Optional, Tuple

from .errors import (
    InfiniteFamily,
    PreconditionViolated,
    RequiresPicardRankOne,
    UnsupportedTarget,
)
from .lattice import Geometry, NumericalClass, Rational
from .tilt import TiltPoint, deg_st, quot_window_O, rank_s, sub_window_L
from .walls import Wall, wall

SIDE_SUBSHEAF = "subsheaf"
SIDE_SHIFTED = "shifted_sub"
SIDE_TORSION = "torsion_sub"

REL_ON_WALL = "on_wall"
REL_STRICTLY_ABOVE = "strictly_above"

PHASE_FINITE = "finite"
PHASE_MAXIMAL = "maximal_phase"

# structural profiles of recognized targets
_PROFILE_SHEAF_RANK1 = "sheaf_rank1"
_PROFILE_SHIFT_ONE = "shift_one"
_PROFILE_THADDEUS = "thaddeus"


@dataclass(frozen=True)
class DestabilizerCandidate:
    """A surviving candidate: its class, how it relates to the target's slope
    (on the wall or strictly above), its phase, and which side of the lattice
    it came from (ordinary sheaf rank >= 1, shifted rank <= -1, torsion)."""

    cls: NumericalClass
    relation: str
    phase_flag: str
    side: str
    r: int
    k: int
    c2: int

    def sort_key(self) -> Tuple[int, int, int]:
        return (self.r, self.k, self.c2)


def bogomolov_cap(r: int, c1h: Rational, g: Geometry) -> Fraction:
    """Largest ch2.H^{n-2} a Mumford-stable class of rank r and degree c1h
    can carry: c1h^2 / (2 r hn), using c1^2 H^{n-2} = (c1 H^{n-1})^2 / H^n
    under Pic = Z.H."""
    if not g.pic_rank_one:
        raise RequiresPicardRankOne("the contracted Bogomolov cap needs Pic = Z.H")
    if r < 1:
        raise PreconditionViolated("Bogomolov cap needs ordinary rank >= 1")
    c1h = Fraction(c1h)
    return c1h * c1h / (2 * r * g.hn)


def _is_thaddeus(target: NumericalClass, g: Geometry) -> bool:
    return target.r == 0 and target.c1h == g.hn and target.ch2h == Fraction(g.hn, 2)


def rank_bound_at(target: NumericalClass, pt: TiltPoint, g: Geometry) -> int:
    """Largest rank r >= 1 with 4 r^2 tau <= 1 (0 when even r = 1 fails).

    This closed-form bound holds for the extension-pair target (0, hn, hn/2)
    on the line s = 1/2: a destabilizer of rank r has degree at most
    (hn/2r)(1/4 - r^2 tau), which must be nonnegative.
    """
    if not _is_thaddeus(target, g) or pt.s != Fraction(1, 2):
        raise UnsupportedTarget(
            "closed-form rank bound only available for the target (0, hn, hn/2) at s = 1/2"
        )
    return isqrt(floor(1 / (4 * pt.tau)))


def _target_profile(target: NumericalClass, g: Geometry) -> Optional[str]:
    """Recognize targets whose sub-object structure is known.

    Rank-one sheaf targets (c1 = kH, ch2 within the rank-one cap) only admit
    coherent-sheaf sub-classes.  Targets of shape (-1, 0, e >= 0) and the
    extension-pair class (0, hn, hn/2) have a rank-one shifted part, so their
    shifted sub-classes have ordinary rank exactly -1.
    """
    hn = g.hn
    if target.r == 1:
        k = target.c1h / hn
        if k.denominator == 1 and target.ch2h <= k * k * Fraction(hn, 2):
            return _PROFILE_SHEAF_RANK1
        return None
    if target.r == -1 and target.c1h == 0 and target.ch2h >= 0:
        return _PROFILE_SHIFT_ONE
    if _is_thaddeus(target, g):
        return _PROFILE_THADDEUS
    return None


def _bogomolov_ok(cls: NumericalClass, g: Geometry) -> bool:
    hn = g.hn
    if cls.r > 0:
        return cls.ch2h <= cls.c1h * cls.c1h / (2 * cls.r * hn)
    if cls.r < 0:
        return -cls.ch2h <= cls.c1h * cls.c1h / (2 * -cls.r * hn)
    # torsion: effective support, and points only contribute nonnegatively
    return cls.c1h > 0 or (cls.c1h == 0 and cls.ch2h >= 0)


def _classify(
    w: NumericalClass,
    target: NumericalClass,
    pt: TiltPoint,
    g: Geometry,
    profile: Optional[str],
    rt: Fraction,
    dt: Fraction,
) -> Optional[Tuple[str, str]]:
    """Run the full admissibility battery on one candidate class.

    Returns (relation, phase) or None.  The window arithmetic in
    enumerate_destabilizers never produces a rejected class, but every
    candidate is re-checked here so the emitted list depends only on this
    predicate set.
    """
    if w.is_zero() or w == target:
        return None
    q = target - w
    s = pt.s
    rw, dw = rank_s(w, s, g), deg_st(w, pt, g)
    rq, dq = rank_s(q, s, g), deg_st(q, pt, g)
    if rw < 0 or rw > rt or rq < 0:
        return None
    if rw == 0 and dw <= 0:
        return None
    # a zero-rank quotient would need degree exactly 0 to be destabilized
    # past, which makes its charge vanish; such subs are excluded
    if rq == 0:
        return None
    if not _bogomolov_ok(w, g) or not _bogomolov_ok(q, g):
        return None
    if profile == _PROFILE_SHEAF_RANK1 and target.c1h == g.hn and w.r >= 1:
        if not sub_window_L(w, s, g):
            return None
    if profile == _PROFILE_SHIFT_ONE and rw > 0 and q.r <= -1:
        if not quot_window_O(-q, s, g):
            return None
    if rw == 0:
        return (REL_STRICTLY_ABOVE, PHASE_MAXIMAL)
    cross = dw * rt - dt * rw
    if cross < 0:
        return None
    return (REL_ON_WALL if cross == 0 else REL_STRICTLY_ABOVE, PHASE_FINITE)


class _Window:
    """Exact integer window built from rational bounds, with strictness."""

    def __init__(self) -> None:
        self.lo: Optional[int] = None
        self.hi: Optional[int] = None
        self.has_lower = False
        self.has_upper = False

    def add_lower(self, bound: Fraction, strict: bool = False) -> None:
        v = floor(bound) + 1 if strict else ceil(bound)
        self.has_lower = True
        self.lo = v if self.lo is None else max(self.lo, v)

    def add_upper(self, bound: Fraction, strict: bool = False) -> None:
        v = ceil(bound) - 1 if strict else floor(bound)
        self.has_upper = True
        self.hi = v if self.hi is None else min(self.hi, v)


def _cell_window(
    r: int,
    k: int,
    target: NumericalClass,
    pt: TiltPoint,
    g: Geometry,
    rt: Fraction,
    dt: Fraction,
) -> Optional[range]:
    """The exact c2 window for one (r, k) cell, or None when the cell is
    empty a priori.  Raises InfiniteFamily when a needed bound is missing."""
    s, tau, hn = pt.s, pt.tau, g.hn
    x = k - s * r  # tilted rank of the candidate is hn * x
    if x < 0 or hn * x > rt:
        return None
    if hn * x == rt:
        # quotient charge would have zero rank; destabilizing forces its
        # degree to 0, i.e. a zero-charge quotient, which is excluded
        return None
    half_k2hn = k * k * Fraction(hn, 2)
    win = _Window()
    # Bogomolov bound on the candidate itself
    if r > 0:
        win.add_lower(half_k2hn - k * k * Fraction(hn, 2 * r))
    elif r < 0:
        win.add_upper(half_k2hn + k * k * Fraction(hn, 2 * -r))
    elif k == 0:
        # torsion supported in codimension two: positive length required
        win.add_upper(Fraction(0), strict=True)
    # Bogomolov / torsion positivity on the complementary class
    rq_ord = target.r - r
    c1h_q = target.c1h - k * hn
    if rq_ord > 0:
        cap_q = c1h_q * c1h_q / (2 * rq_ord * hn)
        win.add_upper(half_k2hn - target.ch2h + cap_q)
    elif rq_ord < 0:
        cap_fq = c1h_q * c1h_q / (2 * -rq_ord * hn)
        win.add_lower(half_k2hn - target.ch2h - cap_fq)
    else:
        if c1h_q < 0:
            return None
        if c1h_q == 0:
            win.add_lower(half_k2hn - target.ch2h)
    if x == 0:
        if r > 0:
            # a positive-rank class with zero tilted rank cannot satisfy the
            # cap and have positive degree; the cell is empty
            return None
        # maximal phase: strictly positive degree
        win.add_upper(half_k2hn - s * k * hn + (s * s - tau) / 2 * r * hn, strict=True)
    else:
        # slope condition deg(w) rank(T) >= deg(T) rank(w)
        deg_lower = s * k * hn - (s * s - tau) / 2 * r * hn + dt * hn * x / rt
        win.add_upper(half_k2hn - deg_lower)
    if not win.has_upper or not win.has_lower:
        kind = "upper" if not win.has_upper else "lower"
        raise InfiniteFamily(
            f"cell r={r}, k={k}: no {kind} bound on c2; the candidate family is unbounded"
        )
    if win.lo > win.hi:
        return None
    return range(win.lo, win.hi + 1)


def _sheaf_rank_limit(
    target: NumericalClass,
    pt: TiltPoint,
    g: Geometry,
    rank_max: Optional[int],
    profile: Optional[str],
    rt: Fraction,
    dt: Fraction,
) -> int:
    """Largest sheaf rank worth scanning.

    For the extension-pair target at s = 1/2 this is the closed-form bound
    4 r^2 tau <= 1.  Otherwise ranks are cut off at the first r where the
    best Bogomolov-allowed degree at the widest admissible tilted rank drops
    below the slope requirement; that expression is strictly decreasing in
    r, so emptiness is permanent.
    """
    if profile == _PROFILE_THADDEUS and pt.s == Fraction(1, 2):
        limit = rank_bound_at(target, pt, g)
    else:
        hn, tau = g.hn, pt.tau
        x_max = rt / hn
        limit = 0
        r = 1
        while True:
            feasible = Fraction(hn, 2 * r) * x_max * x_max - tau * r * Fraction(hn, 2) - (
                dt / rt
            ) * hn * x_max
            if feasible < 0:
                break
            limit = r
            r += 1
    if rank_max is not None:
        limit = min(limit, rank_max)
    return limit


def enumerate_destabilizers(
    target: NumericalClass,
    pt: TiltPoint,
    g: Geometry,
    *,
    rank_max: Optional[int] = None,
    include_shifted: bool = False,
    include_torsion: bool = False,
) -> List[DestabilizerCandidate]:
    """All lattice classes that could numerically destabilize the target.

    By default only coherent-sheaf candidates (ordinary rank >= 1) are
    scanned; these windows are always finite.  include_shifted and
    include_torsion extend the scan to shifted (rank <= -1) and torsion
    (rank 0) sub-classes where the target's structure admits them: for
    rank-one sheaf targets those sides are structurally empty, for targets
    with a rank-one shifted part the shifted side is confined to ordinary
    rank -1.  A side whose c2 window has no finite bound raises
    InfiniteFamily instead of truncating.

    Output is sorted by (r, k, c2); maximal-phase candidates (tilted rank 0)
    are flagged and never silently mixed with finite-phase ones.
    """
    if not g.pic_rank_one:
        raise RequiresPicardRankOne("destabilizer enumeration needs Pic = Z.H")
    s, hn = pt.s, g.hn
    if not 0 < s < 1:
        raise PreconditionViolated("enumeration needs 0 < s < 1")
    rt, dt = rank_s(target, s, g), deg_st(target, pt, g)
    if rt <= 0:
        raise UnsupportedTarget("target must have positive tilted rank at the point")
    profile = _target_profile(target, g)
    out: List[DestabilizerCandidate] = []

    def scan_rank(r: int, side: str) -> None:
        k_lo = ceil(s * r)
        k_hi = floor(s * r + rt / hn)
        for k in range(k_lo, k_hi + 1):
            window = _cell_window(r, k, target, pt, g, rt, dt)
            if window is None:
                continue
            for c2 in window:
                w = NumericalClass(r, Fraction(k * hn), k * k * Fraction(hn, 2) - c2)
                verdict = _classify(w, target, pt, g, profile, rt, dt)
                if verdict is not None:
                    out.append(DestabilizerCandidate(w, verdict[0], verdict[1], side, r, k, c2))

    limit = _sheaf_rank_limit(target, pt, g, rank_max, profile, rt, dt)
    for r in range(1, limit + 1):
        scan_rank(r, SIDE_SUBSHEAF)

    if include_shifted and profile != _PROFILE_SHEAF_RANK1:
        if profile in (_PROFILE_SHIFT_ONE, _PROFILE_THADDEUS):
            shifted_ranks = [-1]
        else:
            if rank_max is None:
                raise InfiniteFamily(
                    "shifted side of an unrecognized target needs an explicit rank_max"
                )
            shifted_ranks = list(range(-1, -rank_max - 1, -1))
        for r in shifted_ranks:
            scan_rank(r, SIDE_SHIFTED)

    if include_torsion and profile != _PROFILE_SHEAF_RANK1:
        scan_rank(0, SIDE_TORSION)

    out.sort(key=DestabilizerCandidate.sort_key)
    return out


@dataclass(frozen=True)
class ShapeRow:
    """Symbolic constraints on rank-r destabilizers of the extension-pair
    target on the line s = 1/2.

    Surviving ranks are odd with k = (r+1)/2; their ch2H runs from
    deg_floor_const + deg_floor_tau_coeff * tau up to the Bogomolov cap, a
    window that is nonempty exactly when tau <= 1/(4 r^2).  Even ranks are
    excluded: their tilted rank would be 0 or hn rather than hn/2.
    """

    r: int
    excluded: bool
    reason: Optional[str] = None
    k: Optional[int] = None
    tau_max: Optional[Fraction] = None
    ch2h_cap: Optional[Fraction] = None
    deg_floor_const: Optional[Fraction] = None
    deg_floor_tau_coeff: Optional[Fraction] = None

    def ch2h_window_at(self, tau: Fraction) -> Optional[Tuple[Fraction, Fraction]]:
        if self.excluded or tau > self.tau_max:
            return None
        low = self.deg_floor_const + self.deg_floor_tau_coeff * tau
        return (low, self.ch2h_cap)


def destabilizer_shape_report(
    target: NumericalClass, g: Geometry, rank_max: int = 3
) -> List[ShapeRow]:
    """Shape constraints for destabilizers of the extension-pair target,
    one row per rank 1..rank_max; agrees with enumerate_destabilizers on
    every instance at s = 1/2."""
    if not _is_thaddeus(target, g):
        raise UnsupportedTarget("shape report only available for the target (0, hn, hn/2)")
    hn = g.hn
    rows: List[ShapeRow] = []
    for r in range(1, rank_max + 1):
        if r % 2 == 0:
            rows.append(
                ShapeRow(
                    r=r,
                    excluded=True,
                    reason="tilted rank at s = 1/2 would be 0 or hn, not the minimal hn/2",
                )
            )
            continue
        k = (r + 1) // 2
        rows.append(
            ShapeRow(
                r=r,
                excluded=False,
                k=k,
                tau_max=Fraction(1, 4 * r * r),
                ch2h_cap=bogomolov_cap(r, k * hn, g),
                deg_floor_const=k * Fraction(hn, 2) - r * Fraction(hn, 8),
                deg_floor_tau_coeff=r * Fraction(hn, 2),
            )
        )
    return rows


def candidate_json(
    cand: DestabilizerCandidate, target: NumericalClass, g: Geometry
) -> Dict[str, object]:
    w: Wall = wall(cand.cls, target, g)
    return {
        "class": cand.cls.format(),
        "relation": cand.relation,
        "phase": cand.phase_flag,
        "side": cand.side,
        "wall": w.to_json_dict(),
    }
