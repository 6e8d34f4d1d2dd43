"""Two-parameter rank and degree functions on numerical classes.

The stability function is parameterized by a rational point (s, tau) with
tau = t^2 > 0; keeping tau (rather than t) rational makes every slope
comparison an exact cross-multiplication, since t > 0 cancels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import ParseError, PreconditionViolated, ZeroRank
from .lattice import Geometry, NumericalClass, Rational, mumford_slope, parse_rational


@dataclass(frozen=True)
class TiltPoint:
    """Rational point (s, tau) in the upper strip, tau = t^2 > 0."""

    s: Fraction
    tau: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", Fraction(self.s))
        object.__setattr__(self, "tau", Fraction(self.tau))
        if self.tau <= 0:
            raise ValueError("tau = t^2 must be positive")

    @classmethod
    def parse(cls, text: str) -> "TiltPoint":
        """Parse "s,t2" with rational components, e.g. "1/2,1/9"."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ParseError(f"tilt point literal needs two components: {text!r}")
        try:
            return cls(parse_rational(parts[0]), parse_rational(parts[1]))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def format(self) -> str:
        return f"{self.s},{self.tau}"


def rank_s(cls: NumericalClass, s: Rational, g: Geometry) -> Fraction:
    """Tilted rank c1.H^{n-1} - s r H^n; nonnegative on heart-admissible classes."""
    return cls.c1h - Fraction(s) * cls.r * g.hn


def deg_st(cls: NumericalClass, pt: TiltPoint, g: Geometry) -> Fraction:
    """Tilted degree ch2.H^{n-2} - s c1.H^{n-1} + ((s^2 - t^2)/2) r H^n."""
    return cls.ch2h - pt.s * cls.c1h + (pt.s * pt.s - pt.tau) / 2 * cls.r * g.hn


def central_charge(cls: NumericalClass, pt: TiltPoint, g: Geometry) -> Tuple[Fraction, Fraction]:
    """Central charge as (re, im/t): Z = -deg + i t rank, so im/t is the tilted rank."""
    return (-deg_st(cls, pt, g), rank_s(cls, pt.s, g))


def verify_compact_form(cls: NumericalClass, pt: TiltPoint, g: Geometry) -> bool:
    """Check the exponential form of the charge against the rank/degree pair.

    Expands -integral of exp(-(s+it)H).ch(E).H^{n-2} coefficientwise, using
    z^2 = (s^2 - tau) + 2st i, and compares real and imaginary parts with
    (-deg_st, t rank_s).  This is an algebraic identity, so the result is
    True for every input; the two code paths are kept separate so the test
    is not vacuous.
    """
    s, tau = pt.s, pt.tau
    # degree-n coefficient of (1 - zH + z^2 H^2/2)(ch0 + ch1 + ch2), contracted
    z2_re, z2_im_over_t = s * s - tau, 2 * s
    integral_re = cls.ch2h - s * cls.c1h + z2_re / 2 * cls.r * g.hn
    integral_im_over_t = -cls.c1h + z2_im_over_t / 2 * cls.r * g.hn
    charge_re, charge_im_over_t = -integral_re, -integral_im_over_t
    return charge_re == -deg_st(cls, pt, g) and charge_im_over_t == rank_s(cls, pt.s, g)


@dataclass(frozen=True)
class ProjectiveSlope:
    """Slope as the projective pair (deg, rank); the actual slope is num/(t den).

    den = 0 with num > 0 is the maximal phase (infinite slope); (0, 0) means
    the central charge vanishes and no slope is defined.
    """

    num: Fraction
    den: Fraction

    def is_zero_charge(self) -> bool:
        return self.num == 0 and self.den == 0

    def is_maximal_phase(self) -> bool:
        return self.den == 0 and self.num > 0

    def display_times_t(self) -> Optional[Fraction]:
        """The rational number (slope * t) = deg/rank, or None when rank = 0."""
        if self.den == 0:
            return None
        return self.num / self.den


def slope_frac(cls: NumericalClass, pt: TiltPoint, g: Geometry) -> ProjectiveSlope:
    return ProjectiveSlope(deg_st(cls, pt, g), rank_s(cls, pt.s, g))


@dataclass(frozen=True)
class SlopeOrder:
    """Outcome of a slope comparison.

    kind is one of "less", "equal", "greater", "maximal_phase", "zero_charge";
    side ("left", "right", "both") says which argument triggered a special kind.
    """

    kind: str
    side: Optional[str] = None


LESS = SlopeOrder("less")
EQUAL = SlopeOrder("equal")
GREATER = SlopeOrder("greater")


def slope_cmp(a: NumericalClass, b: NumericalClass, pt: TiltPoint, g: Geometry) -> SlopeOrder:
    """Compare slopes at a common point by exact cross-multiplication.

    Zero-charge sides are flagged rather than ordered.  A side with den = 0
    and num > 0 has maximal phase and exceeds every finite slope; den = 0
    with num < 0 (never heart-admissible) is ordered as -infinity.  The
    comparison is sign-aware, so it states the order of the two real slopes
    even when a tilted rank is negative.
    """
    na, da = deg_st(a, pt, g), rank_s(a, pt.s, g)
    nb, db = deg_st(b, pt, g), rank_s(b, pt.s, g)
    zero_a, zero_b = (na == 0 and da == 0), (nb == 0 and db == 0)
    if zero_a or zero_b:
        return SlopeOrder("zero_charge", "both" if zero_a and zero_b else ("left" if zero_a else "right"))
    if da == 0 and db == 0:
        if na > 0 and nb > 0:
            return EQUAL
        if na > 0:
            return SlopeOrder("maximal_phase", "left")
        if nb > 0:
            return SlopeOrder("maximal_phase", "right")
        return EQUAL
    if da == 0:
        return SlopeOrder("maximal_phase", "left") if na > 0 else LESS
    if db == 0:
        return SlopeOrder("maximal_phase", "right") if nb > 0 else GREATER
    lhs, rhs = na * db, nb * da
    if lhs == rhs:
        return EQUAL
    if (da > 0) != (db > 0):
        lhs, rhs = rhs, lhs
    return GREATER if lhs > rhs else LESS


def _window_rank(cls: NumericalClass) -> int:
    if cls.r == 0:
        raise ZeroRank("slope window asked of a rank-zero class")
    if cls.r < 0:
        raise PreconditionViolated("slope windows govern sheaf classes of positive rank")
    return cls.r


def sub_window_L(cls: NumericalClass, s: Rational, g: Geometry) -> bool:
    """Necessary slope window for pieces of sub-classes of the polarizing
    bundle (and its ideal twists): s < mu_H <= s + (1-s)/r."""
    r = _window_rank(cls)
    mu = mumford_slope(cls, g)
    s = Fraction(s)
    return s < mu <= s + (1 - s) / r


def quot_window_O(cls: NumericalClass, s: Rational, g: Geometry) -> bool:
    """Necessary slope window for pieces of (unshifted) quotients of the
    shifted structure sheaf: s(1 - 1/r) < mu_H <= s."""
    r = _window_rank(cls)
    mu = mumford_slope(cls, g)
    s = Fraction(s)
    return s * (1 - Fraction(1, r)) < mu <= s


def positivity_margin(cls: NumericalClass, pt: TiltPoint, g: Geometry) -> Fraction:
    """Tilted degree of a class with vanishing tilted rank.

    Guaranteed nonnegative for heart-admissible data: torsion classes
    (r = 0, c1H = 0, ch2H >= 0) and shifts of Bogomolov-bounded sheaves of
    Mumford slope s.  For the shifted case the value decomposes as

        deg = -(c1F - s rF H)^2 H^{n-2} / (2 rF) + (tau/2) rF H^n + slack

    with slack = (Bogomolov cap - ch2F) >= 0; the square term vanishes
    exactly because the tilted rank does.  The decomposition is asserted.
    """
    s, tau, hn = pt.s, pt.tau, g.hn
    if rank_s(cls, s, g) != 0:
        raise PreconditionViolated("positivity margin needs vanishing tilted rank")
    d = deg_st(cls, pt, g)
    if cls.r == 0:
        if cls.c1h != 0 or cls.ch2h < 0:
            raise PreconditionViolated("torsion class must have c1H = 0 and ch2H >= 0")
        return d
    if cls.r > 0:
        raise PreconditionViolated(
            "a positive-rank class with zero tilted rank is not heart-admissible"
        )
    rho = -cls.r
    c1f, ch2f = -cls.c1h, -cls.ch2h
    cap = c1f * c1f / (2 * rho * hn)
    if ch2f > cap:
        raise PreconditionViolated("unshifted part violates the Bogomolov bound")
    square = (c1f - s * rho * hn) ** 2 / (2 * rho * hn)
    assert d == -square + tau * rho * hn / 2 + (cap - ch2f)
    return d
