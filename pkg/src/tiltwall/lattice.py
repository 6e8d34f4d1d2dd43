"""Exact-rational Chern data on a polarized variety.

Classes are stored H-contracted as (r, c1.H^{n-1}, ch2.H^{n-2}); this is
exactly the data every slope, degree, and wall formula consumes.  All
arithmetic is over `fractions.Fraction`; floats never appear here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError, PreconditionViolated, RequiresPicardRankOne, ZeroRank

Rational = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse a "p/q" literal (q omitted when 1)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}") from exc


def format_rational(x: Rational) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class Geometry:
    """Polarization data: hn = H^n >= 1, ambient dimension n in {2, 3}, and
    whether Pic is generated by H (controls integrality lattices)."""

    hn: int
    dim: int = 2
    pic_rank_one: bool = True

    def __post_init__(self) -> None:
        if not isinstance(self.hn, int) or isinstance(self.hn, bool) or self.hn < 1:
            raise ValueError("hn must be a positive integer")
        if self.dim not in (2, 3):
            raise ValueError("dim must be 2 or 3")


@dataclass(frozen=True)
class NumericalClass:
    """H-contracted numerical class (ch0, ch1.H^{n-1}, ch2.H^{n-2}).

    Forms an additive group; the shift [1] negates every component.
    """

    r: int
    c1h: Fraction
    ch2h: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.r, int) or isinstance(self.r, bool):
            raise ValueError("rank must be an integer")
        object.__setattr__(self, "c1h", Fraction(self.c1h))
        object.__setattr__(self, "ch2h", Fraction(self.ch2h))

    def __add__(self, other: "NumericalClass") -> "NumericalClass":
        return NumericalClass(self.r + other.r, self.c1h + other.c1h, self.ch2h + other.ch2h)

    def __sub__(self, other: "NumericalClass") -> "NumericalClass":
        return NumericalClass(self.r - other.r, self.c1h - other.c1h, self.ch2h - other.ch2h)

    def __neg__(self) -> "NumericalClass":
        return NumericalClass(-self.r, -self.c1h, -self.ch2h)

    def scale(self, m: int) -> "NumericalClass":
        return NumericalClass(m * self.r, m * self.c1h, m * self.ch2h)

    def is_zero(self) -> bool:
        return self.r == 0 and self.c1h == 0 and self.ch2h == 0

    @classmethod
    def parse(cls, text: str) -> "NumericalClass":
        """Parse "r,c1H,ch2H" with rational entries, e.g. "1,72,31"."""
        parts = text.split(",")
        if len(parts) != 3:
            raise ParseError(f"class literal needs three components: {text!r}")
        r = parse_rational(parts[0])
        if r.denominator != 1:
            raise ParseError(f"rank component must be an integer: {parts[0]!r}")
        return cls(int(r), parse_rational(parts[1]), parse_rational(parts[2]))

    def format(self) -> str:
        return f"{self.r},{format_rational(self.c1h)},{format_rational(self.ch2h)}"


ZERO_CLASS = NumericalClass(0, Fraction(0), Fraction(0))


@dataclass(frozen=True)
class DivisorData:
    """Intersection data of a divisor class: cH = C.H^{n-1}, c2 = C^2.H^{n-2}."""

    ch: int
    c2: int


def mumford_slope(cls: NumericalClass, g: Geometry) -> Fraction:
    """Slope c1.H^{n-1} / (r H^n); undefined on torsion (rank-zero) classes."""
    if cls.r == 0:
        raise ZeroRank("Mumford slope undefined for rank-zero classes")
    return cls.c1h / (cls.r * g.hn)


def shift1(cls: NumericalClass) -> NumericalClass:
    """Class of the shift [1]; negates every component (an involution)."""
    return -cls


def twist(cls: NumericalClass, m: int, g: Geometry) -> NumericalClass:
    """Class of the tensor by O(mH): multiply ch by exp(mH) and contract."""
    if not g.pic_rank_one:
        raise RequiresPicardRankOne("twisting by O(mH) needs Pic generated by H")
    if not isinstance(m, int) or isinstance(m, bool):
        raise PreconditionViolated("twist exponent must be an integer")
    return NumericalClass(
        cls.r,
        cls.c1h + m * cls.r * g.hn,
        cls.ch2h + m * cls.c1h + Fraction(m * m * cls.r * g.hn, 2),
    )


def standard_class(tag: str, d: int, g: Geometry) -> NumericalClass:
    """Named classes the engine's analyses revolve around.

    O_shift            -> (-1, 0, 0)                 shifted structure sheaf
    L_ideal(d)         -> (1, hn, hn/2 - d)          polarizing bundle twisted by a length-d ideal
    ideal_dual_shift(d)-> (-1, 0, d)                 shifted derived dual of a length-d ideal
    thaddeus           -> (0, hn, hn/2)              extension class of the pair system
    line_bundle(k)     -> (1, k hn, k^2 hn/2)        O(kH); here d plays the role of k and may be negative
    """
    hn = g.hn
    if tag == "O_shift":
        return NumericalClass(-1, Fraction(0), Fraction(0))
    if tag == "thaddeus":
        return NumericalClass(0, Fraction(hn), Fraction(hn, 2))
    if tag == "line_bundle":
        return NumericalClass(1, Fraction(d * hn), Fraction(d * d * hn, 2))
    if tag in ("L_ideal", "ideal_dual_shift"):
        if d < 0:
            raise PreconditionViolated("subscheme length must be nonnegative")
        if tag == "L_ideal":
            return NumericalClass(1, Fraction(hn), Fraction(hn, 2) - d)
        return NumericalClass(-1, Fraction(0), Fraction(d))
    raise ParseError(f"unknown standard class tag {tag!r}")


def o_shift(g: Geometry) -> NumericalClass:
    return standard_class("O_shift", 0, g)


def l_ideal(d: int, g: Geometry) -> NumericalClass:
    return standard_class("L_ideal", d, g)


def ideal_dual_shift(d: int, g: Geometry) -> NumericalClass:
    return standard_class("ideal_dual_shift", d, g)


def thaddeus_class(g: Geometry) -> NumericalClass:
    return standard_class("thaddeus", 0, g)


def line_bundle(k: int, g: Geometry) -> NumericalClass:
    return standard_class("line_bundle", k, g)


def hodge_ok(dv: DivisorData, g: Geometry) -> bool:
    """Hodge-index admissibility: (C^2.H^{n-2})(H^n) <= (C.H^{n-1})^2."""
    return dv.c2 * g.hn <= dv.ch * dv.ch


def is_pic_lattice_class(cls: NumericalClass, g: Geometry) -> bool:
    """Whether the class lies on the integral lattice forced by Pic = Z.H:
    c1 = kH with k integral and ch2 = c1^2/2 - c2 with c2 integral."""
    if not g.pic_rank_one:
        raise RequiresPicardRankOne("integrality lattice only defined when Pic = Z.H")
    k = cls.c1h / g.hn
    if k.denominator != 1:
        return False
    return (Fraction(k * k * g.hn, 2) - cls.ch2h).denominator == 1
