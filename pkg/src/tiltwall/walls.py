"""Closed-form numerical walls: the loci where two classes have equal slope.

The slope-equality condition deg(a) rank(b) = deg(b) rank(a) is a polynomial
in (s, tau) whose s^2 and tau coefficients coincide, so every nondegenerate
wall is a circle centered on the s-axis (stored by center and radius^2 to
stay rational) or a vertical line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Union

from .lattice import Geometry, NumericalClass, format_rational
from .tilt import TiltPoint, deg_st, rank_s


@dataclass(frozen=True)
class Circle:
    center_s: Fraction
    radius_sq: Fraction

    def to_json_dict(self) -> Dict[str, str]:
        return {
            "type": "circle",
            "center": format_rational(self.center_s),
            "radius_sq": format_rational(self.radius_sq),
        }


@dataclass(frozen=True)
class VerticalLine:
    s0: Fraction

    def to_json_dict(self) -> Dict[str, str]:
        return {"type": "vertical_line", "s0": format_rational(self.s0)}


@dataclass(frozen=True)
class Empty:
    def to_json_dict(self) -> Dict[str, str]:
        return {"type": "empty"}


@dataclass(frozen=True)
class Everywhere:
    def to_json_dict(self) -> Dict[str, str]:
        return {"type": "everywhere"}


Wall = Union[Circle, VerticalLine, Empty, Everywhere]


def charge_cross(a: NumericalClass, b: NumericalClass, pt: TiltPoint, g: Geometry) -> Fraction:
    """deg(a) rank(b) - deg(b) rank(a) at the point; zero exactly on the wall."""
    return deg_st(a, pt, g) * rank_s(b, pt.s, g) - deg_st(b, pt, g) * rank_s(a, pt.s, g)


def wall_coefficients(a: NumericalClass, b: NumericalClass, g: Geometry) -> tuple:
    """Coefficients (quad, lin, const) of the wall polynomial
    quad (s^2 + tau) + lin s + const; quad multiplies s^2 and tau alike."""
    hn = g.hn
    p = a.c1h * b.r - b.c1h * a.r
    quad = Fraction(hn, 2) * p
    lin = hn * (b.ch2h * a.r - a.ch2h * b.r)
    const = a.ch2h * b.c1h - b.ch2h * a.c1h
    return quad, lin, const


def wall(a: NumericalClass, b: NumericalClass, g: Geometry) -> Wall:
    """Slope-equality locus of two classes.

    Empty is returned when there is no solution with tau > 0 (a nonzero
    constant polynomial, or a completed square with radius^2 <= 0);
    Everywhere when the charges are proportional so the polynomial vanishes
    identically.  Walls depend only on the pencil of the two charges.
    """
    quad, lin, const = wall_coefficients(a, b, g)
    if quad != 0:
        center = -lin / (2 * quad)
        radius_sq = center * center - const / quad
        if radius_sq > 0:
            return Circle(center, radius_sq)
        return Empty()
    if lin != 0:
        return VerticalLine(-const / lin)
    return Everywhere() if const == 0 else Empty()


def side(a: NumericalClass, b: NumericalClass, pt: TiltPoint, g: Geometry) -> str:
    """Which side of the wall the point lies on, as "above", "on", or "below".

    The label is the sign of deg(a) rank(b) - deg(b) rank(a), which for
    heart-admissible classes agrees with the slope comparison: "above" means
    the first class has the larger slope there.
    """
    cross = charge_cross(a, b, pt, g)
    if cross > 0:
        return "above"
    if cross < 0:
        return "below"
    return "on"


def in_circle(pt: TiltPoint, c: Circle) -> bool:
    return (pt.s - c.center_s) ** 2 + pt.tau < c.radius_sq


def kodaira_region(pt: TiltPoint) -> bool:
    """Interior of the unit semicircle (s - 1/2)^2 + tau < 1/4 where the
    polarizing bundle has strictly larger slope than the shifted structure
    sheaf."""
    return (pt.s - Fraction(1, 2)) ** 2 + pt.tau < Fraction(1, 4)


SIMPSON_FLIP_LABEL = "Simpson wall, removes P(H⁰(S,L))"
PAIR_FLIP_LABEL = "P(H⁰(L⊗I_W⊗I_Z)) ↔ dual"


@dataclass(frozen=True)
class LadderRow:
    """One rung of the wall ladder on the line s = 1/2.

    radius_sq = 1/4 - 2d/hn is the squared height of the rank-one wall for
    subschemes of length d; rank1_wall records whether it exists at all, and
    above_one_sixth whether it sits above the height where rank-three
    destabilizers first appear (radius_sq > 1/36, i.e. d < hn/9).
    """

    d: int
    radius_sq: Fraction
    rank1_wall: bool
    above_one_sixth: bool
    flip_label: str

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "d": self.d,
            "radius_sq": format_rational(self.radius_sq),
            "rank1_wall": self.rank1_wall,
            "above_one_sixth": self.above_one_sixth,
            "flip_label": self.flip_label,
        }


def thaddeus_ladder(g: Geometry, d_max: int) -> List[LadderRow]:
    """Rank-one wall heights tau_d = 1/4 - 2d/hn for d = 0..d_max, with flip
    bookkeeping: the d = 0 crossing removes the projective space of sections
    of L, the d >= 1 crossings exchange projective bundles with their duals."""
    if d_max < 0:
        raise ValueError("d_max must be nonnegative")
    rows = []
    for d in range(d_max + 1):
        radius_sq = Fraction(1, 4) - Fraction(2 * d, g.hn)
        rows.append(
            LadderRow(
                d=d,
                radius_sq=radius_sq,
                rank1_wall=radius_sq > 0,
                above_one_sixth=radius_sq > Fraction(1, 36),
                flip_label=SIMPSON_FLIP_LABEL if d == 0 else PAIR_FLIP_LABEL,
            )
        )
    return rows
