"""Mechanized numerical vanishing criteria with re-checkable certificates.

Each verdict carries an ordered list of inequality steps that are
arithmetically true as stated, so a skeptical caller can replay the whole
case analysis.  Witness divisor classes are numerical only: whether they are
effective curves on an actual surface is a hypothesis the caller supplies
(via exclusions), never something the engine claims.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import PreconditionViolated, RequiresPicardRankOne
from .lattice import (
    DivisorData,
    Geometry,
    NumericalClass,
    Rational,
    format_rational,
    hodge_ok,
    ideal_dual_shift,
    l_ideal,
    line_bundle,
    twist,
)
from .destab import PHASE_FINITE, enumerate_destabilizers
from .tilt import TiltPoint

STATUS_VANISHING = "vanishing_guaranteed"
STATUS_CONDITIONAL = "conditional_on_curves"
STATUS_INCONCLUSIVE = "inconclusive"

_REL_FUNCS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


@dataclass(frozen=True)
class CertStep:
    """One inequality of a certificate: name, lhs rel rhs, and a short label
    naming the principle it instantiates."""

    name: str
    lhs: Fraction
    rel: str
    rhs: Fraction
    anchor: str

    def holds(self) -> bool:
        return _REL_FUNCS[self.rel](self.lhs, self.rhs)

    def to_json_dict(self) -> Dict[str, str]:
        return {
            "name": self.name,
            "lhs": format_rational(self.lhs),
            "rel": self.rel,
            "rhs": format_rational(self.rhs),
            "anchor": self.anchor,
        }


def _step(name: str, lhs: Rational, rel: str, rhs: Rational, anchor: str) -> CertStep:
    return CertStep(name, Fraction(lhs), rel, Fraction(rhs), anchor)


@dataclass(frozen=True)
class ReiderVerdict:
    status: str
    witnesses: Tuple[DivisorData, ...]
    certificate: Tuple[CertStep, ...]

    @property
    def holds(self) -> bool:
        return self.status == STATUS_VANISHING

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "status": self.status,
            "witnesses": [{"cH": w.ch, "c2": w.c2} for w in self.witnesses],
            "certificate": [s.to_json_dict() for s in self.certificate],
        }


@dataclass(frozen=True)
class FujitaResult:
    multiple: int
    certificate: Tuple[CertStep, ...]

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "multiple": self.multiple,
            "certificate": [s.to_json_dict() for s in self.certificate],
        }


def stable_extension_possible(g: Geometry, d: int) -> bool:
    """Whether an extension of a length-d ideal twist by the structure sheaf
    can be Mumford-stable: forces hn <= 4d via the Bogomolov bound on its
    second Chern character."""
    if d < 1:
        raise PreconditionViolated("subscheme length must be at least 1")
    return g.hn <= 4 * d


def enumerate_obstruction_curves(g: Geometry, d: int) -> List[DivisorData]:
    """Integer divisor data (cH, c2) every destabilizing curve must satisfy:
    cH >= 1, 2 cH <= hn, cH <= c2 + d, Hodge-admissible, -d < c2 <= d.
    When hn > 4d the boundary c2 = d is impossible, and when hn > (d+1)^2
    only c2 <= 0 survives; those rows are filtered out accordingly."""
    if d < 1:
        raise PreconditionViolated("subscheme length must be at least 1")
    hn = g.hn
    out = []
    c2_hi = d
    if hn > 4 * d:
        c2_hi = d - 1
    if hn > (d + 1) ** 2:
        c2_hi = min(c2_hi, 0)
    for ch in range(1, hn // 2 + 1):
        for c2 in range(-d + 1, c2_hi + 1):
            dv = DivisorData(ch, c2)
            if ch <= c2 + d and hodge_ok(dv, g):
                out.append(dv)
    out.sort(key=lambda dv: (dv.ch, dv.c2))
    return out


def _witness_steps(dv: DivisorData, g: Geometry, d: int, scale: int = 1) -> List[CertStep]:
    """Per-witness inequalities, each true for the witness as enumerated."""
    hn = g.hn
    tag = f"C=({dv.ch},{dv.c2})"
    return [
        _step(f"{tag} degree-halved", 2 * dv.ch, "<=", hn, "destabilizing-subsheaf-degree"),
        _step(f"{tag} chern-count", dv.ch, "<=", dv.c2 + scale * d, "second-chern-comparison"),
        _step(f"{tag} hodge", dv.c2 * hn, "<=", dv.ch * dv.ch, "hodge-index"),
        _step(
            f"{tag} squeeze",
            Fraction(dv.c2) * hn,
            "<=",
            Fraction(hn, 2) * (dv.c2 + scale * d),
            "hodge-index-squeeze",
        ),
    ]


def reider_classical(
    g: Geometry, d: int, excluded_curves: Optional[Iterable[DivisorData]] = None
) -> ReiderVerdict:
    """Adjoint separation of length-d subschemes from the classical numeric
    hypotheses: needs hn > (d+1)^2, and then vanishing holds unless one of
    the enumerated obstruction classes with c2 <= 0 is an effective curve.
    Curves the caller rules out (by hypothesis) can be excluded."""
    if d < 1:
        raise PreconditionViolated("subscheme length must be at least 1")
    hn = g.hn
    threshold = (d + 1) ** 2
    if hn <= threshold:
        return ReiderVerdict(
            STATUS_INCONCLUSIVE,
            (),
            (_step("hypothesis", hn, "<=", threshold, "degree-hypothesis-fails"),),
        )
    steps = [_step("hypothesis", hn, ">", threshold, "degree-hypothesis")]
    excluded = set(excluded_curves or ())
    witnesses = []
    for dv in enumerate_obstruction_curves(g, d):
        if dv.c2 > 0 or dv in excluded:
            continue
        witnesses.append(dv)
        steps.extend(_witness_steps(dv, g, d))
    if witnesses:
        return ReiderVerdict(STATUS_CONDITIONAL, tuple(witnesses), tuple(steps))
    steps.append(_step("witnesses", 0, "==", 0, "empty-witness-list"))
    return ReiderVerdict(STATUS_VANISHING, (), tuple(steps))


def fujita_classical(d: int) -> FujitaResult:
    """Uniform multiple m = d + 2 whose adjoint separates length-d
    subschemes for every ample polarization: certified against worst-case
    data hn >= 1 and C.L >= 1 for effective C."""
    if d < 1:
        raise PreconditionViolated("subscheme length must be at least 1")
    m = d + 2
    steps = (
        _step("degree", m * m, ">", (d + 1) ** 2, "scaled-degree-vs-threshold"),
        _step("curve-window", m, ">", d, "scaled-curve-degree-vs-window"),
    )
    return FujitaResult(m, steps)


@dataclass(frozen=True)
class ObstructionShape:
    """Constraint window on the Q-divisor C = D/r associated to a rank-r
    destabilizer: (1 - 1/r) hn/2 < C.H <= hn/2 and C.H <= C^2 + 2d, with
    C^2 capped at 2d by the Hodge squeeze."""

    r: int
    ch_min_excl: Fraction
    ch_max_incl: Fraction
    c2_excess: int
    c2_hodge_cap: Fraction
    eliminated: bool
    reason: Optional[str] = None

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "r": self.r,
            "ch_min_excl": format_rational(self.ch_min_excl),
            "ch_max_incl": format_rational(self.ch_max_incl),
            "c2_excess": self.c2_excess,
            "c2_hodge_cap": format_rational(self.c2_hodge_cap),
            "eliminated": self.eliminated,
            "reason": self.reason,
        }


def bridgeland_obstruction_shapes(g: Geometry, d: int) -> List[ObstructionShape]:
    """Per-rank windows a destabilizer of either side of the pair system
    would impose at the top of its wall, with elimination marks.

    Requires hn > 8d so the comparison region is nonempty.  A rank is
    eliminated when its window is empty against the Hodge cap C^2 <= 2d, or,
    once hn > (2d+1)^2, by the integrality argument giving C^2 >= 1 and the
    decreasing sweep hn <= (1 + 2d/kappa)^2 <= (2d+1)^2.
    """
    if d < 1:
        raise PreconditionViolated("subscheme length must be at least 1")
    hn = g.hn
    if hn <= 8 * d:
        raise PreconditionViolated("window analysis needs hn > 8d")
    r_span = max(3, ceil(Fraction(hn, hn - 8 * d)))
    strong = hn > (2 * d + 1) ** 2
    rows = []
    for r in range(1, r_span + 1):
        ch_min = (1 - Fraction(1, r)) * Fraction(hn, 2)
        ch_max = Fraction(hn, 2)
        eliminated = False
        reason = None
        if r >= 2:
            if ch_min >= min(ch_max, Fraction(4 * d)):
                eliminated = True
                reason = "window forces C.H > C^2 + 2d against the Hodge cap C^2 <= 2d"
            elif strong:
                eliminated = True
                reason = (
                    "integrality gives C^2 >= 1, and the decreasing sweep"
                    " hn <= (1 + 2d/kappa)^2 <= (2d+1)^2 contradicts the hypothesis"
                )
        rows.append(
            ObstructionShape(
                r=r,
                ch_min_excl=ch_min,
                ch_max_incl=ch_max,
                c2_excess=2 * d,
                c2_hodge_cap=Fraction(2 * d),
                eliminated=eliminated,
                reason=reason,
            )
        )
    return rows


def reider_bridgeland(g: Geometry, d: int) -> ReiderVerdict:
    """Separation of a pair of length-d subschemes via the tilted slope
    comparison: needs hn > (2d+1)^2; the rank >= 2 branches are eliminated
    symbolically (including the kappa sweep), leaving honest divisors with
    C^2 <= 0 and 0 < C.H <= C^2 + 2d as the only possible obstructions."""
    if d < 1:
        raise PreconditionViolated("subscheme length must be at least 1")
    hn = g.hn
    threshold = (2 * d + 1) ** 2
    if hn <= threshold:
        return ReiderVerdict(
            STATUS_INCONCLUSIVE,
            (),
            (_step("hypothesis", hn, "<=", threshold, "degree-hypothesis-fails"),),
        )
    steps = [
        _step("hypothesis", hn, ">", threshold, "degree-hypothesis"),
        _step("semicircle", threshold, ">=", 8 * d + 1, "comparison-region-nonempty"),
        _step("rank3-window", Fraction(hn, 3), ">", Fraction(threshold, 3), "rank-three-degree-window"),
        _step("rank2-halves", hn, ">=", 8 * d + 2, "rank-two-half-integrality"),
    ]
    for kappa in range(1, 2 * d + 1):
        steps.append(
            _step(
                f"kappa-{kappa}",
                hn,
                ">",
                (1 + Fraction(2 * d, kappa)) ** 2,
                "kappa-sweep-decreasing",
            )
        )
    steps.append(
        _step(
            "kappa-max",
            Fraction(threshold),
            ">=",
            max((1 + Fraction(2 * d, kappa)) ** 2 for kappa in range(1, 2 * d + 1)),
            "kappa-sweep-maximum",
        )
    )
    witnesses = []
    for c2 in range(-2 * d + 1, 1):
        for ch in range(1, c2 + 2 * d + 1):
            dv = DivisorData(ch, c2)
            if hodge_ok(dv, g):
                witnesses.append(dv)
    witnesses.sort(key=lambda dv: (dv.ch, dv.c2))
    for dv in witnesses:
        steps.extend(_witness_steps(dv, g, d, scale=2))
    return ReiderVerdict(STATUS_CONDITIONAL, tuple(witnesses), tuple(steps))


def fujita_bridgeland(d: int) -> FujitaResult:
    """Uniform multiple m = 2d + 2 separating pairs of length-d subschemes
    for every ample polarization; the scaled polarization degree is derived
    through the twist operation and the curve window empties out."""
    if d < 1:
        raise PreconditionViolated("subscheme length must be at least 1")
    m = 2 * d + 2
    unit = Geometry(1)
    scaled = twist(line_bundle(0, unit), m, unit)
    steps = (
        _step("scaled-degree", scaled.c1h * scaled.c1h, ">", (2 * d + 1) ** 2, "scaled-degree-vs-threshold"),
        _step("curve-window", m, ">", 2 * d, "scaled-curve-degree-vs-window"),
    )
    return FujitaResult(m, steps)


def picard_rank_one_vanishing(g: Geometry, d: int) -> ReiderVerdict:
    """Unconditional vanishing threshold under Pic = Z.H: holds exactly when
    hn > 8d.  The certificate records the nonempty comparison semicircle and
    that the destabilizer scan returns no finite-phase candidate for either
    side of the pair at s = 1/2."""
    if not g.pic_rank_one:
        raise RequiresPicardRankOne("this vanishing criterion needs Pic = Z.H")
    if d < 1:
        raise PreconditionViolated("subscheme length must be at least 1")
    hn = g.hn
    radius_sq = Fraction(1, 4) - Fraction(2 * d, hn)
    if hn <= 8 * d:
        return ReiderVerdict(
            STATUS_INCONCLUSIVE,
            (),
            (_step("semicircle", radius_sq, "<=", 0, "comparison-region-empty"),),
        )
    pt = TiltPoint(Fraction(1, 2), radius_sq)
    finite_l = [
        c
        for c in enumerate_destabilizers(l_ideal(d, g), pt, g)
        if c.phase_flag == PHASE_FINITE
    ]
    finite_i = [
        c
        for c in enumerate_destabilizers(ideal_dual_shift(d, g), pt, g)
        if c.phase_flag == PHASE_FINITE
    ]
    steps = (
        _step("semicircle", radius_sq, ">", 0, "comparison-region-nonempty"),
        _step("stable-ideal-twist", len(finite_l), "==", 0, "no-finite-phase-destabilizer"),
        _step("stable-shifted-dual", len(finite_i), "==", 0, "no-finite-phase-destabilizer"),
    )
    return ReiderVerdict(STATUS_VANISHING, (), steps)
