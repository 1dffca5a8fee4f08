"""Linkage data for Weyl modules at positive rational level.

Submodules of a regular dominant Weyl module V_lam^k are tracked only by the
highest weights w . lam that can carry singular vectors: elements of the
dotted W_k-orbit that are again dominant for the finite Weyl group.  The
correspondence between ideals of the vacuum module and submodules of V_lam^k
becomes the relabeling w . 0 -> w . lam on these candidates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, List, Optional, Tuple

from .affweyl import (
    DOMINANT_REGULAR,
    AffineWeight,
    AffineWeylElement,
    CoxeterSession,
    WeylGroup,
    affine_grade_shift,
    classify,
    dot_act_affine,
    format_word,
    is_regular,
    orbit_walk,
)
from .rootsys import fmt_weight, is_integral, sub


@dataclass
class Candidate:
    element: AffineWeylElement
    weight: AffineWeight
    degree: Q  # energy of the candidate singular vector above the highest weight

    def to_json(self) -> dict:
        return {"w": format_word(self.element.word), "length": self.element.length,
                "weight": [str(c) for c in self.weight.weight], "degree": str(self.degree)}


@dataclass
class LinkageReport:
    base: AffineWeight
    candidates: List[Candidate] = field(default_factory=list)
    minimal_covers: List[Candidate] = field(default_factory=list)
    max_len: int = 0

    def to_json(self) -> dict:
        return {
            "base": [str(c) for c in self.base.weight],
            "level": str(self.base.level),
            "max_len": self.max_len,
            "candidates": [c.to_json() for c in self.candidates],
            "minimal_covers": [c.to_json() for c in self.minimal_covers],
            "minimal_cover_count": len(self.minimal_covers),
        }


def admissible_check(lam: AffineWeight) -> bool:
    """Positive rational level and lam integral, dominant and regular."""
    if lam.level.generic or not lam.level.positive:
        return False
    return is_integral(lam.weight) and classify(lam) == DOMINANT_REGULAR


def singular_candidates(lam: AffineWeight, max_len: int) -> LinkageReport:
    """Weights w . lam (e < w, l(w) <= max_len) that are dominant for the finite Weyl group."""
    report = LinkageReport(lam, max_len=max_len)
    if lam.level.generic:
        return report
    if not admissible_check(lam):
        raise ValueError(f"{lam} is not an admissible (integral dominant-regular) weight")
    G = WeylGroup.for_level(lam.level)
    for w in G.elements(max_len):
        if w.length == 0:
            continue
        mu = dot_act_affine(w, lam)
        if all(c >= 0 for c in mu.weight):
            report.candidates.append(Candidate(w, mu, -affine_grade_shift(w, lam)))
    if report.candidates:
        m = min(c.element.length for c in report.candidates)
        report.minimal_covers = [c for c in report.candidates if c.element.length == m]
    return report


def annihilator_correspondence(report: LinkageReport, target: AffineWeight,
                               max_len: Optional[int] = None) -> List[Tuple[AffineWeight, AffineWeight]]:
    """Pair each candidate w . 0 with w . target."""
    base = report.base
    if any(c != 0 for c in base.weight):
        raise ValueError("the report must be based at the vacuum weight 0")
    if target.level != base.level:
        raise ValueError("target is at a different level")
    if not admissible_check(target):
        raise ValueError(f"{target} is not dominant-regular")
    if not is_integral(sub(target.weight, base.weight)):
        raise ValueError("target - base is not integral")
    max_len = report.max_len if max_len is None else max_len
    return [(c.weight, dot_act_affine(c.element, target))
            for c in report.candidates if c.element.length <= max_len]


def check_order_isomorphism(report: LinkageReport, target: AffineWeight,
                            session: Optional[CoxeterSession] = None) -> List[str]:
    """Failures of the correspondence to be a length- and <_k-preserving bijection."""
    G = WeylGroup.for_level(target.level)
    session = session or CoxeterSession(G)
    pairs = annihilator_correspondence(report, target)
    out = []
    if len({b.weight for _, b in pairs}) != len(pairs) or len(pairs) != len(report.candidates):
        out.append("not a bijection onto its image")
    labels = []
    for (a, b), cand in zip(pairs, report.candidates):
        rep_a, wa = orbit_walk(a)
        rep_b, wb = orbit_walk(b)
        if rep_a.weight != report.base.weight or rep_b.weight != target.weight:
            out.append(f"{fmt_weight(a.weight)} or {fmt_weight(b.weight)} left its orbit")
            continue
        if wa.length != wb.length:
            out.append(f"length changed at {format_word(cand.element.word)}")
        labels.append((wa, wb))
    for x1, y1 in labels:
        for x2, y2 in labels:
            if session.bruhat_leq(x1, x2) != session.bruhat_leq(y1, y2):
                out.append(f"order differs at ({x1}, {x2})")
    return out


def orbit_census(lam: AffineWeight, max_len: int) -> Dict[int, int]:
    """Number of orbit points w . lam for each length l(w) <= max_len."""
    lam.level.require_rational()
    if not is_regular(lam):
        raise ValueError(f"{lam} is singular; the orbit census would collapse")
    G = WeylGroup.for_level(lam.level)
    seen = set()
    out: Dict[int, int] = {}
    for layer_len, layer in enumerate(G.layers(max_len)):
        pts = {G.dot(w, lam.weight) for w in layer}
        assert not pts & seen
        seen |= pts
        out[layer_len] = len(pts)
    return out
