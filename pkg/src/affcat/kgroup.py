"""Grothendieck groups of regular blocks as modules over the group algebra of W_k.

The class of the Verma module M_{u.lam} in the block of a regular anchor lam
is identified with the group element u.  Translation functors relabel this
basis, tensoring with a finite-dimensional module acts by right
multiplication, and tilting functors act by right multiplication with
``q_w``, the Verma expansion of the tilting module W_{w.lam}.
"""

from __future__ import annotations

import json
import logging
import random
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

from . import rootsys
from .affweyl import (
    ANTIDOMINANT_REGULAR,
    DOMINANT_REGULAR,
    AffineWeight,
    AffineWeylElement,
    CoxeterSession,
    Level,
    WeylGroup,
    _singular,
    alcove_walk,
    classify,
    format_word,
    parse_word,
)
from .charring import CharVector, change_basis
from .rootsys import Weight, add, fmt_weight, is_integral, sub

log = logging.getLogger(__name__)

PROVENANCES = ("generic-identity", "external", "experimental")


class GroupAlgebraElement:
    """Finitely supported integer combination of elements of one W_k."""

    __slots__ = ("group", "support")

    def __init__(self, group: WeylGroup, support: Optional[Mapping] = None):
        self.group = group
        self.support: Dict[AffineWeylElement, int] = {}
        for u, c in (support or {}).items():
            if c:
                u = group.coerce(u)
                self.support[u] = self.support.get(u, 0) + int(c)
        self.support = {u: c for u, c in self.support.items() if c}

    @classmethod
    def basis(cls, group: WeylGroup, u) -> "GroupAlgebraElement":
        return cls(group, {group.coerce(u): 1})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.support == other.support

    def __repr__(self) -> str:
        return f"GroupAlgebraElement({self.to_json()})"

    def __iter__(self):
        return iter(self.support.items())

    def __getitem__(self, u) -> int:
        return self.support.get(self.group.coerce(u), 0)

    def __bool__(self) -> bool:
        return bool(self.support)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out = Counter(self.support)
        out.update(other.support)
        return GroupAlgebraElement(self.group, out)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + other.scale(-1)

    def scale(self, c: int) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.group, {u: c * v for u, v in self.support.items()})

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        G = self.group
        out: Counter = Counter()
        for u, a in self.support.items():
            for v, b in other.support.items():
                out[G.mul(u, v)] += a * b
        return GroupAlgebraElement(G, out)

    def left_translate(self, w) -> "GroupAlgebraElement":
        """u -> w u on labels."""
        w = self.group.coerce(w)
        return GroupAlgebraElement(self.group, {self.group.mul(w, u): c for u, c in self.support.items()})

    def truncate(self, max_len: int) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.group, {u: c for u, c in self.support.items() if u.length <= max_len})

    def mass(self) -> int:
        return sum(self.support.values())

    def max_length(self) -> int:
        return max((u.length for u in self.support), default=0)

    def to_json(self) -> Dict[str, int]:
        return {format_word(u.word): c for u, c in sorted(self.support.items())}

    @classmethod
    def from_json(cls, group: WeylGroup, data: Mapping[str, int]) -> "GroupAlgebraElement":
        return cls(group, {group.element(parse_word(k)): int(v) for k, v in data.items()})


@dataclass(frozen=True)
class Block:
    """The block of category O at a rational level containing the regular anchor."""

    level: Level
    anchor: AffineWeight
    family: str = "Verma-basis"

    def __post_init__(self):
        self.level.require_rational()
        if self.anchor.level != self.level:
            raise ValueError("anchor is at a different level")
        kind = classify(self.anchor)
        if kind not in (DOMINANT_REGULAR, ANTIDOMINANT_REGULAR):
            raise ValueError(f"anchor {self.anchor} is not a regular alcove weight ({kind})")
        if self.family not in ("Verma-basis", "Weyl-basis"):
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def group(self) -> WeylGroup:
        return WeylGroup.for_level(self.level)

    def weight_of(self, u: AffineWeylElement) -> Weight:
        return self.group.dot(u, self.anchor.weight)

    def label_of(self, lam) -> Optional[AffineWeylElement]:
        """The u with u . anchor = lam, or None if lam is not in this block."""
        G = self.group
        lam = self.level.rs.check(lam)
        if _singular(G, add(lam, self.level.rs.rho)):
            return None
        rep, u = alcove_walk(G, lam)
        return u if rep == self.anchor.weight else None

    def to_weights(self, v: GroupAlgebraElement) -> Dict[Weight, int]:
        return {self.weight_of(u): c for u, c in v}


def make_block(level: Level, anchor, family: str = "Verma-basis") -> Block:
    if not isinstance(anchor, AffineWeight):
        anchor = AffineWeight(level.rs.check(anchor), level)
    return Block(level, anchor, family)


def _compatible(src: Block, dst: Block) -> None:
    if src.level != dst.level:
        raise ValueError("blocks are at different levels")
    if not is_integral(sub(src.anchor.weight, dst.anchor.weight)):
        raise ValueError("anchor difference is not integral")


def translate(src: Block, dst: Block, v: GroupAlgebraElement) -> GroupAlgebraElement:
    """Translation functor on K-groups: [M_{w.mu}] -> [M_{w.lam}], i.e. the identity on labels."""
    _compatible(src, dst)
    return GroupAlgebraElement(dst.group, v.support)


@dataclass
class ActionResult:
    image: GroupAlgebraElement
    dropped: int = 0
    projected_out: int = 0


def tensor_weights(block: Block, mu, v: GroupAlgebraElement) -> Dict[Weight, int]:
    """Verma flag of V_mu^k (.x) A before projecting to a block, keyed by highest weight."""
    rs = block.level.rs
    mults = rootsys.weight_mults(rs, rs.check(mu))
    out: Counter = Counter()
    for u, c in v:
        base = block.weight_of(u)
        for nu, m in mults.items():
            out[add(base, nu)] += c * m
    return {k: x for k, x in out.items() if x}


def tensor_action_detail(block: Block, dst: Block, mu, v: GroupAlgebraElement) -> ActionResult:
    """p_dst o (V_mu^k (.x) ?) on K-groups, with counts of what the projection removed.

    ``dropped`` counts flag terms on affine walls, ``projected_out`` counts
    regular terms belonging to other blocks (both weighted by multiplicity).
    """
    _compatible(block, dst)
    rs = block.level.rs
    G = block.group
    out: Counter = Counter()
    dropped = projected = 0
    for lam, c in tensor_weights(block, mu, v).items():
        if _singular(G, add(lam, rs.rho)):
            dropped += abs(c)
            continue
        rep, u = alcove_walk(G, lam)
        if rep == dst.anchor.weight:
            out[u] += c
        else:
            projected += abs(c)
    if dropped:
        log.debug("projection dropped %d wall terms", dropped)
    return ActionResult(GroupAlgebraElement(G, out), dropped, projected)


def tensor_action(block: Block, dst: Block, mu, v: GroupAlgebraElement) -> GroupAlgebraElement:
    return tensor_action_detail(block, dst, mu, v).image


def extremal_mu(w, lam_l: AffineWeight, lam_r: AffineWeight) -> Weight:
    """Dominant weight mu with w . lam_l - lam_r in the W-orbit of mu."""
    for a in (lam_l, lam_r):
        if classify(a) != ANTIDOMINANT_REGULAR:
            raise ValueError(f"{a} is not antidominant-regular")
    if lam_l.level != lam_r.level:
        raise ValueError("anchors at different levels")
    G = WeylGroup.for_level(lam_l.level)
    w = G.coerce(w)
    d = sub(G.dot(w, lam_l.weight), lam_r.weight)
    if not is_integral(d):
        raise ValueError("w . lam_l - lam_r is not integral")
    return rootsys.dominant_representative(lam_l.rs, d)[0]


# --- tilting tables -------------------------------------------------------------


@dataclass
class TiltingTable:
    """Verma expansions of tilting characters in one block, by W_k label."""

    group: WeylGroup
    rows: Dict[AffineWeylElement, Dict[AffineWeylElement, int]]
    provenance: str = "external"
    anchor: Optional[Weight] = None

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def labels(self) -> List[AffineWeylElement]:
        return sorted(self.rows)

    def violations(self, session: Optional[CoxeterSession] = None, max_len: Optional[int] = None) -> List[str]:
        """Reasons the table fails to be unitriangular for the Bruhat order (empty if fine)."""
        session = session or CoxeterSession(self.group)
        out = []
        for w, row in sorted(self.rows.items()):
            if max_len is not None and w.length > max_len:
                continue
            if row.get(w, 0) != 1:
                out.append(f"row {w}: diagonal coefficient {row.get(w, 0)}")
            for v, c in row.items():
                if v != w and c and not session.bruhat_lt(v, w):
                    out.append(f"row {w}: entry at {v} is not below {w}")
        if max_len is not None:
            for u in self.group.elements(max_len):
                if u not in self.rows:
                    out.append(f"missing row {u}")
        return out

    def order(self, key=None) -> List[AffineWeylElement]:
        """Labels top-down; longer labels first, ties broken by ``key`` (default: word)."""
        key = key or (lambda u: u.word)
        return sorted(self.rows, key=lambda u: (-u.length, key(u)))

    def q(self, w) -> GroupAlgebraElement:
        w = self.group.coerce(w)
        if w not in self.rows:
            raise KeyError(f"table has no row {w}")
        return GroupAlgebraElement(self.group, self.rows[w])

    def to_json(self) -> dict:
        return {
            "anchor": None if self.anchor is None else [str(c) for c in self.anchor],
            "provenance": self.provenance,
            "rows": [
                {"w": format_word(w.word),
                 "expansion": {format_word(v.word): c for v, c in sorted(row.items()) if c}}
                for w, row in sorted(self.rows.items())
            ],
        }

    @classmethod
    def from_json(cls, group: WeylGroup, data: Mapping) -> "TiltingTable":
        rows = {}
        for entry in data["rows"]:
            w = group.element(parse_word(entry["w"]))
            rows[w] = {group.element(parse_word(k)): int(c) for k, c in entry["expansion"].items()}
        anchor = data.get("anchor")
        if anchor is not None:
            anchor = rootsys.weight(anchor)
        return cls(group, rows, data.get("provenance", "external"), anchor)

    @classmethod
    def load(cls, group: WeylGroup, path: str) -> "TiltingTable":
        with open(path) as fh:
            return cls.from_json(group, json.load(fh))


def generic_identity_table(group: WeylGroup, max_len: int) -> TiltingTable:
    """Tilting = Verma: the table at irrational level."""
    return TiltingTable(group, {u: {u: 1} for u in group.elements(max_len)}, "generic-identity")


def random_unitriangular_table(group: WeylGroup, max_len: int, rng: random.Random,
                               density: float = 0.5, bound: int = 3,
                               session: Optional[CoxeterSession] = None) -> TiltingTable:
    """Random table with unit diagonal and entries only strictly below in Bruhat order."""
    session = session or CoxeterSession(group)
    rows = {}
    for w in group.elements(max_len):
        row = {w: 1}
        for v in sorted(session.lower_interval(w)):
            if v != w and rng.random() < density:
                c = rng.randint(-bound, bound)
                if c:
                    row[v] = c
        rows[w] = row
    return TiltingTable(group, rows, "external")


def experimental_table(session, max_len: int) -> TiltingTable:
    """Rows sum_{v <= w} P_{v,w}(1) v from KL polynomials.

    This is an unproven convention offered for exploration; nothing in the
    library or its tests relies on it being the true tilting character.
    """
    G = session.group
    rows = {}
    for w in G.elements(max_len):
        rows[w] = {v: session.poly(v, w)(1) for v in session.lower_interval(w)}
    return TiltingTable(G, rows, "experimental")


def corrupt_table(table: TiltingTable, rng: random.Random) -> TiltingTable:
    """Negative control: put an entry above the diagonal of some row."""
    rows = {w: dict(r) for w, r in table.rows.items()}
    labels = sorted(rows)
    w = labels[0] if len(labels) == 1 else min(labels)
    longer = [u for u in labels if u.length > w.length]
    if longer:
        rows[w][rng.choice(longer)] = 1
    else:
        rows[w][w] = 2
    return TiltingTable(table.group, rows, table.provenance, table.anchor)


def tilting_q(w, table: TiltingTable) -> GroupAlgebraElement:
    """q_w: the character of Phi_w(M_lam) in the Verma basis."""
    return table.q(w)


def decompose_tilting_functor(mu, lam_l: AffineWeight, lam_r: AffineWeight, table: TiltingTable,
                              max_len: int, key=None) -> Dict[AffineWeylElement, int]:
    """Coefficients c_v with [p_{lam_l}(V_mu^k (.x) M_{lam_r})] = sum_v c_v q_v.

    Elimination runs from long labels to short ones; ``key`` breaks ties
    between labels of equal length.
    """
    for a in (lam_l, lam_r):
        if classify(a) != ANTIDOMINANT_REGULAR:
            raise ValueError(f"{a} is not antidominant-regular")
    rs = lam_l.rs
    mu = rs.check(mu)
    if not (is_integral(mu) and rs.is_dominant(mu)):
        raise ValueError(f"{fmt_weight(mu)} is not dominant integral")
    src = Block(lam_r.level, lam_r)
    dst = Block(lam_l.level, lam_l)
    G = src.group
    image = tensor_action(src, dst, mu, GroupAlgebraElement.basis(G, G.identity))
    outside = [u for u, _ in image if u.length > max_len or u not in table.rows]
    if outside:
        raise ValueError(f"labels {[format_word(u.word) for u in outside]} are outside the table")
    vec = CharVector("Verma", image.support)
    res = change_basis(vec, table, "verma->tilting", order=table.order(key))
    return dict(sorted(res.support.items()))


def right_multiplication(q: GroupAlgebraElement):
    return lambda x: x * q


def group_algebra_check(lam: AffineWeight, table: TiltingTable, max_len: int,
                        mus: Sequence[Weight] = (), session: Optional[CoxeterSession] = None) -> dict:
    """Check that the q_w behave as a basis of the group algebra of W_k.

    Reports, each as a list of failures:
      unitriangular - rows up to ``max_len`` have unit diagonal and Bruhat-lower support;
      basis         - every label up to ``max_len`` survives a round trip through the q basis;
      composition   - right multiplication by q_a then q_b equals right multiplication by q_a q_b;
      operators     - each V_mu^k (.x) ? acts on the block as right multiplication by its value at e.
    """
    if classify(lam) != ANTIDOMINANT_REGULAR:
        raise ValueError(f"{lam} is not antidominant-regular")
    G = WeylGroup.for_level(lam.level)
    session = session or CoxeterSession(G)
    report = {"unitriangular": table.violations(session, max_len),
              "basis": [], "composition": [], "operators": []}
    labels = G.elements(max_len)
    identity_map = all(table.rows.get(u) == {u: 1} for u in labels)
    if not report["unitriangular"]:
        sub_table = {u: table.rows[u] for u in labels}
        order = sorted(sub_table, key=lambda u: (-u.length, u.word))
        for u in labels:
            back = change_basis(change_basis(CharVector("Verma", {u: 1}), sub_table, order=order),
                                sub_table, "tilting->verma")
            if back.support != {u: 1}:
                report["basis"].append(f"label {u} does not round trip")
        probes = [G.identity] + [G.gen(s) for s in G.generators]
        for a in labels:
            qa = table.q(a)
            for b in labels:
                qb = table.q(b)
                qab = qa * qb
                for u in probes:
                    x = GroupAlgebraElement.basis(G, u)
                    if (x * qa) * qb != x * qab:
                        report["composition"].append(f"{a}, {b} at {u}")
    else:
        report["basis"].append("skipped: table not unitriangular")
        report["composition"].append("skipped: table not unitriangular")
    block = Block(lam.level, lam)
    for mu in mus:
        e_image = tensor_action(block, block, mu, GroupAlgebraElement.basis(G, G.identity))
        for u in labels:
            lhs = tensor_action(block, block, mu, GroupAlgebraElement.basis(G, u))
            if lhs != GroupAlgebraElement.basis(G, u) * e_image:
                report["operators"].append(f"mu={fmt_weight(mu)} at {u}")
    report["identity_map"] = identity_map
    report["passed"] = not any(report[k] for k in ("unitriangular", "basis", "composition", "operators"))
    return report


def random_element(group: WeylGroup, max_len: int, rng: random.Random, terms: int = 4,
                   bound: int = 5) -> GroupAlgebraElement:
    labels = group.elements(max_len)
    return GroupAlgebraElement(group, {rng.choice(labels): rng.randint(-bound, bound) for _ in range(terms)})
