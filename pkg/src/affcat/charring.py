"""Multiplicity calculus for characters.

Covers tensor-product decomposition of finite-dimensional modules
(Brauer-Klimyk), the Weyl and Verma flags of Kazhdan-Lusztig tensor products,
and unitriangular basis changes in the Grothendieck group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, Hashable, Iterable, List, Mapping, Optional

from . import rootsys
from .affweyl import AffineWeight, Level, classify, ON_WALL
from .rootsys import RootSystem, Weight, add, fmt_weight, is_integral, sub

FAMILIES = ("Verma", "Weyl", "Simple", "Tilting")


@dataclass
class CharVector:
    """Finite integer combination of character classes of one family."""

    family: str
    support: Dict[Hashable, int] = field(default_factory=dict)
    meta: Dict[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        self.support = {k: int(v) for k, v in self.support.items() if v}

    def _same(self, other: "CharVector") -> None:
        if other.family != self.family:
            raise ValueError(f"cannot combine {self.family} and {other.family} characters")

    def __add__(self, other: "CharVector") -> "CharVector":
        self._same(other)
        out = Counter(self.support)
        out.update(other.support)
        return CharVector(self.family, dict(out))

    def __sub__(self, other: "CharVector") -> "CharVector":
        return self + other * -1

    def __mul__(self, c: int) -> "CharVector":
        return CharVector(self.family, {k: c * v for k, v in self.support.items()})

    __rmul__ = __mul__

    def __getitem__(self, key) -> int:
        return self.support.get(key, 0)

    def mass(self) -> int:
        return sum(self.support.values())


def _check_dominant(rs: RootSystem, lam) -> Weight:
    lam = rs.check(lam)
    if not (is_integral(lam) and rs.is_dominant(lam)):
        raise ValueError(f"{fmt_weight(lam)} is not dominant integral")
    return lam


def tensor_decompose(rs: RootSystem, lam, mu) -> Dict[Weight, int]:
    """Multiplicities of V_nu in V_lam (x) V_mu by Brauer-Klimyk.

    Each weight nu of V_mu contributes sign(w) at the dominant representative
    of lam + nu under the dot action; weights on shifted walls contribute 0.
    """
    lam = _check_dominant(rs, lam)
    mu = _check_dominant(rs, mu)
    # iterate over the smaller module
    if rs.weyl_dimension(lam) < rs.weyl_dimension(mu):
        lam, mu = mu, lam
    out: Counter = Counter()
    for nu, m in rootsys.weight_mults(rs, mu).items():
        x = add(add(lam, nu), rs.rho)
        sign = 1
        while True:
            i = next((j for j, c in enumerate(x) if c <= 0), None)
            if i is None:
                break
            if x[i] == 0:
                sign = 0
                break
            x = rs.reflect(i + 1, x)
            sign = -sign
        if sign:
            out[sub(x, rs.rho)] += sign * m
    res = {k: v for k, v in out.items() if v}
    assert all(v > 0 for v in res.values()), res
    return dict(sorted(res.items()))


def character_product(rs: RootSystem, lam, mu) -> Dict[Weight, int]:
    """Formal character of V_lam (x) V_mu as a weight multiset."""
    a = rootsys.weight_mults_int(rs, _check_dominant(rs, lam))
    b = rootsys.weight_mults_int(rs, _check_dominant(rs, mu))
    out: Counter = Counter()
    for x, m in a.items():
        for y, n in b.items():
            out[tuple(i + j for i, j in zip(x, y))] += m * n
    return {tuple(Q(c) for c in k): v for k, v in out.items()}


def greedy_decompose(rs: RootSystem, char: Mapping[Weight, int]) -> Dict[Weight, int]:
    """Split a genuine character into irreducibles by peeling off highest weights."""
    if not all(is_integral(w) for w in char):
        raise ValueError("character has non-integral weights")
    rem = Counter({tuple(int(c) for c in w): m for w, m in char.items() if m})
    out: Dict[Weight, int] = {}
    # height in root coordinates, scaled by a positive integer
    _, cinv, _ = rs._int_data
    hvec = [sum(row[j] for row in cinv) for j in range(rs.rank)]
    heights = {w: sum(h * c for h, c in zip(hvec, w)) for w in rem}

    while rem:
        top = max(rem, key=lambda w: (heights[w], w))
        m = rem[top]
        out[tuple(Q(c) for c in top)] = m
        for nu, k in rootsys.weight_mults_int(rs, top).items():
            rem[nu] -= m * k
            if rem[nu] == 0:
                del rem[nu]
        if any(v < 0 for v in rem.values()):
            raise ValueError("not the character of a module")
    return dict(sorted(out.items()))


def weyl_flag(rs: RootSystem, lam, mu, level: Optional[Level] = None) -> CharVector:
    """Weyl-flag multiplicities of V_lam^k (.x) V_mu^k; independent of the level.

    When a rational level is given, labels whose shifted weight lies on an
    affine wall are listed in ``meta["on_wall"]``.
    """
    mults = tensor_decompose(rs, lam, mu)
    vec = CharVector("Weyl", mults)
    if level is not None and not level.generic:
        vec.meta["on_wall"] = [nu for nu in mults if classify(AffineWeight(nu, level)) == ON_WALL]
    return vec


def verma_flag(rs: RootSystem, lam, mu) -> CharVector:
    """Verma-flag multiplicities of V_lam^k (.x) M_mu^k: dim V_lam[nu] at mu + nu."""
    lam = _check_dominant(rs, lam)
    if isinstance(mu, AffineWeight):
        mu = mu.weight
    mu = rs.check(mu)
    if not is_integral(mu):
        raise ValueError(f"{fmt_weight(mu)} is not integral")
    return CharVector("Verma", {add(mu, nu): m for nu, m in rootsys.weight_mults(rs, lam).items()})


# --- unitriangular basis change ---------------------------------------------


def _rows(table) -> Mapping[Hashable, Mapping[Hashable, int]]:
    return getattr(table, "rows", table)


def triangular_order(table, labels: Optional[Iterable] = None) -> List:
    """Labels of the table from top to bottom.

    Raises ValueError unless every row has coefficient 1 on its own label and
    the off-diagonal support relation is acyclic.
    """
    rows = _rows(table)
    for a, row in rows.items():
        if row.get(a, 0) != 1:
            raise ValueError(f"row {a} does not have unit diagonal")
    keys = list(rows) if labels is None else list(labels)
    index = {a: i for i, a in enumerate(keys)}
    indeg = {a: 0 for a in keys}
    for a in keys:
        for b, c in rows[a].items():
            if b != a and c:
                if b not in index:
                    raise ValueError(f"row {a} refers to {b}, which has no row")
                indeg[b] += 1
    ready = [a for a in keys if indeg[a] == 0]
    order = []
    while ready:
        a = ready.pop(0)
        order.append(a)
        for b, c in rows[a].items():
            if b != a and c:
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
    if len(order) != len(keys):
        raise ValueError("table is not unitriangular (cyclic support)")
    return order


def change_basis(v: CharVector, table, direction: str = "verma->tilting",
                 order: Optional[List] = None) -> CharVector:
    """Rewrite v between the Verma basis and the basis given by the table rows.

    ``order`` may fix the elimination order (top to bottom); it must be
    compatible with the table.
    """
    rows = _rows(table)
    if direction in ("verma->tilting", "verma→tilting"):
        if v.family != "Verma":
            raise ValueError("expected a Verma-basis vector")
        order = order if order is not None else triangular_order(table)
        cur = Counter(v.support)
        missing = [a for a in cur if a not in rows]
        if missing:
            raise ValueError(f"labels {missing} are not in the table")
        out = {}
        for a in order:
            c = cur.get(a, 0)
            if not c:
                continue
            out[a] = c
            for b, d in rows[a].items():
                cur[b] -= c * d
        rest = {a: c for a, c in cur.items() if c}
        if rest:
            raise ValueError(f"elimination order is not compatible with the table: {rest}")
        return CharVector("Tilting", out)
    if direction in ("tilting->verma", "tilting→verma"):
        if v.family != "Tilting":
            raise ValueError("expected a Tilting-basis vector")
        out: Counter = Counter()
        for a, c in v.support.items():
            if a not in rows:
                raise ValueError(f"label {a} is not in the table")
            for b, d in rows[a].items():
                out[b] += c * d
        return CharVector("Verma", dict(out))
    raise ValueError(f"unknown direction {direction!r}")


def dimension_balance(rs: RootSystem, lam, mu, mults: Mapping[Weight, int]) -> bool:
    lhs = sum(m * rs.weyl_dimension(nu) for nu, m in mults.items())
    return lhs == rs.weyl_dimension(lam) * rs.weyl_dimension(mu)

