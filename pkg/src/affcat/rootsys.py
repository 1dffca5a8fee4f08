"""Finite root systems, weights and the finite Weyl group.

Weights are tuples of :class:`fractions.Fraction` in the basis of fundamental
weights, so ``lam[i]`` is the pairing of ``lam`` with the i-th simple coroot.
The invariant form is normalized so that the highest root has squared length 2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property, lru_cache
from math import gcd as _gcd
from typing import Dict, Iterable, List, Sequence, Tuple

Weight = Tuple[Q, ...]
Matrix = Tuple[Tuple[int, ...], ...]

# Dynkin data: squared length of each simple root (long roots = 2) and edges.
# Node numbering follows Bourbaki.
_THIRD = Q(2, 3)


def _path(n: int) -> List[Tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def _dynkin(series: str, rank: int) -> Tuple[List[Q], List[Tuple[int, int]]]:
    n = rank
    if series == "A" and n >= 1:
        return [Q(2)] * n, _path(n)
    if series == "B" and n >= 2:
        return [Q(2)] * (n - 1) + [Q(1)], _path(n)
    if series == "C" and n >= 2:
        return [Q(1)] * (n - 1) + [Q(2)], _path(n)
    if series == "D" and n >= 4:
        return [Q(2)] * n, _path(n - 1) + [(n - 3, n - 1)]
    if series == "E" and n in (6, 7, 8):
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        return [Q(2)] * n, edges
    if series == "F" and n == 4:
        return [Q(2), Q(2), Q(1), Q(1)], _path(4)
    if series == "G" and n == 2:
        return [_THIRD, Q(2)], [(0, 1)]
    raise ValueError(f"unsupported root system {series}{rank}")


def mat_inverse(A: Sequence[Sequence]) -> List[List[Q]]:
    """Exact Gauss-Jordan inverse of a square matrix."""
    n = len(A)
    M = [[Q(x) for x in row] + [Q(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def mat_vec(A: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def weight(coords: Iterable) -> Weight:
    """Coerce an iterable of ints, Fractions or ``"p/q"`` strings to a weight."""
    out = []
    for c in coords:
        if isinstance(c, float):
            raise TypeError("weights must be exact; got a float")
        out.append(Q(c))
    return tuple(out)


def add(x: Weight, y: Weight) -> Weight:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Weight, y: Weight) -> Weight:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Weight) -> Weight:
    return tuple(c * a for a in x)


def is_integral(x: Weight) -> bool:
    return all(Q(a).denominator == 1 for a in x)


@dataclass(frozen=True)
class RootSystem:
    series: str
    rank: int
    cartan: Matrix = field(repr=False)
    root_lengths: Tuple[Q, ...] = field(repr=False)

    # --- lattice data -------------------------------------------------

    @cached_property
    def simple_roots(self) -> Tuple[Weight, ...]:
        n = self.rank
        return tuple(tuple(Q(self.cartan[i][j]) for i in range(n)) for j in range(n))

    @cached_property
    def fundamental_weights(self) -> Tuple[Weight, ...]:
        n = self.rank
        return tuple(tuple(Q(int(i == j)) for i in range(n)) for j in range(n))

    @cached_property
    def form(self) -> Tuple[Tuple[Q, ...], ...]:
        """Gram matrix of the invariant form on fundamental weights."""
        inv = mat_inverse(self.cartan)
        d = [ln / 2 for ln in self.root_lengths]
        return tuple(tuple(d[i] * inv[i][j] for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def _cartan_inv(self) -> List[List[Q]]:
        return mat_inverse(self.cartan)

    @cached_property
    def _int_data(self):
        """Integer data for integral weights: (scaled Gram N*F, scaled inverse Cartan, N)."""
        inv = self._cartan_inv
        dens = [q.denominator for row in self.form for q in row] + [q.denominator for row in inv for q in row]
        n = 1
        for d in dens:
            n = n * d // _gcd(n, d)
        gram = tuple(tuple(int(q * n) for q in row) for row in self.form)
        cinv = tuple(tuple(int(q * n) for q in row) for row in inv)
        return gram, cinv, n

    def root_coords(self, x: Weight) -> Weight:
        """Coordinates of ``x`` in the basis of simple roots."""
        return tuple(mat_vec(self._cartan_inv, x))

    def from_root_coords(self, c: Sequence) -> Weight:
        return tuple(Q(v) for v in mat_vec(self.cartan, c))

    def inner(self, x: Weight, y: Weight) -> Q:
        F = self.form
        return sum(x[i] * F[i][j] * y[j] for i in range(self.rank) for j in range(self.rank))

    def norm2(self, x: Weight) -> Q:
        return self.inner(x, x)

    @cached_property
    def positive_roots(self) -> Tuple[Weight, ...]:
        """Positive roots ordered by height, then lexicographically in root coordinates."""
        n = self.rank
        seen = set()
        frontier = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        seen.update(frontier)
        while frontier:
            nxt = []
            for c in frontier:
                v = mat_vec(self.cartan, c)
                for j in range(n):
                    r = list(c)
                    r[j] -= v[j]
                    r = tuple(r)
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        pos = sorted((c for c in seen if all(a >= 0 for a in c)), key=lambda c: (sum(c), c))
        return tuple(self.from_root_coords(c) for c in pos)

    @cached_property
    def rho(self) -> Weight:
        return tuple(Q(1) for _ in range(self.rank))

    @cached_property
    def theta(self) -> Weight:
        return self.positive_roots[-1]

    @cached_property
    def dual_marks(self) -> Tuple[Q, ...]:
        """Coefficients of the highest coroot in the simple coroots."""
        return tuple(self.inner(w, self.theta) for w in self.fundamental_weights)

    @cached_property
    def dual_coxeter(self) -> int:
        h = 1 + sum(self.dual_marks)
        assert h.denominator == 1
        return int(h)

    @cached_property
    def dim(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    # --- finite Weyl group action -------------------------------------

    def reflect(self, i: int, x: Weight) -> Weight:
        """Simple reflection s_i (1-based) acting linearly."""
        a = self.simple_roots[i - 1]
        c = x[i - 1]
        return tuple(xi - c * ai for xi, ai in zip(x, a))

    @cached_property
    def simple_reflection_matrices(self) -> Tuple[Matrix, ...]:
        n = self.rank
        mats = []
        for i in range(1, n + 1):
            cols = [self.reflect(i, self.fundamental_weights[j]) for j in range(n)]
            mats.append(tuple(tuple(int(cols[j][r]) for j in range(n)) for r in range(n)))
        return tuple(mats)

    def weyl_dimension(self, lam: Weight) -> int:
        x = add(lam, self.rho)
        num = Q(1)
        for a in self.positive_roots:
            num *= self.inner(x, a) / self.inner(self.rho, a)
        assert num.denominator == 1
        return int(num)

    def is_dominant(self, lam: Weight) -> bool:
        return all(c >= 0 for c in lam)

    def check(self, lam: Weight) -> Weight:
        lam = weight(lam)
        if len(lam) != self.rank:
            raise ValueError(f"weight {fmt_weight(lam)} has wrong dimension for {self.name}")
        return lam

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    def __reduce__(self):
        return build, (self.series, self.rank)


@lru_cache(maxsize=None)
def build(series: str, rank: int) -> RootSystem:
    """Cartan data for the simple Lie algebra of the given type."""
    series = series.upper()
    lengths, edges = _dynkin(series, int(rank))
    n = len(lengths)
    gram = [[Q(0)] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = lengths[i]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j]) / 2
    cartan = []
    for i in range(n):
        row = []
        for j in range(n):
            a = 2 * gram[i][j] / gram[i][i]
            assert a.denominator == 1
            row.append(int(a))
        cartan.append(tuple(row))
    return RootSystem(series, n, tuple(cartan), tuple(lengths))


def parse_type(text: str) -> Tuple[str, int, bool]:
    """Parse ``"A2"`` or ``"affineA2"`` into (series, rank, affine)."""
    t = text.strip()
    affine = t.lower().startswith("affine")
    if affine:
        t = t[len("affine"):]
    if len(t) < 2 or not t[0].isalpha() or not t[1:].isdigit():
        raise ValueError(f"cannot parse root system type {text!r}")
    series, rank = t[0].upper(), int(t[1:])
    _dynkin(series, rank)  # raises on unknown series or bad rank
    return series, rank, affine


def fmt_weight(lam: Weight) -> str:
    return "[" + ",".join(str(c) for c in lam) + "]"


# --- finite Weyl group -------------------------------------------------


@dataclass(frozen=True)
class FiniteWeylElement:
    """Element of the finite Weyl group, stored as its matrix on weights."""

    matrix: Matrix
    rs: RootSystem = field(compare=False, repr=False)

    @cached_property
    def word(self) -> Tuple[int, ...]:
        return finite_group(self.rs).word(self)

    @property
    def length(self) -> int:
        return finite_group(self.rs).length(self)

    def __call__(self, lam: Weight) -> Weight:
        return mat_vec(self.matrix, lam)

    def __mul__(self, other: "FiniteWeylElement") -> "FiniteWeylElement":
        return FiniteWeylElement(mat_mul(self.matrix, other.matrix), self.rs)


def finite_group(rs: RootSystem):
    from .affweyl import WeylGroup

    return WeylGroup.finite(rs)


def finite_element(rs: RootSystem, word: Sequence[int] = ()) -> FiniteWeylElement:
    """Product s_{word[0]} s_{word[1]} ... of simple reflections (1-based)."""
    M = identity_matrix(rs.rank)
    for i in word:
        if not 1 <= i <= rs.rank:
            raise ValueError(f"s{i} is not a simple reflection of {rs.name}")
        M = mat_mul(M, rs.simple_reflection_matrices[i - 1])
    return FiniteWeylElement(M, rs)


def act(w: FiniteWeylElement, lam: Weight) -> Weight:
    """Unshifted action w(lam)."""
    lam = w.rs.check(lam)
    return w(lam)


def dot_act(w: FiniteWeylElement, lam: Weight) -> Weight:
    """Shifted action w(lam + rho) - rho."""
    rs = w.rs
    lam = rs.check(lam)
    return sub(w(add(lam, rs.rho)), rs.rho)


def dominant_representative(rs: RootSystem, lam: Weight, shifted: bool = False):
    """Return ``(dom, w)`` with dom in the closed dominant chamber and w(lam) = dom.

    With ``shifted`` the chamber is taken for the dot action.
    """
    lam = rs.check(lam)
    x = add(lam, rs.rho) if shifted else lam
    word: List[int] = []
    while True:
        i = next((j for j, c in enumerate(x) if c < 0), None)
        if i is None:
            break
        x = rs.reflect(i + 1, x)
        word.append(i + 1)
    dom = sub(x, rs.rho) if shifted else x
    return dom, finite_element(rs, reversed(word))


@lru_cache(maxsize=None)
def longest_element(rs: RootSystem) -> FiniteWeylElement:
    _, w = dominant_representative(rs, tuple(-c for c in rs.rho))
    return w


def bar_involution(rs: RootSystem, lam: Weight) -> Weight:
    """The involution -w0 on dominant weights (weight of the dual module)."""
    lam = rs.check(lam)
    if not rs.is_dominant(lam):
        raise ValueError(f"{fmt_weight(lam)} is not dominant")
    return tuple(-c for c in longest_element(rs)(lam))


def orbit(rs: RootSystem, lam: Weight) -> List[Weight]:
    """The orbit of lam under the unshifted finite Weyl group."""
    lam = rs.check(lam)
    seen = {lam}
    stack = [lam]
    while stack:
        x = stack.pop()
        for i in range(1, rs.rank + 1):
            y = rs.reflect(i, x)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return sorted(seen)


# --- weight multiplicities ------------------------------------------------


def _int_helpers(rs: RootSystem):
    gram, cinv, _ = rs._int_data
    n = rs.rank
    cols = [tuple(rs.cartan[r][i] for r in range(n)) for i in range(n)]  # simple roots, int

    def inner(x, y):
        return sum(x[i] * gram[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j])

    def dominant(x):
        while True:
            i = next((j for j, c in enumerate(x) if c < 0), None)
            if i is None:
                return x
            c = x[i]
            x = tuple(a - c * b for a, b in zip(x, cols[i]))

    def le(mu, lam):
        d = [lam[i] - mu[i] for i in range(n)]
        return all(sum(cinv[r][j] * d[j] for j in range(n)) >= 0 for r in range(n))

    return cols, inner, dominant, le


@lru_cache(maxsize=4096)
def _freudenthal_int(rs: RootSystem, lam: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    # BFS from the highest weight down by simple roots, staying inside the
    # saturated set {mu : dom(mu) <= lam}.  Integer arithmetic with a scaled form.
    cols, inner, dominant, le = _int_helpers(rs)
    depth = {lam: 0}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in cols:
                nu = tuple(x - y for x, y in zip(mu, a))
                if nu not in depth and le(dominant(nu), lam):
                    depth[nu] = depth[mu] + 1
                    nxt.append(nu)
        frontier = nxt

    rho = tuple(1 for _ in lam)
    xl = tuple(x + 1 for x in lam)
    top = inner(xl, xl)
    roots = [tuple(int(c) for c in a) for a in rs.positive_roots]
    mult: Dict[Tuple[int, ...], int] = {}
    for mu in sorted(depth, key=depth.__getitem__):
        if mu == lam:
            mult[mu] = 1
            continue
        s = 0
        for a in roots:
            nu = tuple(x + y for x, y in zip(mu, a))
            while nu in depth:
                m = mult.get(nu, 0)
                if m:
                    s += m * inner(nu, a)
                nu = tuple(x + y for x, y in zip(nu, a))
        xm = tuple(x + r for x, r in zip(mu, rho))
        m, r = divmod(2 * s, top - inner(xm, xm))
        assert r == 0 and m >= 0, (mu, m)
        if m:
            mult[mu] = m
    return tuple(sorted(mult.items()))


def weight_mults_int(rs: RootSystem, lam: Sequence[int]) -> Dict[Tuple[int, ...], int]:
    """Weight multiplicities of V_lam keyed by plain int tuples (fast path)."""
    return dict(_freudenthal_int(rs, tuple(int(c) for c in lam)))


def weight_mults(rs: RootSystem, lam: Weight) -> Dict[Weight, int]:
    """Weight multiplicities of the irreducible module V_lam (Freudenthal)."""
    lam = rs.check(lam)
    if not is_integral(lam) or not rs.is_dominant(lam):
        raise ValueError(f"{fmt_weight(lam)} is not dominant integral")
    return {tuple(Q(c) for c in mu): m for mu, m in _freudenthal_int(rs, tuple(int(c) for c in lam))}


def character_mass(char: Dict[Weight, int]) -> int:
    return sum(char.values())


def is_w_invariant(rs: RootSystem, char: Dict[Weight, int]) -> bool:
    for i in range(1, rs.rank + 1):
        moved = Counter({rs.reflect(i, mu): m for mu, m in char.items()})
        if moved != Counter(char):
            return False
    return True
