"""Kazhdan-Lusztig polynomials of finite and affine Weyl groups."""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from .affweyl import AffineWeylElement, CoxeterSession, WeylGroup


class IntPoly(tuple):
    """Integer polynomial in q as its ascending coefficient tuple, no trailing zeros."""

    def __new__(cls, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return super().__new__(cls, c)

    @property
    def degree(self) -> int:
        return len(self) - 1

    def coeff(self, i: int) -> int:
        return self[i] if 0 <= i < len(self) else 0

    def __add__(self, other):
        n = max(len(self), len(other))
        return IntPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    def __sub__(self, other):
        n = max(len(self), len(other))
        return IntPoly(self.coeff(i) - other.coeff(i) for i in range(n))

    def shift(self, k: int) -> "IntPoly":
        """Multiply by q^k."""
        return IntPoly((0,) * k + tuple(self)) if self else self

    def scale(self, c: int) -> "IntPoly":
        return IntPoly(c * a for a in self)

    def __call__(self, q: int) -> int:
        return sum(a * q ** i for i, a in enumerate(self))

    def __repr__(self) -> str:
        return f"IntPoly({list(self)})"


ZERO = IntPoly()
ONE = IntPoly((1,))


@dataclass
class SessionConfig:
    """Memo limits; the oldest entries are evicted first once a table is full."""

    max_poly_entries: int = 500_000
    max_bruhat_entries: int = 1_000_000


class KLSession(CoxeterSession):
    """Bruhat and KL memo tables for one Coxeter group; one per thread."""

    def __init__(self, group: WeylGroup, config: Optional[SessionConfig] = None):
        self.config = config or SessionConfig()
        super().__init__(group, self.config.max_bruhat_entries)
        self._poly: "OrderedDict[Tuple[AffineWeylElement, AffineWeylElement], IntPoly]" = OrderedDict()

    def poly(self, x, w) -> IntPoly:
        G = self.group
        x, w = G.coerce(x), G.coerce(w)
        return self._p(x, w)

    def _p(self, x: AffineWeylElement, w: AffineWeylElement) -> IntPoly:
        if x == w:
            return ONE
        if not self._leq_rec(x, w):
            return ZERO
        key = (x, w)
        hit = self._poly.get(key)
        if hit is not None:
            return hit
        G = self.group
        s = w.word[0]  # least left descent
        gs = G.gen(s)
        v = G.mul(gs, w)
        sx = G.mul(gs, x)
        c = 1 if sx.length < x.length else 0
        res = self._p(sx, v).shift(1 - c) + self._p(x, v).shift(c)
        lw = w.length
        for z in self.lower_interval(v):
            if z == v or z.length < x.length or not self.is_left(s, z):
                continue
            m = self.mu(z, v)
            if m and self._leq_rec(x, z):
                res = res - self._p(x, z).scale(m).shift((lw - z.length) // 2)
        self._poly[key] = res
        if len(self._poly) > self.config.max_poly_entries:
            self._poly.popitem(last=False)
        return res

    def is_left(self, s: int, z: AffineWeylElement) -> bool:
        return self.group.is_left_descent(s, z)

    def mu(self, x, w) -> int:
        G = self.group
        x, w = G.coerce(x), G.coerce(w)
        d = w.length - x.length - 1
        if d < 0 or d % 2:
            return 0
        return self._p(x, w).coeff(d // 2)


def kl_polynomial(session: KLSession, x, w) -> IntPoly:
    """P_{x,w} via the standard recursion on left descents, memoized in the session."""
    return session.poly(x, w)


def mu_coefficient(session: KLSession, x, w) -> int:
    """Coefficient of q^((l(w)-l(x)-1)/2) in P_{x,w}, or 0 when that is not an integer."""
    return session.mu(x, w)


def kl_polynomial_oracle(x: AffineWeylElement, w: AffineWeylElement) -> IntPoly:
    """Independent check: plain recursion on right descents, no memo, no Bruhat tests.

    The recursion itself returns 0 when x is not below w.  Exponential; meant
    for short elements only.
    """
    G = w.group
    x = G.coerce(x)

    def subword_products(v):
        out = {G.identity}
        for s in v.word:
            out |= {G.mul(z, G.gen(s)) for z in out}
        return out

    def P(x, w):
        if w.length == 0:
            return ONE if x.length == 0 else ZERO
        if x.length > w.length:
            return ZERO
        s = w.word[-1]
        gs = G.gen(s)
        v = G.mul(w, gs)
        xs = G.mul(x, gs)
        c = 1 if xs.length < x.length else 0
        res = P(xs, v).shift(1 - c) + P(x, v).shift(c)
        lw = w.length
        for z in subword_products(v):
            d = v.length - z.length - 1
            if d < 0 or d % 2 or z.length < x.length:
                continue
            if G.length(G.mul(z, gs)) > z.length:
                continue
            m = P(z, v).coeff(d // 2)
            if m:
                res = res - P(x, z).scale(m).shift((lw - z.length) // 2)
        return res

    return P(x, w)
