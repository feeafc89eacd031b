"""Bivariate polynomials over Q and resultants by subresultant elimination."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from .polyq import PolyQ, poly_gcd


class PolyQ2:
    """P(T, t) = sum_k rows[k](t) T^k, with rows[k] a PolyQ in t.

    ``table[k][j]`` is the coefficient of T^k t^j. Trailing zero rows are dropped.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[PolyQ]):
        rows = [r if isinstance(r, PolyQ) else PolyQ(r) for r in rows]
        while rows and not rows[-1]:
            rows.pop()
        self.rows: tuple[PolyQ, ...] = tuple(rows)

    @classmethod
    def from_table(cls, table: Sequence[Sequence]) -> "PolyQ2":
        return cls([PolyQ(r) for r in table])

    @property
    def degree_T(self) -> int:
        return len(self.rows) - 1

    @property
    def degree_t(self) -> int:
        return max((r.degree for r in self.rows if r), default=-1)

    def __bool__(self) -> bool:
        return bool(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyQ2) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"PolyQ2({[list(map(str, r.coeffs)) for r in self.rows]})"

    def table(self) -> list[list[Fraction]]:
        w = self.degree_t + 1
        return [[r[j] for j in range(w)] for r in self.rows]

    def primitive(self) -> "PolyQ2":
        """Scale to integer coefficients with content 1 and positive leading coefficient.

        The leading coefficient is that of the highest t-power in the highest T-row.
        """
        if not self.rows:
            return self
        coeffs = [c for r in self.rows for c in r.coeffs]
        den = reduce(lcm, (c.denominator for c in coeffs), 1)
        num = reduce(gcd, (c.numerator * (den // c.denominator) for c in coeffs), 0)
        scale = Fraction(den, num)
        if self.rows[-1].lc < 0:
            scale = -scale
        return PolyQ2([r * scale for r in self.rows])

    def eval_T(self, value):
        """Horner evaluation in T; value may be a PolyQ or a scalar."""
        acc = PolyQ()
        for r in reversed(self.rows):
            acc = acc * value + r
        return acc

    def swap(self) -> "PolyQ2":
        """Exchange the roles of the two variables."""
        w = self.degree_t + 1
        return PolyQ2([PolyQ([r[j] for r in self.rows]) for j in range(w)])


# -- polynomials over Q[x] viewed as univariate in s ------------------------

def _lc(a: list[PolyQ]) -> PolyQ:
    return a[-1]


def _trim(a: list[PolyQ]) -> list[PolyQ]:
    while a and not a[-1]:
        a.pop()
    return a


def _prem(a: list[PolyQ], b: list[PolyQ]) -> list[PolyQ]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) a mod b, coefficients in Q[x]."""
    r = list(a)
    db = len(b) - 1
    lb = _lc(b)
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, cb in enumerate(b):
            r[shift + j] = r[shift + j] - c * cb
        _trim(r)
        e -= 1
    if e > 0:
        f = lb ** e
        r = [x * f for x in r]
    return r


def subresultant_resultant(a: list[PolyQ], b: list[PolyQ]) -> PolyQ:
    """Res_s(a, b) for a, b in (Q[x])[s] given as coefficient lists in s."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a or not b:
        return PolyQ()
    da, db = len(a) - 1, len(b) - 1
    if da == 0:
        return _lc(a) ** db
    if db == 0:
        return _lc(b) ** da
    sign = 1
    if da < db:
        a, b = b, a
        if da % 2 == 1 and db % 2 == 1:
            sign = -1
    g = PolyQ([1])
    h = PolyQ([1])
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        r = _prem(a, b)
        a = b
        if not r:
            return PolyQ()
        div = g * h ** delta
        b = [c.exquo(div) for c in r]
        g = _lc(a)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exquo(h ** (delta - 1))
        if len(b) - 1 <= 0:
            break
    da = len(a) - 1
    lb = _lc(b)
    if da == 1:
        res = lb
    else:
        res = (lb ** da).exquo(h ** (da - 1))
    return res * sign


def bivariate_resultant(m: PolyQ, chi: PolyQ2) -> PolyQ:
    """Res_s(m(s), chi(s, x)) as a polynomial in x.

    ``chi.rows[k]`` is the coefficient of s^k, a polynomial in x.
    """
    if m.degree < 1:
        raise ValueError("m must be nonconstant")
    if not chi:
        raise ValueError("chi must be nonzero")
    ma = [PolyQ([c]) for c in m.coeffs]
    return subresultant_resultant(ma, list(chi.rows))


def sylvester_resultant(a: list[PolyQ], b: list[PolyQ]) -> PolyQ:
    """Resultant as the Sylvester determinant (cofactor-free Bareiss); used as an oracle."""
    a, b = _trim(list(a)), _trim(list(b))
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    if size == 0:
        return PolyQ([1])
    rows = []
    for i in range(n):
        rows.append([PolyQ()] * i + a[::-1] + [PolyQ()] * (size - m - 1 - i))
    for i in range(m):
        rows.append([PolyQ()] * i + b[::-1] + [PolyQ()] * (size - n - 1 - i))
    sign = 1
    prev = PolyQ([1])
    mat = [list(r) for r in rows]
    for k in range(size - 1):
        if not mat[k][k]:
            swap = next((i for i in range(k + 1, size) if mat[i][k]), None)
            if swap is None:
                return PolyQ()
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]).exquo(prev)
        prev = mat[k][k]
    return mat[size - 1][size - 1] * sign


def bivariate_gcd_T(f: PolyQ2, g: PolyQ2) -> PolyQ2:
    """gcd of f and g in Q(t)[T], made primitive in Z[T, t]."""
    a, b = list(f.rows), list(g.rows)
    if len(a) < len(b):
        a, b = b, a
    a, b = _prim_T(a), _prim_T(b)
    while b:
        r = _prem(a, b)
        _trim(r)
        a, b = b, _prim_T(r) if r else r
    return PolyQ2(a).primitive()


def _prim_T(a: list[PolyQ]) -> list[PolyQ]:
    """Divide out the gcd in Q[t] of the coefficients."""
    if not a:
        return a
    g = reduce(poly_gcd, a[1:], a[0].monic())
    if g.degree > 0:
        a = [c.exquo(g) for c in a]
    return a
