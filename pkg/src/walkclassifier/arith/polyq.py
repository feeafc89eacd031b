"""Dense univariate polynomials over the rationals."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import mpmath


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class PolyQ:
    """Polynomial with Fraction coefficients; index i holds the coefficient of x^i.

    The zero polynomial has an empty coefficient tuple. Instances are immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs: tuple[Fraction, ...] = tuple(_trim([_frac(c) for c in coeffs]))

    @classmethod
    def _raw(cls, coeffs: list) -> "PolyQ":
        obj = cls.__new__(cls)
        obj.coeffs = tuple(_trim(coeffs))
        return obj

    @classmethod
    def constant(cls, c) -> "PolyQ":
        return cls([c])

    @classmethod
    def x(cls) -> "PolyQ":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "PolyQ":
        out = cls([1])
        for r in roots:
            out = out * cls([-_frac(r), 1])
        return out

    # basic accessors
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyQ):
            if isinstance(other, (int, Fraction)):
                other = PolyQ([other])
            else:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "PolyQ(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x^{i}")
        return "PolyQ(" + " + ".join(terms) + ")"

    # ring operations
    def __add__(self, other) -> "PolyQ":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "PolyQ":
        return PolyQ._raw([-c for c in self.coeffs])

    def __sub__(self, other) -> "PolyQ":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "PolyQ":
        return _as_poly(other) - self

    def __mul__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PolyQ()
            return PolyQ._raw([c * other for c in self.coeffs])
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyQ()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return PolyQ._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PolyQ":
        out, base = PolyQ([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        other = _as_poly(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = 1 / other.lc
        q = [Fraction(0)] * max(0, len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                f = c * inv
                q[i - db] = f
                for j, cb in enumerate(other.coeffs):
                    rem[i - db + j] -= f * cb
        return PolyQ._raw(q), PolyQ._raw(rem[:db] if db > 0 else [])

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other) -> "PolyQ":
        return self.divmod(other)[0]

    def __mod__(self, other) -> "PolyQ":
        return self.divmod(other)[1]

    def exquo(self, other: "PolyQ") -> "PolyQ":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    # calculus / evaluation
    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, PolyQ) else PolyQ()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "PolyQ":
        return PolyQ._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def taylor_shift(self, a) -> "PolyQ":
        """Return p(x + a)."""
        a = _frac(a)
        c = list(self.coeffs)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return PolyQ._raw(c)

    def reverse(self, n: int | None = None) -> "PolyQ":
        """Return x^n p(1/x), n defaulting to the degree."""
        n = self.degree if n is None else n
        c = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return PolyQ(c[: n + 1][::-1])

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("valuation of zero polynomial")

    # content and normal forms
    def monic(self) -> "PolyQ":
        if not self.coeffs:
            return self
        return self * (1 / self.lc)

    def content(self) -> Fraction:
        """Positive rational c with self / c in Z[x] primitive."""
        if not self.coeffs:
            return Fraction(0)
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        num = reduce(gcd, (c.numerator * (den // c.denominator) for c in self.coeffs), 0)
        return Fraction(num, den)

    def primitive(self) -> "PolyQ":
        """Primitive integer form with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return PolyQ._raw([x / c for x in self.coeffs])

    def int_coeffs(self) -> list[int]:
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError("polynomial has non-integer coefficients")
            out.append(c.numerator)
        return out

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)


def _as_poly(x) -> PolyQ:
    if isinstance(x, PolyQ):
        return x
    return PolyQ([x])


# gcd / factorization helpers ---------------------------------------------

def _int_content(c: Sequence[int]) -> int:
    return reduce(gcd, c, 0)


def _zz_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, cb in enumerate(b):
            r[shift + j] -= c * cb
        _trim(r)
    return r


def poly_gcd(f: PolyQ, g: PolyQ) -> PolyQ:
    """Monic gcd over Q, computed with a primitive remainder sequence in Z[x]."""
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    a, b = f.primitive().int_coeffs(), g.primitive().int_coeffs()
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _zz_prem(a, b)
        if r:
            c = _int_content(r)
            r = [x // c for x in r]
        a, b = b, r
    return PolyQ(a).monic()


def poly_lcm(f: PolyQ, g: PolyQ) -> PolyQ:
    return (f * g).exquo(poly_gcd(f, g)).monic()


def squarefree_decomposition(f: PolyQ) -> list[tuple[PolyQ, int]]:
    """Yun's algorithm: list of (monic squarefree factor, multiplicity), constants dropped."""
    if f.degree < 1:
        return []
    f = f.monic()
    out = []
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f.exquo(a)
    c = fp.exquo(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b.exquo(g)
        c = d.exquo(g)
        d = c - b.derivative()
        i += 1
    return out


def multiplicity(f: PolyQ, m: PolyQ) -> int:
    """Largest k with m^k dividing f (f nonzero, m nonconstant)."""
    if not f:
        raise ValueError("multiplicity in the zero polynomial")
    k = 0
    while True:
        q, r = f.divmod(m)
        if r:
            return k
        f, k = q, k + 1


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


_DIVISOR_LIMIT = 10**12


def _root_candidates(h: list[int]) -> set[Fraction]:
    """Candidates p/q with p | h[0] and q | h[-1].

    Small end coefficients are enumerated by divisors. Otherwise the real roots are
    located numerically and expanded in continued fractions; every rational root a/b
    then shows up as a convergent, since its denominator divides h[-1].
    """
    if max(abs(h[0]), abs(h[-1])) <= _DIVISOR_LIMIT:
        out = set()
        for p in _divisors(h[0]):
            for q in _divisors(h[-1]):
                out.add(Fraction(p, q))
                out.add(Fraction(-p, q))
        return out
    digits = len(str(abs(h[-1])))
    out = set()
    with mpmath.workdps(2 * digits + 30):
        try:
            roots = mpmath.polyroots(h[::-1], maxsteps=400, extraprec=4 * digits + 60)
        except mpmath.libmp.NoConvergence:
            return out
        for z in roots:
            if abs(mpmath.im(z)) > mpmath.mpf(10) ** (-digits - 10) * (1 + abs(z)):
                continue
            out.update(_convergents(mpmath.re(z), h[-1]))
    return out


def _convergents(x, lead: int, terms: int = 200) -> list[Fraction]:
    out = []
    p0, q0, p1, q1 = 0, 1, 1, 0
    for _ in range(terms):
        a = int(mpmath.floor(x))
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > abs(lead):
            break
        if lead % q1 == 0:
            out.append(Fraction(p1, q1))
        frac = x - a
        if not frac:
            break
        x = 1 / frac
    return out


def rational_roots(f: PolyQ) -> list[Fraction]:
    """All rational roots of f, repeated according to multiplicity, in ascending order."""
    if not f:
        raise ValueError("rational_roots of the zero polynomial")
    roots: list[Fraction] = []
    g = f.primitive()
    v = 0
    while g.coeffs and g.coeffs[0] == 0:
        g = PolyQ._raw(list(g.coeffs[1:]))
        v += 1
    roots.extend([Fraction(0)] * v)
    # work on the squarefree part for candidate search, then count multiplicities
    for factor, mult in squarefree_decomposition(g):
        h = factor.primitive().int_coeffs()
        if len(h) == 1:
            continue
        for c in _root_candidates(h):
            if factor(c) == 0:
                roots.extend([c] * mult)
    return sorted(roots)


def remove_rational_roots(f: PolyQ) -> tuple[list[Fraction], PolyQ]:
    """Split f into its rational roots (with multiplicity) and the cofactor without rational roots."""
    roots = rational_roots(f)
    g = f
    for r in roots:
        g = g.exquo(PolyQ([-r, 1]))
    return roots, g


def falling_factorial_poly(k: int) -> PolyQ:
    """x (x-1) ... (x-k+1) as a polynomial in x."""
    return PolyQ.from_roots(range(k))
