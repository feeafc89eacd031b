"""Linear differential operators in Q[t]<D_t> and recurrence operators in Q[n]<S_n>."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, gcd, lcm
from typing import Sequence

from ..arith.polyq import PolyQ, poly_gcd


class RatFuncQ:
    """Element of Q(t): numerator / monic denominator in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyQ, den: PolyQ | None = None):
        if den is None:
            den = PolyQ([1])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = PolyQ(), PolyQ([1])
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exquo(g), den.exquo(g)
        c = den.lc
        self.num, self.den = num * (1 / c), den * (1 / c)

    @classmethod
    def lift(cls, x) -> "RatFuncQ":
        if isinstance(x, RatFuncQ):
            return x
        if isinstance(x, PolyQ):
            return cls(x)
        return cls(PolyQ([x]))

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        other = RatFuncQ.lift(other)
        return self.num == other.num and self.den == other.den

    def __repr__(self) -> str:
        return f"RatFuncQ({self.num!r} / {self.den!r})"

    def __add__(self, other) -> "RatFuncQ":
        other = RatFuncQ.lift(other)
        if self.den == other.den:
            return RatFuncQ(self.num + other.num, self.den)
        return RatFuncQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFuncQ":
        return RatFuncQ(-self.num, self.den)

    def __sub__(self, other) -> "RatFuncQ":
        return self + (-RatFuncQ.lift(other))

    def __mul__(self, other) -> "RatFuncQ":
        other = RatFuncQ.lift(other)
        return RatFuncQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFuncQ":
        other = RatFuncQ.lift(other)
        if not other:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFuncQ(self.num * other.den, self.den * other.num)

    def derivative(self) -> "RatFuncQ":
        return RatFuncQ(self.num.derivative() * self.den - self.num * self.den.derivative(),
                        self.den * self.den)


def _derivative(c):
    return c.derivative()


def ore_mul(a: Sequence, b: Sequence, zero) -> list:
    """Product in the Weyl algebra; a, b are coefficient lists (index = power of D_t).

    Uses D^i f = sum_k binom(i, k) f^(k) D^(i-k).
    """
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if not bj:
            continue
        derivs = [bj]
        for _ in range(len(a) - 1):
            derivs.append(_derivative(derivs[-1]))
        for i, ai in enumerate(a):
            if not ai:
                continue
            for k in range(i + 1):
                dk = derivs[k]
                if dk:
                    out[i - k + j] = out[i - k + j] + ai * dk * comb(i, k)
    while out and not out[-1]:
        out.pop()
    return out


def _poly_content_int(coeffs: Sequence[PolyQ]) -> Fraction:
    vals = [c for p in coeffs for c in p.coeffs]
    if not vals:
        return Fraction(0)
    den = reduce(lcm, (v.denominator for v in vals), 1)
    num = reduce(gcd, (v.numerator * (den // v.denominator) for v in vals), 0)
    return Fraction(num, den)


class DiffOp:
    """L = sum_i c_i(t) D_t^i with polynomial coefficients over Q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [c if isinstance(c, PolyQ) else PolyQ(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[PolyQ, ...] = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max((c.degree for c in self.coeffs if c), default=-1)

    @property
    def lc(self) -> PolyQ:
        return self.coeffs[-1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.order, self.degree

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffOp) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"DiffOp(order={self.order}, degree={self.degree})"

    def __mul__(self, other: "DiffOp") -> "DiffOp":
        return DiffOp(ore_mul(self.coeffs, other.coeffs, PolyQ()))

    def __add__(self, other: "DiffOp") -> "DiffOp":
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self._c(i) + other._c(i) for i in range(n)])

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self._c(i) - other._c(i) for i in range(n)])

    def _c(self, i: int) -> PolyQ:
        return self.coeffs[i] if i < len(self.coeffs) else PolyQ()

    def normalized(self) -> "DiffOp":
        """Primitive over Z with positive leading coefficient of c_r."""
        if not self.coeffs:
            return self
        c = _poly_content_int(self.coeffs)
        if self.lc.lc < 0:
            c = -c
        return DiffOp([p * (1 / c) for p in self.coeffs])

    def remove_content(self) -> "DiffOp":
        """Divide by the gcd in Q[t] of all coefficients, then normalize."""
        if not self.coeffs:
            return self
        g = reduce(poly_gcd, (c for c in self.coeffs if c))
        if g.degree > 0:
            return DiffOp([c.exquo(g) for c in self.coeffs]).normalized()
        return self.normalized()

    def int_coeffs(self) -> list[list[int]]:
        return [c.int_coeffs() for c in self.coeffs]

    # serialization
    def to_json(self) -> dict:
        return {"order": self.order, "degree": self.degree,
                "coeffs": [[str(x) for x in c.coeffs] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "DiffOp":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls([PolyQ([Fraction(x) for x in c]) for c in obj["coeffs"]])


def d_op() -> DiffOp:
    return DiffOp([PolyQ(), PolyQ([1])])


def apply_diffop(L: DiffOp, series: Sequence, N: int | None = None) -> list:
    """Coefficients of L(S) mod t^(N - r), the part determined by the first N terms."""
    s = list(series[: N] if N is not None else series)
    N = len(s)
    r = L.order
    if N <= r:
        raise ValueError(f"need more than {r} terms to apply an order-{r} operator")
    # u[i][m] = m (m-1) ... (m-i+1) s_m
    u = []
    for i in range(r + 1):
        row = []
        for m in range(N):
            f = 1
            for k in range(i):
                f *= m - k
            row.append(f * s[m])
        u.append(row)
    coeffs = []
    for c in L.coeffs:
        coeffs.append([(a, x.numerator if x.denominator == 1 else x)
                       for a, x in enumerate(c.coeffs) if x])
    out = []
    for k in range(N - r):
        acc = 0
        for i, ci in enumerate(coeffs):
            ui = u[i]
            for a, x in ci:
                m = k - a + i
                if m >= 0:
                    acc += x * ui[m]
        out.append(acc)
    return out


@dataclass(frozen=True)
class RecOp:
    """sum_k p_k(n) a_{n+k} = 0 with p_k in Q[n]."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        cs = [c if isinstance(c, PolyQ) else PolyQ(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max((c.degree for c in self.coeffs if c), default=-1)

    @property
    def shape(self) -> tuple[int, int]:
        return self.order, self.degree

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def normalized(self) -> "RecOp":
        if not self.coeffs:
            return self
        c = _poly_content_int(self.coeffs)
        if self.coeffs[-1].lc < 0:
            c = -c
        return RecOp([p * (1 / c) for p in self.coeffs])

    def to_json(self) -> dict:
        return {"order": self.order, "degree": self.degree,
                "coeffs": [[str(x) for x in c.coeffs] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "RecOp":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls([PolyQ([Fraction(x) for x in c]) for c in obj["coeffs"]])


def apply_recop(R: RecOp, a: Sequence) -> list:
    """Residuals sum_k p_k(n) a_{n+k} for n = 0 .. len(a) - order - 1."""
    s = R.order
    polys = [[(j, x.numerator if x.denominator == 1 else x) for j, x in enumerate(p.coeffs) if x]
             for p in R.coeffs]
    out = []
    for n in range(len(a) - s):
        acc = 0
        npow = [1]
        for k, pk in enumerate(polys):
            if not pk:
                continue
            v = 0
            for j, x in pk:
                while len(npow) <= j:
                    npow.append(npow[-1] * n)
                v += x * npow[j]
            acc += v * a[n + k]
        out.append(acc)
    return out


def _falling_shifted(i: int, k: int) -> PolyQ:
    """(n + k)(n + k - 1) ... (n + k - i + 1) as a polynomial in n."""
    out = PolyQ([1])
    for j in range(i):
        out = out * PolyQ([k - j, 1])
    return out


def ode_to_rec(L: DiffOp) -> RecOp:
    """Recurrence satisfied by the coefficients of every power-series solution of L.

    t^a D^i acts on sum s_m t^m as s_{n-a+i} (n-a+i)^(i falling) at index n; shifting
    n by the degree d makes all index offsets nonnegative.
    """
    d = L.degree
    r = L.order
    if r < 0:
        raise ValueError("zero operator")
    terms: dict[int, PolyQ] = {}
    for i, c in enumerate(L.coeffs):
        for a, x in enumerate(c.coeffs):
            if not x:
                continue
            k = d - a + i
            terms[k] = terms.get(k, PolyQ()) + _falling_shifted(i, k) * x
    lo = min(k for k, v in terms.items() if v)
    hi = max(k for k, v in terms.items() if v)
    # drop vanishing low shifts: substitute n -> n - lo (valid since the relation holds for n >= -d)
    coeffs = []
    for k in range(lo, hi + 1):
        p = terms.get(k, PolyQ())
        coeffs.append(p.taylor_shift(-lo) if lo else p)
    return RecOp(coeffs).normalized()


# -- Euclidean structure over Q(t) -----------------------------------------------

@dataclass
class OreQt:
    """Operator with coefficients in Q(t), used for exact right division."""

    coeffs: list

    @classmethod
    def lift(cls, L: DiffOp) -> "OreQt":
        return cls([RatFuncQ(c) for c in L.coeffs])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "OreQt") -> "OreQt":
        return OreQt(ore_mul(self.coeffs, other.coeffs, RatFuncQ(PolyQ())))

    def __add__(self, other: "OreQt") -> "OreQt":
        n = max(len(self.coeffs), len(other.coeffs))
        zero = RatFuncQ(PolyQ())
        out = [(self.coeffs[i] if i < len(self.coeffs) else zero)
               + (other.coeffs[i] if i < len(other.coeffs) else zero) for i in range(n)]
        while out and not out[-1]:
            out.pop()
        return OreQt(out)

    def __eq__(self, other) -> bool:
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def to_diffop(self) -> DiffOp:
        """Clear denominators (left multiplication by a polynomial) and normalize."""
        if not self.coeffs:
            return DiffOp([])
        den = PolyQ([1])
        for c in self.coeffs:
            den = den * c.den.exquo(poly_gcd(den, c.den))
        return DiffOp([c.num * den.exquo(c.den) for c in self.coeffs]).remove_content()


def right_divmod(A: DiffOp | OreQt, B: DiffOp | OreQt) -> tuple[OreQt, OreQt]:
    """A = Q B + R over Q(t) with order(R) < order(B)."""
    A = A if isinstance(A, OreQt) else OreQt.lift(A)
    B = B if isinstance(B, OreQt) else OreQt.lift(B)
    if not B.coeffs:
        raise ZeroDivisionError("right division by the zero operator")
    zero = RatFuncQ(PolyQ())
    R = OreQt(list(A.coeffs))
    Q = [zero] * max(0, R.order - B.order + 1)
    lb = B.coeffs[-1]
    while R.coeffs and R.order >= B.order:
        k = R.order - B.order
        f = R.coeffs[-1] / lb
        Q[k] = Q[k] + f
        term = OreQt([zero] * k + [f]) * B
        neg = OreQt([-c for c in term.coeffs])
        R = R + neg
        # the leading term cancels exactly
        while R.coeffs and not R.coeffs[-1]:
            R.coeffs.pop()
    while Q and not Q[-1]:
        Q.pop()
    return OreQt(Q), R


def _pseudo_rem(a: list[PolyQ], b: list[PolyQ]) -> list[PolyQ]:
    """Polynomial pseudo-remainder: lc(b)^k a - Q b with order < order(b)."""
    zero = PolyQ()
    lb = b[-1]
    while a and len(a) >= len(b):
        k = len(a) - len(b)
        la = a[-1]
        shifted = ore_mul([zero] * k + [la], b, zero)
        a = [x * lb for x in a]
        for i, c in enumerate(shifted):
            a[i] = a[i] - c
        while a and not a[-1]:
            a.pop()
        a = _primitive_coeffs(a)
    return a


def _primitive_coeffs(a: list[PolyQ]) -> list[PolyQ]:
    if not a:
        return a
    g = reduce(poly_gcd, (c for c in a if c))
    if g.degree > 0:
        a = [c.exquo(g) for c in a]
    c = _poly_content_int(a)
    return [x * (1 / c) for x in a]


def gcrd(A: DiffOp, B: DiffOp) -> DiffOp:
    """Greatest common right divisor, normalized (content-free, primitive over Z)."""
    a, b = list(A.coeffs), list(B.coeffs)
    if not a and not b:
        raise ValueError("gcrd of two zero operators")
    if len(a) < len(b):
        a, b = b, a
    a, b = _primitive_coeffs(a), _primitive_coeffs(b)
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, r
    return DiffOp(a).remove_content()
