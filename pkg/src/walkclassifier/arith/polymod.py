"""Polynomials and rational functions over prime fields F_p."""
from __future__ import annotations

from typing import Iterable, Sequence

import gmpy2
import numpy as np

_I64_SAFE = 1 << 62


def conv_mod(a: Sequence[int], b: Sequence[int], p: int) -> np.ndarray:
    """Product of two coefficient vectors mod p (int64 result for p < 2^31, object otherwise)."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return np.zeros(0, dtype=np.int64)
    if p * p * min(la, lb) < _I64_SAFE:
        return np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % p
    return _kronecker_mul(a, b, p)


def _kronecker_mul(a, b, p: int) -> np.ndarray:
    bits = 2 * p.bit_length() + max(la := len(a), len(b)).bit_length() + 1
    width = (bits + 7) // 8
    def pack(v):
        raw = b"".join(int(x).to_bytes(width, "little") for x in v)
        return gmpy2.mpz(int.from_bytes(raw, "little"))
    prod = pack(a) * pack(b)
    n = la + len(b) - 1
    data = int(prod).to_bytes(n * width, "little")
    out = [int.from_bytes(data[i * width:(i + 1) * width], "little") % p for i in range(n)]
    if p < (1 << 31):
        return np.array(out, dtype=np.int64)
    return np.array(out, dtype=object)


def _trim_arr(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    if nz.size == 0:
        return a[:0]
    return a[: nz[-1] + 1]


class PolyMod:
    """Polynomial over F_p with coefficients reduced to [0, p); zero has no coefficients."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs: Iterable[int], p: int):
        self.p = p
        dtype = np.int64 if p < (1 << 31) else object
        arr = np.array([int(c) % p for c in coeffs], dtype=dtype)
        self.coeffs = _trim_arr(arr)

    @classmethod
    def _raw(cls, arr: np.ndarray, p: int) -> "PolyMod":
        obj = cls.__new__(cls)
        obj.p = p
        obj.coeffs = _trim_arr(arr)
        return obj

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return int(self.coeffs[-1]) if len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return len(self.coeffs) > 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = PolyMod([other], self.p)
        return self.p == other.p and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self) -> str:
        return f"PolyMod({[int(c) for c in self.coeffs]}, p={self.p})"

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def _pad_add(self, other: "PolyMod", sign: int) -> "PolyMod":
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n, dtype=self.coeffs.dtype)
        out[: len(self.coeffs)] += self.coeffs
        if sign > 0:
            out[: len(other.coeffs)] += other.coeffs
        else:
            out[: len(other.coeffs)] -= other.coeffs
        return PolyMod._raw(out % self.p, self.p)

    def __add__(self, other: "PolyMod") -> "PolyMod":
        return self._pad_add(other, 1)

    def __sub__(self, other: "PolyMod") -> "PolyMod":
        return self._pad_add(other, -1)

    def __neg__(self) -> "PolyMod":
        return PolyMod._raw((-self.coeffs) % self.p, self.p)

    def __mul__(self, other) -> "PolyMod":
        if isinstance(other, int):
            return PolyMod._raw((self.coeffs * (other % self.p)) % self.p, self.p)
        return PolyMod._raw(conv_mod(self.coeffs, other.coeffs, self.p), self.p)

    __rmul__ = __mul__

    def scale(self, c: int) -> "PolyMod":
        return self * c

    def derivative(self) -> "PolyMod":
        n = len(self.coeffs)
        if n <= 1:
            return PolyMod._raw(self.coeffs[:0], self.p)
        k = np.arange(1, n, dtype=np.int64) % self.p
        return PolyMod._raw((self.coeffs[1:] * k) % self.p, self.p)

    def divmod(self, other: "PolyMod") -> tuple["PolyMod", "PolyMod"]:
        if not other:
            raise ZeroDivisionError("division by zero polynomial mod p")
        p = self.p
        rem = [int(c) for c in self.coeffs]
        b = [int(c) for c in other.coeffs]
        db = len(b) - 1
        inv = pow(b[-1], -1, p)
        q = [0] * max(0, len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] % p
            if c:
                f = (c * inv) % p
                q[i - db] = f
                for j in range(db + 1):
                    rem[i - db + j] = (rem[i - db + j] - f * b[j]) % p
        return PolyMod(q, p), PolyMod(rem[:db], p)

    def __mod__(self, other) -> "PolyMod":
        return self.divmod(other)[1]

    def __floordiv__(self, other) -> "PolyMod":
        return self.divmod(other)[0]

    def monic(self) -> "PolyMod":
        if not self:
            return self
        return self * pow(self.lc, -1, self.p)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + int(c)) % self.p
        return acc


def polymod_gcd(a: PolyMod, b: PolyMod) -> PolyMod:
    while b:
        a, b = b, a % b
    return a.monic()


class RatFuncMod:
    """Element of F_p(t) stored as numerator / monic denominator in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyMod, den: PolyMod | None = None, reduce: bool = True):
        p = num.p
        if den is None:
            den = PolyMod([1], p)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce and num:
            g = polymod_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        elif not num:
            den = PolyMod([1], p)
        c = pow(den.lc, -1, p)
        self.num, self.den = num * c, den * c

    @property
    def p(self) -> int:
        return self.num.p

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        return self.num == other.num and self.den == other.den

    def __repr__(self) -> str:
        return f"RatFuncMod({self.num.tolist()} / {self.den.tolist()}, p={self.p})"

    def __add__(self, other: "RatFuncMod") -> "RatFuncMod":
        return RatFuncMod(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFuncMod") -> "RatFuncMod":
        return RatFuncMod(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFuncMod":
        return RatFuncMod(-self.num, self.den, reduce=False)

    def __mul__(self, other: "RatFuncMod") -> "RatFuncMod":
        return RatFuncMod(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFuncMod") -> "RatFuncMod":
        if not other:
            raise ZeroDivisionError("division by zero in F_p(t)")
        return RatFuncMod(self.num * other.den, self.den * other.num)

    def derivative(self) -> "RatFuncMod":
        return RatFuncMod(self.num.derivative() * self.den - self.num * self.den.derivative(),
                          self.den * self.den)
