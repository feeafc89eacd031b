"""Modular linear algebra, Chinese remaindering and rational reconstruction."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Sequence

import gmpy2
import numpy as np

# products of two residues below this bound fit in a signed 64-bit word
NUMPY_PRIME_LIMIT = 1 << 31


class BadPrimeError(ValueError):
    """A prime is unusable for the requested modular computation."""


def is_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n, 50))


def primes_below(bound: int) -> Iterator[int]:
    """Odd primes in descending order, strictly below ``bound``."""
    n = bound - 1
    while n > 2:
        if is_prime(n):
            yield n
        n -= 1


def primes_from(start: int = 3) -> Iterator[int]:
    """Primes in ascending order, starting at ``start``."""
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


def guessing_primes() -> Iterator[int]:
    """Fixed prime stream for the modular guessing pipeline (just below 2^31)."""
    return primes_below(NUMPY_PRIME_LIMIT)


# -- linear algebra ---------------------------------------------------------

def _rref_numpy(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = a % p
    m, n = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), -1, p)
        a[row, col:] = (a[row, col:] * inv) % p
        factors = a[:, col].copy()
        factors[row] = 0
        rows = np.flatnonzero(factors)
        if rows.size:
            sub = a[rows, col:] - (factors[rows, None] * a[row, col:][None, :]) % p
            a[rows, col:] = sub % p
        pivots.append(col)
        row += 1
    return a, pivots


def _rref_python(a: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    a = [[x % p for x in r] for r in a]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        piv = next((i for i in range(row, m) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = pow(a[row][col], -1, p)
        a[row] = [(x * inv) % p for x in a[row]]
        prow = a[row]
        for i in range(m):
            f = a[i][col]
            if i != row and f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], prow)]
        pivots.append(col)
        row += 1
    return a, pivots


def rref_mod(a, p: int):
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    if p < NUMPY_PRIME_LIMIT:
        arr = np.array(a, dtype=object) % p if not isinstance(a, np.ndarray) else a
        arr = np.asarray(arr, dtype=np.int64)
        if arr.ndim != 2:
            arr = arr.reshape(len(a), -1)
        r, piv = _rref_numpy(arr.copy(), p)
        return r, piv
    r, piv = _rref_python([[int(x) for x in row] for row in a], p)
    return r, piv


def nullspace_mod(a, p: int, ncols: int | None = None) -> list[list[int]]:
    """Basis of the right kernel {x : A x = 0} over F_p.

    One vector per free column (ascending), each scaled so its first nonzero entry is 1.
    """
    if len(a) == 0:
        if ncols is None:
            raise ValueError("need ncols for an empty matrix")
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    r, pivots = rref_mod(a, p)
    n = len(r[0])
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(pivots):
            if pc > f:
                break
            v[pc] = (-int(r[i][f])) % p
        lead = next(x for x in v if x)
        if lead != 1:
            inv = pow(lead, -1, p)
            v = [(x * inv) % p for x in v]
        basis.append(v)
    return basis


def matvec_mod(a, v: Sequence[int], p: int) -> list[int]:
    return [sum(int(x) * int(y) for x, y in zip(row, v)) % p for row in a]


# -- CRT and reconstruction -------------------------------------------------

def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    if gcd(m1, m2) != 1:
        raise BadPrimeError(f"moduli {m1} and {m2} are not coprime")
    t = ((r2 - r1) * pow(m1, -1, m2)) % m2
    return r1 + m1 * t, m1 * m2


def crt_combine(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """The unique r in [0, prod(moduli)) with r = residues[i] mod moduli[i]."""
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli differ in length")
    r, m = 0, 1
    for ri, mi in zip(residues, moduli):
        r, m = crt_pair(r, m, ri % mi, mi)
    return r % m


def rational_reconstruct(r: int, m: int) -> Fraction | None:
    """Return a/b with a = r*b mod m and |a|, b <= sqrt(m/2), or None if no such pair exists."""
    r %= m
    bound = isqrt(m // 2)
    r0, r1 = m, r
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


def encode_rational(q: Fraction, m: int) -> int:
    return (q.numerator * pow(q.denominator, -1, m)) % m
