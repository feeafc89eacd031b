from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from walkclassifier.arith import (
    PolyMod,
    PolyQ,
    PolyQ2,
    bivariate_resultant,
    crt_combine,
    encode_rational,
    nullspace_mod,
    poly_gcd,
    rational_reconstruct,
    rational_roots,
    squarefree_decomposition,
)
from walkclassifier.arith.modular import guessing_primes, is_prime, rref_mod

t = PolyQ.x()


# -- nullspace -------------------------------------------------------------------

def test_nullspace_forces_equal_coordinates():
    basis = nullspace_mod([[1, 4]], 5)
    assert len(basis) == 1
    v = basis[0]
    assert (v[0] + 4 * v[1]) % 5 == 0 and v[0] % 5 == v[1] % 5


def test_nullspace_of_identity_is_empty():
    assert nullspace_mod(np.eye(3, dtype=np.int64), 7) == []


def test_nullspace_rank_deficient():
    A = [[1, 2, 3], [2, 4, 6]]
    basis = nullspace_mod(A, 101)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(a * x for a, x in zip(row, v)) % 101 == 0 for row in A)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 12), min_size=5, max_size=5), min_size=1, max_size=6))
def test_nullspace_rank_plus_nullity(rows):
    p = 13
    basis = nullspace_mod(rows, p, ncols=5)
    for v in basis:
        assert all(sum(a * x for a, x in zip(r, v)) % p == 0 for r in rows)
    _, pivots = rref_mod(rows, p)
    assert len(pivots) + len(basis) == 5


# -- CRT and reconstruction ------------------------------------------------------------

def test_crt_small_examples():
    assert crt_combine([2, 3], [3, 5]) == 8
    assert crt_combine([0, 0], [7, 11]) == 0
    assert crt_combine([1], [97]) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**4), st.sampled_from([(7, 11), (13, 17, 19), (3, 5, 7, 11), (97, 101)]))
def test_crt_matches_exhaustive_search(x, moduli):
    M = int(np.prod(moduli))
    x %= M
    got = crt_combine([x % m for m in moduli], list(moduli))
    assert got == next(y for y in range(M) if all(y % m == x % m for m in moduli))


def test_rational_reconstruct_examples():
    assert rational_reconstruct(65, 97) == Fraction(1, 3)
    assert rational_reconstruct(0, 101) == 0
    p = next(guessing_primes()) * ((1 << 61) - 1)
    assert rational_reconstruct(encode_rational(Fraction(-5, 7), p), p) == Fraction(-5, 7)


@settings(max_examples=100, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rational_reconstruct_round_trip(a, b):
    M = (1 << 61) - 1  # prime
    q = Fraction(a, b)
    if max(abs(q.numerator), q.denominator) ** 2 * 2 <= M:
        assert rational_reconstruct(encode_rational(q, M), M) == q


def test_guessing_primes_descend_and_are_prime():
    ps = [p for p, _ in zip(guessing_primes(), range(5))]
    assert ps == sorted(ps, reverse=True)
    assert all(is_prime(p) for p in ps)


# -- univariate polynomials ------------------------------------------------------------

def test_rational_roots_of_indicial_polynomial():
    f = t * (t - 1) * (t - 2) * (2 * t - 1)
    assert sorted(rational_roots(f)) == [0, Fraction(1, 2), 1, 2]


def test_rational_roots_none_and_repeated():
    assert rational_roots(t * t + 1) == []
    assert rational_roots((3 * t - 1) ** 3) == [Fraction(1, 3)] * 3


def test_squarefree_decomposition():
    f = (t - 1) ** 2 * (t * t + 1)
    parts = {k: g.monic() for g, k in squarefree_decomposition(f)}
    assert parts[1] == (t * t + 1).monic() and parts[2] == (t - 1).monic()


small_polys = st.lists(st.integers(-6, 6), min_size=1, max_size=5).map(PolyQ)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_gcd_divides_both(a, b, c):
    f, g = a * c, b * c
    if not f or not g:
        return
    d = poly_gcd(f, g)
    assert not f.divmod(d)[1] and not g.divmod(d)[1]
    if c:
        assert not d.divmod(c.monic())[1] or c.degree == 0


# -- resultants ------------------------------------------------------------------------

def _chi(*rows):
    return PolyQ2([PolyQ(list(r)) for r in rows])


def test_resultant_evaluation():
    # chi(s, x) = x - s as rows in powers of s: [x, -1]
    r = bivariate_resultant(PolyQ([-2, 1]), _chi([0, 1], [-1]))
    assert r.monic() == PolyQ([-2, 1])


def test_resultant_conjugates():
    r = bivariate_resultant(PolyQ([-2, 0, 1]), _chi([0, 1], [-1]))
    assert r.monic() == PolyQ([-2, 0, 1])


def test_resultant_constant_in_s():
    r = bivariate_resultant(PolyQ([1, 1, 1]), _chi([0, 1]))
    assert r.monic() == PolyQ([0, 0, 1])


# -- polynomials mod p --------------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 100), max_size=8), st.lists(st.integers(0, 100), max_size=8))
def test_polymod_product_matches_schoolbook(a, b):
    p = 101
    got = (PolyMod(a, p) * PolyMod(b, p)).tolist()
    want = [0] * max(len(a) + len(b) - 1, 0)
    for (i, x), (j, y) in product(enumerate(a), enumerate(b)):
        want[i + j] = (want[i + j] + x * y) % p
    while want and not want[-1]:
        want.pop()
    assert got == want


def test_rational_roots_with_huge_coefficients():
    big = 10**15 + 37
    f = PolyQ([-3 * big, 7 * big]) * PolyQ([5, -(10**13 + 1)]) * (t * t + 1)
    assert rational_roots(f) == [Fraction(5, 10**13 + 1), Fraction(3, 7)]
