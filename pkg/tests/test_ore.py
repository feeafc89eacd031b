from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kreweras_data import EXPECTED_EXPONENTS, L11, REC6
from walkclassifier.arith import PolyQ
from walkclassifier.arith.modular import BadPrimeError
from walkclassifier.ore import (
    DiffOp,
    OreQt,
    Place,
    RecOp,
    apply_diffop,
    apply_recop,
    char_poly_mod,
    d_op,
    gcrd,
    indicial,
    is_regular_singular,
    ode_to_rec,
    p_curvature,
    right_divmod,
    singular_points,
)
from walkclassifier.arith.polymod import PolyMod, RatFuncMod
from walkclassifier.fixtures import KREWERAS_TERMS
from walkclassifier.walks import expand_counts, parse_steps

t = PolyQ.x()
ONE = PolyQ([1])
D = d_op()
KREW100 = expand_counts(parse_steps("W,S,NE"), 100).terms


def op(*cs):
    return DiffOp([PolyQ(c) if isinstance(c, list) else c for c in cs])


GEOM = op([-1], [1, -1])  # (1 - t) D - 1
# Gauss operator with a = b = c = 1/3
HYPER = op(-Fraction(1, 9) * ONE, Fraction(1, 3) - Fraction(5, 3) * t, t * (1 - t))


# -- application -----------------------------------------------------------------

def test_geometric_series_annihilated():
    assert not any(apply_diffop(GEOM, [1] * 50))


def test_kreweras_operator_annihilates():
    assert not any(apply_diffop(L11, KREW100))
    assert not any(apply_recop(REC6, KREW100))


def test_derivative_kills_constants():
    assert not any(apply_diffop(D, [7] + [0] * 20))


def test_apply_requires_more_terms_than_order():
    with pytest.raises(ValueError):
        apply_diffop(L11, KREW100[:4])


# -- recurrences from ODEs ------------------------------------------------------------

def test_ode_to_rec_geometric():
    R = ode_to_rec(GEOM)
    assert R.order == 1 and not any(apply_recop(R, [1] * 30))
    assert R.coeffs[0] == -R.coeffs[1]


def test_ode_to_rec_derivative():
    R = ode_to_rec(D)
    assert R.order == 0 or not any(apply_recop(R, [5] + [0] * 10))


def test_ode_to_rec_kreweras_annihilates():
    R = ode_to_rec(L11)
    assert not any(apply_recop(R, KREW100))


def test_normalization_convention():
    L = DiffOp([PolyQ([Fraction(-3, 2)]), PolyQ([0, Fraction(-1, 2)])]).normalized()
    assert L.coeffs == (PolyQ([3]), PolyQ([0, 1]))


def test_json_round_trip():
    assert DiffOp.from_json(L11.to_json()) == L11
    assert RecOp.from_json(REC6.to_json()) == REC6


# -- division and gcrd -------------------------------------------------------------------


def test_right_division_by_itself():
    Q, R = right_divmod(L11, L11)
    assert Q == OreQt.lift(DiffOp([ONE])) and not R.coeffs


def test_right_division_d_squared():
    Q, R = right_divmod(D * D, op([-1], [1]))
    assert Q == OreQt.lift(op([1], [1]))
    assert R == OreQt.lift(op([1]))


def test_right_division_t_d():
    Q, R = right_divmod(op([0], [0, 1]), D)
    assert Q == OreQt.lift(op([0, 1])) and not R.coeffs


small_poly = st.lists(st.integers(-3, 3), min_size=1, max_size=4).map(PolyQ)
small_op = st.lists(small_poly, min_size=1, max_size=4).map(DiffOp).filter(lambda L: L.order >= 0)


@settings(max_examples=30, deadline=None)
@given(small_op, small_op.filter(lambda B: B.order >= 1))
def test_right_divmod_reconstructs(A, B):
    Q, R = right_divmod(A, B)
    assert Q * OreQt.lift(B) + R == OreQt.lift(A)
    assert R.order < B.order


def test_gcrd_examples():
    assert gcrd(L11, L11) == L11.remove_content()
    A, B = op([1], [0, 1]), op([0, 2], [1, 0, 1])
    assert gcrd(D * L11, B * L11) == L11.remove_content()
    g = gcrd(op([-1], [1]), op([1], [1]))  # D - 1 and D + 1
    assert g.order == 0 and g == DiffOp([ONE])
    assert gcrd(A * GEOM, op([3], [1]) * GEOM) == GEOM.remove_content()


@settings(max_examples=15, deadline=None)
@given(small_op.filter(lambda L: L.order >= 1), small_op, small_op)
def test_gcrd_right_divides_inputs(L, A, B):
    if not A or not B:
        return
    g = gcrd(A * L, B * L)
    for X in (A * L, B * L):
        _, R = right_divmod(X, g)
        assert not R.coeffs
    # L itself is a right divisor of both, hence of the gcrd's multiples' common part
    assert g.order >= L.order


# -- local analysis ----------------------------------------------------------------------

def test_kreweras_places_and_exponents():
    places = singular_points(L11)
    assert [str(p) for p in places if p.kind == "rational"] == ["-1", "0", "1/3", "4/3"]
    alg = [p for p in places if p.kind == "algebraic"]
    assert len(alg) == 1 and alg[0].data.monic() == (9 * t * t + 3 * t + 1).monic()
    assert places[-1].kind == "infinity" and len(places) == 6
    for p in places:
        data = indicial(L11, p)
        assert data.regular and is_regular_singular(L11, p)
        want = EXPECTED_EXPONENTS[str(p)]
        assert sorted(data.exponents) == sorted(Fraction(x) for x in want)


def test_indicial_at_minus_one_matches_printed_polynomial():
    data = indicial(L11, Place.at(-1))
    want = (t * (t - 1) * (t - 2) * (2 * t - 1)).primitive()
    assert data.polynomial.primitive() in (want, -want)


def test_simple_singularities():
    assert [p.kind for p in singular_points(D)] == ["infinity"]
    irr = op([1], [0, 0, 1])  # t^2 D + 1
    assert [str(p) for p in singular_points(irr)] == ["0", "oo"]
    assert not is_regular_singular(irr, Place.at(0))
    ind = indicial(op([-3], [0, 1]), Place.at(0))
    assert ind.exponents == [3]


@pytest.mark.parametrize("place", [Place.at(0), Place.at(1), Place.infinity()])
def test_hypergeometric_is_fuchsian(place):
    assert is_regular_singular(HYPER, place)
    assert indicial(HYPER, place).exponents is not None


# -- p-curvature ----------------------------------------------------------------------------

def test_curvature_of_d_is_zero():
    for p in (3, 5, 7):
        assert p_curvature(D, p).zero


@pytest.mark.parametrize("p", [3, 5, 7])
def test_curvature_of_exponential_is_not_nilpotent(p):
    M = p_curvature(op([-1], [1]), p)
    assert not M.nilpotent
    assert [c.tolist() for c in M.char_poly_numer()] == [[1], [p - 1]]


def test_kreweras_curvature_mod_5():
    M = p_curvature(L11, 5)
    assert not M.zero and M.nilpotency_index() == 2
    assert [c.tolist() for c in M.char_poly_numer()] == [[1], [], [], [], []]


@pytest.mark.parametrize("p", [7, 11, 13, 97])
def test_kreweras_curvature_vanishes(p):
    assert p_curvature(L11, p).zero


def test_bad_prime_rejected():
    with pytest.raises(BadPrimeError):
        p_curvature(op([1], [0, 3]), 3)


def test_char_poly_examples():
    p = 7
    z = RatFuncMod(PolyMod([], p))
    assert [c.num.tolist() for c in char_poly_mod([[z, z], [z, z]])] == [[1], [], []]
    one, two = RatFuncMod(PolyMod([1], p)), RatFuncMod(PolyMod([2], p))
    cp = char_poly_mod([[one, z], [z, two]])
    assert [c.num.tolist() for c in cp] == [[1], [4], [2]]  # (T-1)(T-2) mod 7
