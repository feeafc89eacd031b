from fractions import Fraction
from math import comb, lcm

import pytest
from hypothesis import given, settings, strategies as st

from kreweras_data import L11, REC6
from walkclassifier.arith import PolyQ
from walkclassifier.fixtures import row_2d
from walkclassifier.guess import (
    FOUND,
    NONE,
    GuessConfig,
    GuessResult,
    guess_algeq,
    guess_at_shape,
    guess_ode,
    guess_rec,
    minimize,
)
from walkclassifier.ore import DiffOp, RecOp, apply_diffop, apply_recop, ode_to_rec
from walkclassifier.walks import StepSet, expand_counts, parse_steps

t = PolyQ.x()
KREW = expand_counts(parse_steps("W,S,NE"), 100).terms
CATALAN = [comb(2 * n, n) // (n + 1) for n in range(30)]


def test_kreweras_recurrence():
    g = guess_rec(KREW)
    assert g.status == FOUND and g.shape == (6, 4)
    assert g.payload == REC6
    lead = 2 * (t + 6) * (t + 7) * (2 * t + 13) * (7 * t + 34)
    assert g.payload.coeffs[-1] == lead


def test_kreweras_ode_is_minimal_operator():
    g = guess_ode(KREW)
    assert g.shape == (4, 9) and g.payload == L11
    assert g.payload.lc == 4 * t**2 * (t + 1) * (3 * t - 4) * (3 * t - 1) ** 3 * (9 * t**2 + 3 * t + 1)


def test_kreweras_algebraic_equation():
    g = guess_algeq(KREW)
    assert g.shape == (6, 8)
    c0 = g.payload.rows[0]
    assert c0 * (1 / c0.lc) == (43 * t**2 + t + 2) * Fraction(1, 43)


def test_geometric_series():
    ode = guess_ode([1] * 40)
    assert ode.payload == DiffOp([PolyQ([-1]), PolyQ([1, -1])]).normalized()
    alg = guess_algeq([1] * 40)
    assert alg.shape == (1, 1)
    r0, r1 = alg.payload.rows
    k = -1 / r0.coeffs[0]
    assert (r0 * k, r1 * k) == (PolyQ([-1]), PolyQ([1, -1]))  # (1 - t) T - 1


def test_catalan_recurrence():
    g = guess_rec(CATALAN, GuessConfig.for_rec(margin=16))
    R = g.payload
    assert R.order == 1 and R == RecOp([-(4 * t + 2), t + 2]).normalized()


def test_constant_sequence_recurrence():
    assert guess_rec([3] * 40).payload == RecOp([PolyQ([-1]), PolyQ([1])])


def test_algebraic_degrees_of_a151323():
    row = row_2d("A151323")
    s = expand_counts(StepSet.from_bits(row.steps[0]), 150).terms
    assert guess_algeq(s).shape == row.alg == (4, 4)


def test_no_equation_for_a_non_dfinite_class():
    # the bounds are exhausted with empty kernels at every shape
    S = parse_steps("N,SE,W,SW")
    s = expand_counts(S, 250).terms
    g = guess_ode(s)
    assert g.status == NONE and not g
    assert g.trace and all(dim == 0 for *_, dim in g.trace)


def test_shape_guesses_minimize_to_kreweras_operator():
    s = expand_counts(parse_steps("W,S,NE"), 150).terms
    cfg = GuessConfig(prime_budget=200)
    gs = [guess_at_shape("ode", s, 5, 12, cfg), guess_at_shape("ode", s, 6, 10, cfg)]
    assert all(gs)
    assert minimize(gs, s).payload == L11


def test_minimize_identity_and_multiples():
    g = GuessResult("ode", FOUND, L11, L11.shape)
    assert minimize([g, g]).payload == L11
    L = DiffOp([PolyQ([1, 2]), PolyQ([0, 1, 1]), PolyQ([3, 0, 1])])
    A = DiffOp([PolyQ([1]), PolyQ([0, 1])])
    B = DiffOp([PolyQ([2, 1]), PolyQ([1])])
    res = [GuessResult("ode", FOUND, X * L, (X * L).shape) for X in (A, B)]
    assert minimize(res).payload == L.remove_content()


def test_minimize_rejects_recurrences():
    g = GuessResult("rec", FOUND, REC6, REC6.shape)
    with pytest.raises(ValueError):
        minimize([g, g])


def test_config_validation():
    with pytest.raises(ValueError):
        GuessConfig(margin=4)
    with pytest.raises(ValueError):
        GuessConfig(stabilization=1)


def test_determinism_and_stabilization():
    a = guess_ode(KREW)
    b = guess_ode(KREW, GuessConfig.for_ode(stabilization=4))
    assert a.payload == b.payload
    assert guess_rec(KREW).payload == guess_rec(KREW).payload


def test_truncation_fit_does_not_survive_more_terms():
    # with no margin, a kernel exists at any shape that outnumbers the equations
    g = guess_at_shape("ode", KREW[:30], 2, 9, GuessConfig(prime_budget=400))
    assert g
    assert any(apply_diffop(g.payload, KREW[:60]))


@pytest.mark.parametrize("tag", ["A001405", "A151265", "A005566", "A151282", "A060900"])
def test_ode_to_rec_agrees_with_guessed_recurrence(tag):
    s = expand_counts(StepSet.from_bits(row_2d(tag).steps[0]), 200).terms
    R, L = guess_rec(s).payload, guess_ode(s).payload
    assert not any(apply_recop(R, s))
    assert not any(apply_recop(ode_to_rec(L), s))


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 3))
def test_hypergeometric_recurrences_recovered(a, b, c):
    # a_{n+1} (n + c) = (a n + b) a_n up to a common denominator: order 1, degree 1
    seq = [Fraction(1)]
    for n in range(80):
        seq.append(seq[-1] * (a * n + b) / (n + c))
    den = 1
    for x in seq:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in seq]
    g = guess_rec(ints)
    assert g and g.shape[0] == 1 and not any(apply_recop(g.payload, ints))
