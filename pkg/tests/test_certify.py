import random

import pytest

from kreweras_data import L11
from walkclassifier.arith import PolyQ
from walkclassifier.certify import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    SieveReport,
    Verdict,
    algebraicity_oracle,
    analytic_sieve,
    arithmetic_sieve,
    certify,
    curvature_profile,
    extension_sieve,
    size_sieve,
)
from walkclassifier.fixtures import row_2d
from walkclassifier.guess import GuessConfig, GuessResult, FOUND, guess_algeq, guess_at_shape, guess_ode, guess_rec
from walkclassifier.ore import DiffOp, d_op
from walkclassifier.walks import StepSet, expand_counts, parse_steps

t = PolyQ.x()
KREW = expand_counts(parse_steps("W,S,NE"), 200).terms
K100 = KREW[:100]


def _ode_result(L, n=100):
    return GuessResult("ode", FOUND, L, L.shape, precision=n)


def noisy_fake(seed: int) -> GuessResult:
    rng = random.Random(seed)
    noisy = [a + rng.randint(-100, 100) for a in KREW[:30]]
    return guess_at_shape("ode", noisy, 2, 9, GuessConfig(prime_budget=400))


def test_size_sieve_passes_on_kreweras():
    v = size_sieve(_ode_result(L11), K100)
    assert v.status == PASS and v.evidence["payload_digits"] < 200


@pytest.mark.parametrize("seed", range(3))
def test_size_sieve_fails_on_noise(seed):
    fake = noisy_fake(seed)
    assert fake
    assert size_sieve(fake, KREW[:30]).status == FAIL


def test_size_sieve_without_payload_is_inconclusive():
    assert size_sieve(GuessResult("ode", "none"), K100).status == INCONCLUSIVE


def test_extension_sieve():
    assert extension_sieve(_ode_result(L11), KREW).status == PASS
    fake = guess_at_shape("ode", KREW[:30], 2, 9, GuessConfig(prime_budget=400))
    assert extension_sieve(fake, KREW[:60]).status == FAIL
    assert extension_sieve(_ode_result(L11), K100).status == INCONCLUSIVE


def test_analytic_sieve():
    v = analytic_sieve(L11)
    assert v.status == PASS and len(v.evidence["places"]) == 6
    irregular = DiffOp([PolyQ([1]), t * t])
    v = analytic_sieve(irregular)
    assert v.status == FAIL and v.evidence["witness"] == "0"
    gauss = DiffOp([PolyQ([-1]) * (1 / PolyQ([9]).lc), PolyQ([1]) * (1 / PolyQ([3]).lc) - t * (5 / PolyQ([3]).lc), t * (1 - t)])
    assert analytic_sieve(gauss).status == PASS


def test_arithmetic_sieve():
    v = arithmetic_sieve(L11)
    assert v.status == PASS
    assert all(p in v.evidence["zero_primes"] for p in v.evidence["primes"] if p >= 7)
    assert 5 not in v.evidence["zero_primes"]
    v = arithmetic_sieve(DiffOp([PolyQ([-1]), PolyQ([1])]))
    assert v.status == FAIL and v.evidence["witness"] == 3
    v = arithmetic_sieve(d_op())
    assert v.status == PASS and v.evidence["zero_fraction"] == 1


def test_curvature_profile_skips_bad_primes():
    L = DiffOp([PolyQ([1]), 7 * t])
    prof = curvature_profile(L, K=5)
    assert 7 not in [p for p, *_ in prof] and len(prof) == 5


def test_algebraicity_oracle():
    assert algebraicity_oracle(L11) >= 0.8
    s = expand_counts(StepSet.from_bits(row_2d("A005566").steps[0]), 250).terms
    L = guess_ode(s).payload
    assert L.shape == (3, 4)
    assert algebraicity_oracle(L) < 0.1


def test_certify_kreweras_all_payloads():
    ode, alg, rec = guess_ode(K100), guess_algeq(K100), guess_rec(K100)
    assert certify(ode, K100, KREW).overall == PASS
    rep = certify(alg, K100, KREW, ode=ode)
    assert rep.overall == PASS and rep.algebraicity.status == PASS
    assert certify(rec, K100, KREW, ode=ode).overall == PASS


def test_certify_transcendental_class():
    s2 = expand_counts(StepSet.from_bits(row_2d("A005566").steps[0]), 200).terms
    s = s2[:100]
    ode = guess_ode(s)
    rep = certify(ode, s, s2)
    assert rep.overall == PASS
    assert rep.arithmetic.evidence["zero_fraction"] < 0.1


def test_certify_rejects_fake():
    fake = guess_at_shape("ode", KREW[:30], 2, 9, GuessConfig(prime_budget=400))
    assert certify(fake, KREW[:30], KREW[:60]).overall == FAIL


def test_overall_rule():
    p, f, i = Verdict(PASS), Verdict(FAIL), Verdict(INCONCLUSIVE)
    assert SieveReport(p, p, p, i).overall == PASS
    assert SieveReport(p, p, i, i).overall == INCONCLUSIVE
    assert SieveReport(p, p, p, f).overall == FAIL
    assert "overall" in SieveReport(p, p, i, i).to_json()
