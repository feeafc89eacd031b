"""Empirical certification of guessed equations by four independent sieves."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

from .arith.bivariate import PolyQ2
from .arith.modular import BadPrimeError, primes_from
from .guess import GuessResult, algeq_residual
from .ore.curvature import p_curvature
from .ore.local import indicial, singular_points
from .ore.operators import DiffOp, RecOp, apply_diffop, apply_recop

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

SIZE_THETA = 0.2
# below this many digits the threshold cannot tell genuine equations from artefacts
SIZE_MIN_DIGITS = 10
ARITH_PRIMES = 20
ALGEBRAICITY_THRESHOLD = 0.8


@dataclass
class Verdict:
    status: str
    evidence: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == PASS


@dataclass
class SieveReport:
    size: Verdict
    extension: Verdict
    analytic: Verdict
    arithmetic: Verdict
    algebraicity: Verdict | None = None

    def verdicts(self) -> list[Verdict]:
        out = [self.size, self.extension, self.analytic, self.arithmetic]
        if self.algebraicity is not None:
            out.append(self.algebraicity)
        return out

    @property
    def overall(self) -> str:
        vs = self.verdicts()
        if any(v.status == FAIL for v in vs):
            return FAIL
        if sum(v.status == PASS for v in vs) >= 3:
            return PASS
        return INCONCLUSIVE

    def to_json(self) -> dict:
        out = {k: asdict(v) for k, v in
               [("size", self.size), ("extension", self.extension),
                ("analytic", self.analytic), ("arithmetic", self.arithmetic)]}
        if self.algebraicity is not None:
            out["algebraicity"] = asdict(self.algebraicity)
        out["overall"] = self.overall
        return out


def _payload_coeffs(payload) -> list:
    if isinstance(payload, PolyQ2):
        return [c for r in payload.rows for c in r.coeffs]
    return [c for p in payload.coeffs for c in p.coeffs]


def _digits(x) -> int:
    return len(str(abs(x))) if x else 0


def _unknowns(payload) -> int:
    if isinstance(payload, PolyQ2):
        return (payload.degree_T + 1) * (payload.degree_t + 1)
    return (payload.order + 1) * (payload.degree + 1)


def size_sieve(g: GuessResult, terms: Sequence[int], theta: float = SIZE_THETA) -> Verdict:
    """Genuine equations have far smaller coefficients than a generic kernel vector would."""
    if not g or g.payload is None:
        return Verdict(INCONCLUSIVE, {"reason": "no payload"})
    coeffs = _payload_coeffs(g.payload)
    if not any(coeffs):
        return Verdict(FAIL, {"reason": "zero payload"})
    payload_digits = sum(_digits(c.numerator) for c in coeffs)
    series_digits = max(_digits(x) for x in terms[: g.precision or len(terms)])
    scale = _unknowns(g.payload) * series_digits
    ev = {"payload_digits": payload_digits, "scale_digits": scale, "theta": theta}
    if theta * scale < SIZE_MIN_DIGITS:
        return Verdict(INCONCLUSIVE, {**ev, "reason": "scale too small to discriminate"})
    return Verdict(PASS if payload_digits <= theta * scale else FAIL, ev)


def _annihilates(payload, terms: Sequence[int]) -> bool:
    if isinstance(payload, DiffOp):
        return not any(apply_diffop(payload, terms))
    if isinstance(payload, RecOp):
        return not any(apply_recop(payload, terms))
    return not any(algeq_residual(payload, terms))


def extension_sieve(g: GuessResult, terms2: Sequence[int]) -> Verdict:
    """The equation, fitted on N terms, must still hold on the longer expansion."""
    if not g or g.payload is None:
        return Verdict(INCONCLUSIVE, {"reason": "no payload"})
    if len(terms2) <= g.precision:
        return Verdict(INCONCLUSIVE, {"reason": "no extra terms", "terms": len(terms2)})
    ok = _annihilates(g.payload, terms2)
    return Verdict(PASS if ok else FAIL, {"fitted_on": g.precision, "checked_on": len(terms2)})


def analytic_sieve(L: DiffOp) -> Verdict:
    """Fuchsian with rational exponents everywhere, including infinity."""
    places = []
    for pl in singular_points(L):
        data = indicial(L, pl)
        rec = {"place": str(pl), "regular": data.regular,
               "exponents": [str(x) for x in data.exponents] if data.exponents is not None else None,
               "indicial": [str(c) for c in data.polynomial.coeffs]}
        places.append(rec)
        if not data.regular:
            return Verdict(FAIL, {"witness": str(pl), "reason": "irregular singularity", "places": places})
        if data.exponents is None:
            return Verdict(FAIL, {"witness": str(pl), "reason": "irrational exponent",
                                  "indicial": rec["indicial"], "places": places})
    return Verdict(PASS, {"places": places})


def curvature_profile(L: DiffOp, K: int = ARITH_PRIMES, start: int = 3,
                      max_tries: int | None = None) -> list[tuple[int, bool, bool]]:
    """(p, nilpotent, zero) for the first K good primes >= start."""
    out = []
    tries = 0
    limit = max_tries if max_tries is not None else 4 * K + 20
    for p in primes_from(start):
        if len(out) >= K or tries >= limit:
            break
        tries += 1
        try:
            M = p_curvature(L, p)
        except BadPrimeError:
            continue
        out.append((p, M.nilpotent, M.zero))
    return out


def arithmetic_sieve(L: DiffOp, K: int = ARITH_PRIMES) -> Verdict:
    """Global nilpotence of the p-curvature over the first K good primes."""
    prof = curvature_profile(L, K)
    if len(prof) < K:
        return Verdict(INCONCLUSIVE, {"reason": "not enough good primes", "primes": [p for p, *_ in prof]})
    zero = [p for p, _, z in prof if z]
    ev = {"primes": [p for p, *_ in prof], "zero_primes": zero, "zero_fraction": len(zero) / len(prof)}
    for p, nil, _ in prof:
        if not nil:
            ev["witness"] = p
            return Verdict(FAIL, ev)
    return Verdict(PASS, ev)


def algebraicity_oracle(L: DiffOp, K: int = ARITH_PRIMES) -> float:
    """Fraction of good primes with vanishing p-curvature."""
    prof = curvature_profile(L, K)
    return sum(z for *_, z in prof) / len(prof) if prof else 0.0


def certify(g: GuessResult, terms: Sequence[int], terms2: Sequence[int] | None = None,
            ode: GuessResult | None = None, K: int = ARITH_PRIMES,
            ode_verdicts: tuple[Verdict, Verdict] | None = None) -> SieveReport:
    """Run all sieves on one guess.

    For recurrence payloads the analytic and arithmetic sieves run on the companion
    ODE ``ode`` when supplied. For algebraic payloads they stay inconclusive and the
    companion ODE feeds the algebraicity cross-check instead. ``ode_verdicts`` lets a
    caller reuse the (analytic, arithmetic) verdicts already computed for ``ode``.
    """
    size = size_sieve(g, terms)
    ext = extension_sieve(g, terms2) if terms2 is not None else Verdict(INCONCLUSIVE, {"reason": "no extra terms"})
    skip = Verdict(INCONCLUSIVE, {"reason": "not a differential operator"})
    have_ode = ode is not None and bool(ode)

    def ode_sieves():
        if ode_verdicts is not None:
            return ode_verdicts
        return analytic_sieve(ode.payload), arithmetic_sieve(ode.payload, K)

    algebraicity = None
    if FAIL in (size.status, ext.status):
        # the verdict is settled; local and p-adic analysis of a bogus operator is wasted work
        skip = Verdict(INCONCLUSIVE, {"reason": "skipped after a failed sieve"})
        return SieveReport(size, ext, skip, skip)
    if g and isinstance(g.payload, DiffOp):
        ana, ari = analytic_sieve(g.payload), arithmetic_sieve(g.payload, K)
    elif g and isinstance(g.payload, RecOp) and have_ode:
        ana, ari = ode_sieves()
    else:
        ana = ari = skip
        if g and isinstance(g.payload, PolyQ2):
            if have_ode:
                prior = ode_verdicts[1].evidence.get("zero_fraction") if ode_verdicts else None
                frac = prior if prior is not None else algebraicity_oracle(ode.payload, K)
                ok = frac >= ALGEBRAICITY_THRESHOLD
                algebraicity = Verdict(PASS if ok else FAIL, {"zero_fraction": frac})
            else:
                algebraicity = Verdict(INCONCLUSIVE, {"reason": "no companion ODE"})
    return SieveReport(size, ext, ana, ari, algebraicity)
