"""Guessing linear ODEs, recurrences and algebraic equations from truncated series.

Each search runs a staircase over the order. At each order the largest degree
allowed by the term budget is tried modulo one prime; a nonempty kernel means an
equation of that order exists, and since all solutions at the minimal order are
polynomial multiples of the minimal one, the kernel dimension gives the minimal
degree directly. Only that one-dimensional system is then solved over Q via CRT
and rational reconstruction, and the result is re-verified exactly.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from .arith.bivariate import PolyQ2, bivariate_gcd_T
from .arith.modular import crt_pair, guessing_primes, nullspace_mod, rational_reconstruct
from .arith.polymod import conv_mod
from .arith.polyq import PolyQ
from .ore.operators import DiffOp, RecOp, apply_diffop, apply_recop, gcrd

log = logging.getLogger(__name__)

FOUND = "found"
NONE = "none"
RECON_FAILED = "reconstruction-failed"


@dataclass(frozen=True)
class GuessConfig:
    max_order: int = 6
    max_degree: int = 24
    margin: int = 32
    prime_budget: int = 80
    stabilization: int = 2
    N: int | None = None  # defaults to all available terms

    def __post_init__(self):
        if self.margin < 16:
            raise ValueError("overdetermination margin must be at least 16")
        if self.stabilization < 2:
            raise ValueError("stabilization count must be at least 2")
        if self.max_order < 1 or self.max_degree < 0:
            raise ValueError("bad shape bounds")

    @classmethod
    def for_ode(cls, **kw) -> "GuessConfig":
        return cls(**{"max_order": 6, "max_degree": 24, **kw})

    @classmethod
    def for_rec(cls, **kw) -> "GuessConfig":
        return cls(**{"max_order": 10, "max_degree": 20, **kw})

    @classmethod
    def for_algeq(cls, **kw) -> "GuessConfig":
        return cls(**{"max_order": 12, "max_degree": 20, **kw})


@dataclass
class GuessResult:
    kind: str
    status: str
    payload: DiffOp | RecOp | PolyQ2 | None = None
    shape: tuple[int, int] | None = None
    primes_used: int = 0
    precision: int = 0
    minimized: bool = False
    # (order, degree, kernel dimension mod the first prime) for every shape tried
    trace: list[tuple[int, int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.status == FOUND

    def to_json(self) -> dict:
        out = {"kind": self.kind, "status": self.status, "shape": self.shape,
               "primes": self.primes_used, "precision": self.precision,
               "minimized": self.minimized}
        if self.payload is not None:
            if isinstance(self.payload, PolyQ2):
                out["payload"] = {"degree_T": self.payload.degree_T,
                                  "degree_t": self.payload.degree_t,
                                  "coeffs": [[str(x) for x in r.coeffs] for r in self.payload.rows]}
            else:
                out["payload"] = self.payload.to_json()
        return out


def _terms(S) -> list[int]:
    return list(S.terms if hasattr(S, "terms") else S)


# -- problem definitions -------------------------------------------------------

class _Problem:
    kind: str

    def __init__(self, terms: list[int]):
        self.terms = terms
        self.N = len(terms)
        self._cache: dict[int, object] = {}

    def rows(self, r: int) -> int:
        raise NotImplementedError

    def matrix(self, r: int, d: int, p: int) -> np.ndarray:
        raise NotImplementedError

    def build(self, vec: Sequence[Fraction], r: int, d: int):
        raise NotImplementedError

    def verify(self, payload) -> bool:
        raise NotImplementedError

    def shape_of(self, payload) -> tuple[int, int]:
        return payload.shape

    def _seq_mod(self, p: int) -> np.ndarray:
        if p not in self._cache:
            self._cache[p] = np.array([x % p for x in self.terms], dtype=np.int64)
        return self._cache[p]


class _OdeProblem(_Problem):
    kind = "ode"

    def rows(self, r):
        return self.N - r

    def matrix(self, r, d, p):
        N = self.N
        s = self._seq_mod(p)
        idx = np.arange(N, dtype=np.int64)
        rows = N - r
        out = np.zeros((rows, (r + 1) * (d + 1)), dtype=np.int64)
        ff = np.ones(N, dtype=np.int64)
        for i in range(r + 1):
            if i:
                ff = (ff * ((idx - i + 1) % p)) % p
            u = (ff * s) % p
            for a in range(d + 1):
                col = i * (d + 1) + a
                shift = a - i  # row k reads u[k - shift]
                lo = max(0, shift)
                if lo < rows:
                    out[lo:rows, col] = u[lo - shift: rows - shift]
        return out

    def build(self, vec, r, d):
        return DiffOp([PolyQ(vec[i * (d + 1):(i + 1) * (d + 1)]) for i in range(r + 1)]).normalized()

    def verify(self, L):
        return not any(apply_diffop(L, self.terms))


class _RecProblem(_Problem):
    kind = "rec"

    def rows(self, r):
        return self.N - r

    def matrix(self, r, d, p):
        rows = self.N - r
        s = self._seq_mod(p)
        n = np.arange(rows, dtype=np.int64) % p
        out = np.zeros((rows, (r + 1) * (d + 1)), dtype=np.int64)
        for k in range(r + 1):
            col = s[k:k + rows].copy()
            for j in range(d + 1):
                out[:, k * (d + 1) + j] = col
                col = (col * n) % p
        return out

    def build(self, vec, r, d):
        return RecOp([PolyQ(vec[k * (d + 1):(k + 1) * (d + 1)]) for k in range(r + 1)]).normalized()

    def verify(self, R):
        return not any(apply_recop(R, self.terms))


class _AlgProblem(_Problem):
    kind = "algeq"

    def rows(self, r):
        return self.N

    def _powers_mod(self, r: int, p: int) -> list[np.ndarray]:
        key = ("pow", p)
        pw = self._cache.get(key)
        if pw is None:
            pw = [np.zeros(self.N, dtype=np.int64)]
            pw[0][0] = 1
        s = self._seq_mod(p)
        while len(pw) <= r:
            pw.append(np.asarray(conv_mod(pw[-1], s, p)[: self.N], dtype=np.int64))
        self._cache[key] = pw
        return pw

    def matrix(self, r, d, p):
        N = self.N
        pw = self._powers_mod(r, p)
        out = np.zeros((N, (r + 1) * (d + 1)), dtype=np.int64)
        for k in range(r + 1):
            for j in range(d + 1):
                if j < N:
                    out[j:, k * (d + 1) + j] = pw[k][: N - j]
        return out

    def build(self, vec, r, d):
        return PolyQ2([PolyQ(vec[k * (d + 1):(k + 1) * (d + 1)]) for k in range(r + 1)]).primitive()

    def shape_of(self, P):
        return (P.degree_T, P.degree_t)

    def verify(self, P):
        return not any(algeq_residual(P, self.terms))


def series_powers(terms: Sequence[int], k: int) -> list[list[int]]:
    """S^0 .. S^k truncated to len(terms) coefficients, exactly."""
    N = len(terms)
    out = [[1] + [0] * (N - 1)]
    for _ in range(k):
        prev = out[-1]
        nxt = [0] * N
        for i, x in enumerate(prev):
            if x:
                for j in range(N - i):
                    nxt[i + j] += x * terms[j]
        out.append(nxt)
    return out


def algeq_residual(P: PolyQ2, terms: Sequence[int]) -> list:
    """Coefficients of P(S, t) mod t^N."""
    N = len(terms)
    pw = series_powers(terms, P.degree_T)
    res = [0] * N
    for k, row in enumerate(P.rows):
        for j, c in enumerate(row.coeffs):
            if c:
                c = c.numerator if c.denominator == 1 else c
                for m in range(j, N):
                    res[m] += c * pw[k][m - j]
    return res


# -- engine ----------------------------------------------------------------------

def _degree_budget(prob: _Problem, r: int, cfg: GuessConfig) -> int:
    return min(cfg.max_degree, (prob.rows(r) - cfg.margin) // (r + 1) - 1)


def _kernel(prob: _Problem, r: int, d: int, p: int) -> list[list[int]]:
    return nullspace_mod(prob.matrix(r, d, p), p)


def _reconstruct(prob: _Problem, r: int, d: int, cfg: GuessConfig,
                 primes: Iterator[int]) -> tuple[object | None, int]:
    """CRT-lift the kernel at shape (r, d); returns (payload or None, primes used)."""
    residues: list[int] | None = None
    modulus = 1
    free_cols = None
    last = None
    stable = 0
    used = 0
    for p in primes:
        if used >= cfg.prime_budget:
            break
        used += 1
        basis = _kernel(prob, r, d, p)
        if not basis:
            continue  # unlucky prime or false positive upstream
        cols = [next(i for i, x in enumerate(v) if x) for v in basis]
        if free_cols is None:
            free_cols = cols
        elif cols != free_cols:
            log.debug("prime %d gives a different kernel pattern, skipped", p)
            continue
        v = basis[0]
        if residues is None:
            residues, modulus = list(v), p
        else:
            residues = [crt_pair(a, modulus, b, p)[0] for a, b in zip(residues, v)]
            modulus *= p
        cand = []
        for x in residues:
            q = rational_reconstruct(x, modulus)
            if q is None:
                cand = None
                break
            cand.append(q)
        if cand is None:
            last, stable = None, 0
            continue
        if cand == last:
            stable += 1
        else:
            last, stable = cand, 0
        if stable >= cfg.stabilization - 1:
            payload = prob.build(cand, r, d)
            if prob.verify(payload):
                return payload, used
            stable = 0
    return None, used


def _search(prob: _Problem, cfg: GuessConfig) -> GuessResult:
    primes = guessing_primes()
    p1 = next(primes)
    trace: list[tuple[int, int, int]] = []
    for r in range(1, cfg.max_order + 1):
        d = _degree_budget(prob, r, cfg)
        if d < 0:
            break
        dim = len(_kernel(prob, r, d, p1))
        trace.append((r, d, dim))
        if not dim:
            continue
        d0 = max(0, d - dim + 1)
        while d0 <= d:
            k0 = len(_kernel(prob, r, d0, p1))
            trace.append((r, d0, k0))
            if k0:
                break
            d0 += 1
        payload, used = _reconstruct(prob, r, d0, cfg, _chain(p1, primes))
        if payload is None:
            return GuessResult(prob.kind, RECON_FAILED, shape=(r, d0), primes_used=used,
                               precision=prob.N, trace=trace)
        return GuessResult(prob.kind, FOUND, payload, prob.shape_of(payload), used, prob.N,
                           minimized=True, trace=trace)
    return GuessResult(prob.kind, NONE, trace=trace)


def _chain(first: int, rest: Iterator[int]) -> Iterator[int]:
    yield first
    yield from rest


def _with_N(terms: list[int], cfg: GuessConfig) -> list[int]:
    return terms[: cfg.N] if cfg.N else terms


def guess_ode(S, cfg: GuessConfig | None = None) -> GuessResult:
    cfg = cfg or GuessConfig.for_ode()
    return _search(_OdeProblem(_with_N(_terms(S), cfg)), cfg)


def guess_rec(a, cfg: GuessConfig | None = None) -> GuessResult:
    cfg = cfg or GuessConfig.for_rec()
    return _search(_RecProblem(_with_N(_terms(a), cfg)), cfg)


def guess_algeq(S, cfg: GuessConfig | None = None) -> GuessResult:
    cfg = cfg or GuessConfig.for_algeq()
    return _search(_AlgProblem(_with_N(_terms(S), cfg)), cfg)


def guess_at_shape(kind: str, S, r: int, d: int, cfg: GuessConfig | None = None) -> GuessResult:
    """Solve the system at one fixed shape; the result need not be minimal."""
    terms = _terms(S)
    prob = {"ode": _OdeProblem, "rec": _RecProblem, "algeq": _AlgProblem}[kind](terms)
    cfg = cfg or GuessConfig()
    payload, used = _reconstruct(prob, r, d, cfg, guessing_primes())
    if payload is None:
        return GuessResult(kind, NONE, shape=(r, d), primes_used=used, precision=len(terms))
    return GuessResult(kind, FOUND, payload, prob.shape_of(payload), used, len(terms))


def minimize(results: Sequence[GuessResult], S=None) -> GuessResult:
    """Combine several guesses of one kind by gcrd (ODEs) or gcd in Q(t)[T] (algebraic)."""
    results = [r for r in results if r]
    if not results:
        raise ValueError("nothing to minimize")
    kind = results[0].kind
    if any(r.kind != kind for r in results):
        raise ValueError("mixed kinds")
    payloads = [r.payload for r in results]
    if kind == "ode":
        g = payloads[0]
        for L in payloads[1:]:
            g = gcrd(g, L)
        if g.order < 1:
            raise ValueError("trivial gcrd: inconsistent inputs")
        shape = g.shape
    elif kind == "algeq":
        g = payloads[0]
        for P in payloads[1:]:
            g = bivariate_gcd_T(g, P)
        if g.degree_T < 1:
            raise ValueError("trivial gcd: inconsistent inputs")
        shape = (g.degree_T, g.degree_t)
    else:
        raise ValueError(f"minimization is not defined for kind {kind!r}")
    precision = min(r.precision for r in results)
    if S is not None:
        terms = _terms(S)
        ok = (not any(apply_diffop(g, terms))) if kind == "ode" else (not any(algeq_residual(g, terms)))
        if not ok:
            raise ValueError("minimized equation does not annihilate the series")
        precision = len(terms)
    return GuessResult(kind, FOUND, g, shape, sum(r.primes_used for r in results), precision,
                       minimized=True)


Guesser = Callable[..., GuessResult]
GUESSERS: dict[str, Guesser] = {"ode": guess_ode, "rec": guess_rec, "algeq": guess_algeq}
