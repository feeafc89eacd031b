"""Asymptotics a_n ~ kappa rho^n n^alpha: exact growth candidates, Richardson fits, closed forms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .arith.polyq import PolyQ, remove_rational_roots, squarefree_decomposition
from .ore.local import ALGEBRAIC, RATIONAL, indicial, singular_points
from .ore.operators import DiffOp, RecOp

MIN_PREC = 128


# -- sequence extension ------------------------------------------------------------

def extend_sequence(R: RecOp, initial: Sequence[int], M: int) -> list:
    """Unroll sum_k p_k(n) a_{n+k} = 0 from the given initial terms to M terms."""
    s = R.order
    if len(initial) < s:
        raise ValueError(f"need at least {s} initial terms")
    out = list(initial[:M])
    polys = [p.int_coeffs() if p else [] for p in R.normalized().coeffs]
    lead = polys[-1]

    def ev(c, n):
        acc = 0
        for x in reversed(c):
            acc = acc * n + x
        return acc

    while len(out) < M:
        n = len(out) - s
        d = ev(lead, n)
        if d == 0:
            raise ZeroDivisionError(f"leading coefficient vanishes at n={n}")
        num = -sum(ev(polys[k], n) * out[n + k] for k in range(s) if polys[k])
        q, r = divmod(num, d)
        out.append(q if r == 0 else Fraction(num, d))
    return out


# -- exact growth-rate candidates --------------------------------------------------

@dataclass(frozen=True)
class Surd:
    """a + b sqrt(c) with c a squarefree integer (b = 0 for rationals)."""

    a: Fraction
    b: Fraction = Fraction(0)
    c: int = 1

    def value(self, prec: int = MIN_PREC):
        with mpmath.workprec(prec):
            return mpmath.mpf(self.a.numerator) / self.a.denominator + \
                mpmath.mpf(self.b.numerator) / self.b.denominator * mpmath.sqrt(self.c)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.c})"


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = k^2 m with m squarefree; returns (k, m)."""
    k, m, d = 1, n, 2
    while d * d <= m:
        while m % (d * d) == 0:
            m //= d * d
            k *= d
        d += 1
    return k, m


def _quadratic_surds(q: PolyQ) -> list[Surd]:
    c0, c1, c2 = q.coeffs
    disc = c1 * c1 - 4 * c0 * c2
    base = -c1 / (2 * c2)
    # sqrt(disc) / (2 c2) with disc = num/den -> sqrt(num*den) / (den * 2 c2)
    k, m = _squarefree_split(abs(disc.numerator * disc.denominator))
    coef = Fraction(k, disc.denominator) / (2 * abs(c2))
    if disc < 0:
        return []  # complex pair
    if m == 1:
        return [Surd(base - coef), Surd(base + coef)]
    return [Surd(base, -coef, m), Surd(base, coef, m)]


def poincare_polynomial(R: RecOp) -> PolyQ:
    D = R.degree
    return PolyQ([p[D] if p else 0 for p in R.coeffs])


@dataclass
class GrowthCandidate:
    exact: Surd | None
    value: object  # mpf or mpc

    @property
    def real(self) -> bool:
        return not isinstance(self.value, mpmath.mpc) or abs(self.value.imag) < mpmath.mpf(10) ** -20


def char_candidates(R: RecOp, prec: int = MIN_PREC) -> list[GrowthCandidate]:
    """Roots of the Poincare characteristic polynomial, exact where rational or quadratic."""
    chi = poincare_polynomial(R)
    if chi.degree < 1:
        return []
    out: list[GrowthCandidate] = []
    roots, rest = remove_rational_roots(chi)
    for x in sorted(set(roots)):
        out.append(GrowthCandidate(Surd(x), Surd(x).value(prec)))
    if rest.degree < 1:
        return out
    with mpmath.workprec(prec):
        for f, _ in squarefree_decomposition(rest):
            if f.degree < 1:
                continue
            if f.degree == 2:
                surds = _quadratic_surds(f)
                if surds:
                    out.extend(GrowthCandidate(s, s.value(prec)) for s in surds)
                    continue
            out.extend(_numeric_with_pairs(f, prec))
    return out


def _numeric_with_pairs(f: PolyQ, prec: int) -> list[GrowthCandidate]:
    """Numeric roots; real conjugate pairs with a rational quadratic factor are made exact."""
    coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(f.coeffs)]
    vals = mpmath.polyroots(coeffs, maxsteps=200, extraprec=prec)
    done: set[int] = set()
    out = []
    for i, u in enumerate(vals):
        for j in range(i + 1, len(vals)):
            if i in done or j in done:
                continue
            v = vals[j]
            s, p = u + v, u * v
            if abs(mpmath.im(s)) > 1e-20 or abs(mpmath.im(p)) > 1e-20:
                continue
            sq = Fraction(str(mpmath.nstr(mpmath.re(s), 30))).limit_denominator(10 ** 6)
            pq = Fraction(str(mpmath.nstr(mpmath.re(p), 30))).limit_denominator(10 ** 6)
            q = PolyQ([pq, -sq, 1])
            if not f.divmod(q)[1]:
                surds = _quadratic_surds(q)
                if surds:
                    done.update((i, j))
                    out.extend(GrowthCandidate(x, x.value(prec)) for x in surds)
    for i, u in enumerate(vals):
        if i not in done:
            val = mpmath.re(u) if abs(mpmath.im(u)) < 1e-30 else u
            out.append(GrowthCandidate(None, val))
    return out


# -- Richardson fits ---------------------------------------------------------------

def richardson(values: Sequence, step: Fraction | float = 1) -> list[list]:
    """Richardson table for samples at n_k = m 2^k with error sum_j c_j n^(-j step).

    Row k, column j combines samples k-j..k; T[k][j] is the best estimate available.
    """
    T: list[list] = []
    for k, v in enumerate(values):
        row = [v]
        for j in range(1, k + 1):
            f = mpmath.mpf(2) ** (j * _mpf(step))
            row.append((f * row[j - 1] - T[k - 1][j - 1]) / (f - 1))
        T.append(row)
    return T


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _stable_digits(T: list[list]) -> tuple[object, object, int]:
    last = T[-1][-1]
    prev = T[-2][-1] if len(T) > 1 else T[-1][0]
    err = abs(last - prev)
    digits = int(-mpmath.log10(err)) if err > 0 else 60
    return last, err, digits


@dataclass
class AsymptoticFit:
    rho: object
    rho_exact: Surd | None
    alpha: object
    alpha_error: object
    alpha_exact: Fraction
    kappa: object
    kappa_error: object
    kappa_digits: int
    log_residual: object
    beta: int = 0

    def to_json(self) -> dict:
        return {"rho": mpmath.nstr(self.rho, 20), "rho_exact": str(self.rho_exact) if self.rho_exact else None,
                "alpha": mpmath.nstr(self.alpha, 15), "alpha_exact": str(self.alpha_exact),
                "kappa": mpmath.nstr(self.kappa, 15), "kappa_digits": self.kappa_digits,
                "log_residual": mpmath.nstr(self.log_residual, 5), "beta": self.beta}


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def richardson_step(L: DiffOp, rho, tol: float = 1e-8) -> Fraction:
    """Spacing of the correction exponents for the fit, read off from local exponents.

    Collects the exponents at every finite singular place on the circle |t| = 1/rho that
    can produce singular terms and returns the gcd of their differences together with 1.
    """
    with mpmath.workprec(MIN_PREC):
        r = rho.value() if isinstance(rho, Surd) else mpmath.mpf(rho)
        radius = 1 / r
        exps: list[Fraction] = []
        for pl in singular_points(L):
            if pl.kind == RATIONAL:
                on = abs(abs(_mpf(pl.data)) - radius) < tol
            elif pl.kind == ALGEBRAIC:
                cs = [_mpf(c) for c in reversed(pl.data.coeffs)]
                on = any(abs(abs(z) - radius) < tol for z in mpmath.polyroots(cs, maxsteps=200, extraprec=64))
            else:
                continue
            if on:
                data = indicial(L, pl)
                # nonnegative integer exponents carry analytic solutions and add no singular terms
                exps.extend(e for e in (data.exponents or data.rational_part)
                            if e.denominator != 1 or e < 0)
    g = Fraction(1)
    for e in exps:
        g = _frac_gcd(g, e - exps[0])
    return g


def sample_indices(M: int, levels: int = 8, base: int = 12, doubled: bool = True) -> list[int]:
    """n_k = m 2^k, k < levels, with m the largest multiple of ``base`` fitting M terms."""
    limit = (M - 1) // 2 if doubled else M - 1
    while levels > 1:
        m = (limit >> (levels - 1)) // base * base
        if m:
            return [m << k for k in range(levels)]
        levels -= 1
    return [limit // base * base] if limit >= base else []


def numeric_rho(a: Sequence[int], base: int = 12, prec: int = MIN_PREC,
                step: Fraction = Fraction(1), levels: int = 8):
    """Richardson limit of log(a_{2n}/a_n)/n, whose corrections are n^-1 times those of a_n."""
    idx = sample_indices(len(a), levels, base)
    with mpmath.workprec(prec):
        vals = [(mpmath.log(a[2 * n]) - mpmath.log(a[n])) / n for n in idx]
        # the leading 1/n term plus the correction ladder shifted by one
        T = _richardson_exponents(vals, [Fraction(1)] + [1 + j * step for j in range(1, len(vals))])
        return mpmath.exp(T[-1][-1])


def _richardson_exponents(values: Sequence, exps: Sequence[Fraction]) -> list[list]:
    """Richardson table eliminating c_j n^(-exps[j-1]) successively (geometric ratio 2)."""
    T: list[list] = []
    for k, v in enumerate(values):
        row = [v]
        for j in range(1, k + 1):
            f = mpmath.mpf(2) ** _mpf(exps[j - 1])
            row.append((f * row[j - 1] - T[k - 1][j - 1]) / (f - 1))
        T.append(row)
    return T


def fit_asymptotics(a: Sequence[int], rho, levels: int = 8, step: Fraction = Fraction(1),
                    base: int = 12, prec: int = MIN_PREC, alpha_denominator: int = 12) -> AsymptoticFit:
    """Fit alpha and kappa for a_n ~ kappa rho^n n^alpha.

    alpha comes from log2(a_{2n} / (rho^n a_n)) and kappa from a_n / (rho^n n^alpha),
    both sampled on n = m 2^k (m a multiple of ``base`` to freeze periodic phases) and
    accelerated assuming corrections in powers of n^(-step).
    """
    if prec < MIN_PREC:
        raise ValueError(f"precision must be at least {MIN_PREC} bits")
    if any(x <= 0 for x in a[1:]):
        raise ValueError("terms must be positive")
    rho_exact = rho if isinstance(rho, Surd) else None
    with mpmath.workprec(prec):
        r = rho.value(prec) if isinstance(rho, Surd) else mpmath.mpf(rho)
        if r <= 0:
            raise ValueError("rho must be positive")
        idx = sample_indices(len(a), levels, base)
        if len(idx) < 2:
            raise ValueError("too few terms for extrapolation")
        lg2 = mpmath.log(2)
        lr = mpmath.log(r)
        avals = [(mpmath.log(a[2 * n]) - mpmath.log(a[n]) - n * lr) / lg2 for n in idx]
        A, a_err, _ = _stable_digits(richardson(avals, step))
        alpha_exact = Fraction(str(mpmath.nstr(A, 25))).limit_denominator(alpha_denominator)
        alpha = mpmath.mpf(alpha_exact.numerator) / alpha_exact.denominator
        if abs(alpha - A) > 1e-3:
            alpha = A  # no nearby small rational: keep the numeric value
        kidx = sample_indices(len(a), levels, base, doubled=False)
        kvals = [mpmath.exp(mpmath.log(a[n]) - n * lr - alpha * mpmath.log(n)) for n in kidx]
        K, k_err, digits = _stable_digits(richardson(kvals, step))
        n = len(a) - 1
        resid = mpmath.log(a[n]) - (n * lr + alpha * mpmath.log(n) + mpmath.log(K))
        return AsymptoticFit(r, rho_exact, A, a_err, alpha_exact, K, k_err, digits, resid)


def choose_rho(R: RecOp | None, a: Sequence[int], tol: float = 1e-6,
               step: Fraction = Fraction(1)) -> tuple[object, Surd | None]:
    """Numeric growth rate, snapped to the nearest exact candidate within tol."""
    num = numeric_rho(a, step=step)
    if R is None:
        return num, None
    best = None
    for c in char_candidates(R):
        if not c.real or c.exact is None:
            continue
        d = abs(c.value - num)
        if d < tol and (best is None or d < best[0]):
            best = (d, c.exact)
    if best is None:
        return num, None
    return best[1].value(), best[1]


@dataclass
class AsymptoticReport:
    fit: AsymptoticFit
    numeric_rho: object
    step: Fraction
    terms: int


def analyze_asymptotics(terms: Sequence[int], R: RecOp, L: DiffOp | None = None,
                        M: int = 2000, levels: int = 8, snap_tol: float = 1e-4) -> AsymptoticReport:
    """Extend by the recurrence, pick rho, derive the correction spacing, fit alpha and kappa.

    The fit uses the exact growth rate whenever the numeric limit lies within ``snap_tol``
    of it; ``numeric_rho`` on the report keeps the unsnapped value for consistency checks.
    """
    a = extend_sequence(R, terms, M)
    _, exact = choose_rho(R, a, tol=1e-3)
    step = richardson_step(L, exact or numeric_rho(a)) if L is not None else Fraction(1)
    num = numeric_rho(a, step=step, levels=levels)
    rho = exact if exact is not None and abs(exact.value() - num) < snap_tol else num
    fit = fit_asymptotics(a, rho, levels=levels, step=step)
    return AsymptoticReport(fit, num, step, M)


# -- closed forms -----------------------------------------------------------------

CONSTANTS = {
    "A": "(+ 1 (sqrt 2))",
    "B": "(+ 1 (* 2 (sqrt 2)))",
    "C": "(+ 1 (sqrt 3))",
    "D": "(+ 1 (* 2 (sqrt 3)))",
    "E": "(sqrt (* 6 (+ 379 (* 156 (sqrt 6)))))",
    "F": "(+ 1 (sqrt 6))",
}


class ExprError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _parse(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise ExprError("unexpected end of expression")
    tok = tokens[pos]
    if tok == "(":
        items = []
        pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            node, pos = _parse(tokens, pos)
            items.append(node)
        if pos >= len(tokens):
            raise ExprError("missing ')'")
        return items, pos + 1
    if tok == ")":
        raise ExprError("unexpected ')'")
    return tok, pos + 1


@dataclass(frozen=True)
class ClosedFormExpr:
    text: str

    def __post_init__(self):
        tokens = _tokenize(self.text)
        tree, pos = _parse(tokens, 0)
        if pos != len(tokens):
            raise ExprError("trailing tokens")
        object.__setattr__(self, "_tree", tree)

    def evaluate(self, prec: int = MIN_PREC):
        with mpmath.workprec(prec + 20):
            return +_eval(self._tree, prec)


def _atom(tok: str, prec: int):
    if tok == "pi":
        return +mpmath.pi
    if tok in CONSTANTS:
        return ClosedFormExpr(CONSTANTS[tok]).evaluate(prec)
    try:
        q = Fraction(tok)
    except ValueError:
        raise ExprError(f"unknown symbol {tok!r}") from None
    return mpmath.mpf(q.numerator) / q.denominator


_OPS = {
    "+": lambda xs: mpmath.fsum(xs),
    "*": lambda xs: mpmath.fprod(xs),
    "-": lambda xs: -xs[0] if len(xs) == 1 else xs[0] - mpmath.fsum(xs[1:]),
    "/": lambda xs: xs[0] / mpmath.fprod(xs[1:]),
    "^": lambda xs: xs[0] ** xs[1],
    "sqrt": lambda xs: mpmath.sqrt(xs[0]),
    "gamma": lambda xs: mpmath.gamma(xs[0]),
}


def _eval(node, prec: int):
    if isinstance(node, str):
        return _atom(node, prec)
    if not node:
        raise ExprError("empty application")
    op, *args = node
    if not isinstance(op, str) or op not in _OPS:
        raise ExprError(f"unknown operator {op!r}")
    return _OPS[op]([_eval(x, prec) for x in args])


def verify_constant(value, expr: ClosedFormExpr | str, tol: float) -> bool:
    if isinstance(expr, str):
        expr = ClosedFormExpr(expr)
    prec = max(MIN_PREC, getattr(getattr(value, "context", None), "prec", MIN_PREC))
    target = expr.evaluate(prec)
    with mpmath.workprec(prec):
        return bool(abs(mpmath.mpf(value) - target) <= tol)

