"""Singular places, the Fuchs criterion and indicial data."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..arith.bivariate import PolyQ2, bivariate_resultant
from ..arith.polyq import (
    PolyQ,
    falling_factorial_poly,
    multiplicity,
    rational_roots,
    remove_rational_roots,
    squarefree_decomposition,
)
from .operators import DiffOp

RATIONAL = "rational"
ALGEBRAIC = "algebraic"
INFINITY = "infinity"


@dataclass(frozen=True)
class Place:
    kind: str
    data: Fraction | PolyQ | None = None
    assumed_irreducible: bool = False

    @classmethod
    def at(cls, value) -> "Place":
        return cls(RATIONAL, Fraction(value))

    @classmethod
    def infinity(cls) -> "Place":
        return cls(INFINITY)

    @classmethod
    def factor(cls, m: PolyQ) -> "Place":
        """Place attached to the roots of m; irreducibility is certified only up to degree 3."""
        m = m.primitive()
        if m.degree < 2:
            raise ValueError("use Place.at for linear factors")
        if rational_roots(m):
            raise ValueError("factor has rational roots")
        if any(k > 1 for _, k in squarefree_decomposition(m)):
            raise ValueError("factor is not squarefree")
        return cls(ALGEBRAIC, m, assumed_irreducible=m.degree >= 4)

    def __str__(self) -> str:
        if self.kind == INFINITY:
            return "oo"
        if self.kind == RATIONAL:
            return str(self.data)
        return f"roots of {self.data}"


@dataclass
class IndicialData:
    place: Place
    polynomial: PolyQ
    exponents: list[Fraction] | None
    regular: bool = True
    rational_part: list[Fraction] = field(default_factory=list)

    @property
    def all_rational(self) -> bool:
        return self.exponents is not None


def singular_points(L: DiffOp) -> list[Place]:
    """Roots of the leading coefficient (grouped into places) plus the point at infinity."""
    out: list[Place] = []
    c = L.lc
    if c.degree > 0:
        roots, rest = remove_rational_roots(c)
        out.extend(Place.at(x) for x in sorted(set(roots)))
        if rest.degree > 0:
            for f, _ in squarefree_decomposition(rest):
                if f.degree > 0:
                    out.append(Place.factor(f))
    out.append(Place.infinity())
    return out


def _valuation(c: PolyQ, place: Place) -> int | None:
    """Order of vanishing of c at the place; None for the zero polynomial (+infinity)."""
    if not c:
        return None
    if place.kind == RATIONAL:
        return multiplicity(c, PolyQ([-place.data, 1]))
    if place.kind == ALGEBRAIC:
        return multiplicity(c, place.data)
    raise ValueError("use the infinity branch")


def _shape_at_infinity(L: DiffOp) -> list[int | None]:
    # t^a D_t^i has weight a - i at infinity (u = 1/t gives u^(i-a) theta_u^i up to lower terms)
    return [c.degree - i if c else None for i, c in enumerate(L.coeffs)]


def is_regular_singular(L: DiffOp, place: Place) -> bool:
    """Fuchs criterion v(c_i) >= v(c_r) - (r - i)."""
    r = L.order
    if place.kind == INFINITY:
        w = _shape_at_infinity(L)
        return all(x is None or x <= w[r] for x in w)
    vr = _valuation(L.lc, place)
    for i, c in enumerate(L.coeffs[:-1]):
        v = _valuation(c, place)
        if v is not None and v < vr - (r - i):
            return False
    return True


def _indicial_rational(L: DiffOp, x0: Fraction) -> tuple[PolyQ, bool]:
    shifted = [c.taylor_shift(x0) if c else c for c in L.coeffs]
    w = [(c.valuation() - i) if c else None for i, c in enumerate(shifted)]
    mu = min(x for x in w if x is not None)
    ind = PolyQ()
    for i, c in enumerate(shifted):
        if w[i] == mu:
            ind = ind + falling_factorial_poly(i) * c[c.valuation()]
    return ind, w[-1] == mu


def _indicial_infinity(L: DiffOp) -> tuple[PolyQ, bool]:
    # L(t^lam) = (sum_top lc(c_i) lam^(i falling)) t^(lam + M) + lower; exponent in u = 1/t is s = -lam
    w = _shape_at_infinity(L)
    M = max(x for x in w if x is not None)
    ind = PolyQ()
    for i, c in enumerate(L.coeffs):
        if w[i] == M:
            ind = ind + falling_factorial_poly(i) * c.lc
    ind = PolyQ([x * (-1) ** k for k, x in enumerate(ind.coeffs)])
    return ind, w[-1] == M


def _indicial_algebraic(L: DiffOp, m: PolyQ) -> tuple[PolyQ, bool]:
    """Norm of the indicial polynomial at a root alpha of m.

    With c_i = m^(v_i) q_i, the leading coefficient of c_i at alpha in the local
    parameter t - alpha is q_i(alpha) m'(alpha)^(v_i).
    """
    vals = [multiplicity(c, m) if c else None for c in L.coeffs]
    w = [(v - i) if v is not None else None for i, v in enumerate(vals)]
    mu = min(x for x in w if x is not None)
    dm = m.derivative()
    # chi(s, x) = sum_k (coefficient of s^k) with s standing for alpha
    chi_rows: list[PolyQ] = [PolyQ() for _ in range(m.degree)]
    for i, c in enumerate(L.coeffs):
        if w[i] != mu:
            continue
        q = c
        for _ in range(vals[i]):
            q = q.exquo(m)
        lead = (q * dm ** vals[i]) % m
        ff = falling_factorial_poly(i)
        for k, a in enumerate(lead.coeffs):
            chi_rows[k] = chi_rows[k] + ff * a
    norm = bivariate_resultant(m, PolyQ2(chi_rows))
    return norm.primitive(), w[-1] == mu


def indicial(L: DiffOp, place: Place) -> IndicialData:
    if place.kind == RATIONAL:
        poly, reg = _indicial_rational(L, place.data)
    elif place.kind == INFINITY:
        poly, reg = _indicial_infinity(L)
    else:
        poly, reg = _indicial_algebraic(L, place.data)
    poly = poly.primitive()
    reg = reg and is_regular_singular(L, place)
    roots = rational_roots(poly)  # with multiplicity
    exps = None
    if len(roots) == poly.degree:
        if place.kind == ALGEBRAIC:
            # the norm repeats each exponent once per conjugate root of m
            k = place.data.degree
            exps = [x for x in sorted(set(roots)) for _ in range(roots.count(x) // k)]
        else:
            exps = roots
    return IndicialData(place, poly, exps, reg, sorted(set(roots)))


def local_exponents(L: DiffOp) -> dict[str, IndicialData]:
    return {str(p): indicial(L, p) for p in singular_points(L)}
