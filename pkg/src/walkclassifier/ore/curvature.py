"""p-curvature of differential operators and characteristic polynomials over F_p(t)."""
from __future__ import annotations

from dataclasses import dataclass

from ..arith.modular import BadPrimeError
from ..arith.polymod import PolyMod, RatFuncMod
from .operators import DiffOp


def berkowitz(M: list[list], zero, one) -> list:
    """Division-free characteristic polynomial det(T I - M), coefficients from T^n down to T^0."""
    n = len(M)
    if n == 0:
        return [one]
    poly = [one, -M[0][0]]
    for k in range(1, n):
        a = M[k][k]
        R = M[k][:k]
        C = [M[i][k] for i in range(k)]
        A = [row[:k] for row in M[:k]]
        toe = [one, -a]
        v = C
        for _ in range(k):
            toe.append(-_dot(R, v, zero))
            v = [_dot(A[i], v, zero) for i in range(k)]
        new = []
        for i in range(k + 2):
            acc = zero
            for j in range(min(i, k) + 1):
                acc = acc + toe[i - j] * poly[j]
            new.append(acc)
        poly = new
    return poly


def _dot(u, v, zero):
    acc = zero
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    return acc


def matmul(A, B, zero):
    n, m, k = len(A), len(B[0]), len(B)
    return [[_dot(A[i], [B[l][j] for l in range(k)], zero) for j in range(m)] for i in range(n)]


def char_poly_mod(M: list[list[RatFuncMod]]) -> list[RatFuncMod]:
    """Characteristic polynomial of a matrix over F_p(t), highest power of T first."""
    if not M:
        raise ValueError("empty matrix")
    p = M[0][0].p
    zero = RatFuncMod(PolyMod([], p))
    one = RatFuncMod(PolyMod([1], p))
    return berkowitz(M, zero, one)


@dataclass
class PCurvature:
    """M_p = N / c_r^E with N a polynomial matrix over F_p."""

    p: int
    numer: list[list[PolyMod]]
    den: PolyMod
    exponent: int

    @property
    def size(self) -> int:
        return len(self.numer)

    @property
    def zero(self) -> bool:
        return all(not x for row in self.numer for x in row)

    def power(self, k: int) -> list[list[PolyMod]]:
        z = PolyMod([], self.p)
        out = self.numer
        for _ in range(k - 1):
            out = matmul(out, self.numer, z)
        return out

    @property
    def nilpotent(self) -> bool:
        return self.nilpotency_index() is not None

    def nilpotency_index(self) -> int | None:
        """Smallest k with M^k = 0, or None."""
        if self.zero:
            return 1
        z = PolyMod([], self.p)
        acc = self.numer
        for k in range(2, self.size + 1):
            acc = matmul(acc, self.numer, z)
            if all(not x for row in acc for x in row):
                return k
        return None

    def matrix(self) -> list[list[RatFuncMod]]:
        d = self.den
        denom = PolyMod([1], self.p)
        for _ in range(self.exponent):
            denom = denom * d
        return [[RatFuncMod(x, denom) for x in row] for row in self.numer]

    def char_poly_numer(self) -> list[PolyMod]:
        """Characteristic polynomial of N; that of M_p has coefficient k divided by den^(E k)."""
        z = PolyMod([], self.p)
        return berkowitz(self.numer, z, PolyMod([1], self.p))


def _reduce_op(L: DiffOp, p: int) -> list[PolyMod]:
    out = []
    for c in L.coeffs:
        if any(x.denominator % p == 0 for x in c.coeffs):
            raise BadPrimeError(f"{p} divides a coefficient denominator")
        out.append(PolyMod([x.numerator * pow(x.denominator, -1, p) for x in c.coeffs], p))
    if not out[-1]:
        raise BadPrimeError(f"leading coefficient vanishes mod {p}")
    return out


def p_curvature(L: DiffOp, p: int) -> PCurvature:
    """Rows i = 0..r-1 hold the coordinates of D_t^(p+i) mod L on 1, D_t, ..., D_t^(r-1).

    The remainder is kept as sum_j b_j D^j / c^e with c = c_r; one left multiplication by D_t
    followed by one reduction step maps (b, e) to
    b_j' c - e b_j c' + b_{j-1} c - b_{r-1} c_j over c^(e+1).
    """
    cs = _reduce_op(L, p)
    r = len(cs) - 1
    if r < 1:
        raise ValueError("operator of order >= 1 expected")
    c = cs[-1]
    dc = c.derivative()
    zero = PolyMod([], p)
    b = [zero] * r
    b[0] = PolyMod([1], p)
    e = 0
    rows = []
    for step in range(1, p + r):
        top = b[r - 1]
        nb = []
        for j in range(r):
            v = b[j].derivative() * c - b[j] * dc * (e % p)
            if j > 0:
                v = v + b[j - 1] * c
            if top:
                v = v - top * cs[j]
            nb.append(v)
        b, e = nb, e + 1
        if step >= p:
            rows.append((b, e))
    E = rows[-1][1]
    numer = []
    for bj, ej in rows:
        scale = PolyMod([1], p)
        for _ in range(E - ej):
            scale = scale * c
        numer.append([x * scale for x in bj])
    return PCurvature(p, numer, c, E)
