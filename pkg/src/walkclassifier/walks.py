"""Step sets and exact enumeration of walks confined to the quarter plane / octant.

Counting uses the constant-coefficient recurrence

    f(n+1; i, j) = sum_{(h, k) in S} f(n; i - h, j - k),   f(0; 0, 0) = 1,

streamed one slice at a time. The slice entries are tracked modulo a handful of
primes just below 2^58 and the specialized totals are recovered by CRT, which is
exact because every count of length-n walks is at most |S|^n.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import prod
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .arith.modular import crt_combine, primes_below

Step = tuple[int, ...]

COMPASS = {
    "N": (0, 1), "S": (0, -1), "E": (1, 0), "W": (-1, 0),
    "NE": (1, 1), "NW": (-1, 1), "SE": (1, -1), "SW": (-1, -1),
}

_DP_PRIME_BOUND = 1 << 58


def unit_steps(dim: int) -> list[Step]:
    """All nonzero steps in {-1,0,1}^dim, in lexicographic order."""
    if dim not in (2, 3):
        raise ValueError(f"dimension must be 2 or 3, got {dim}")
    return [s for s in itertools.product((-1, 0, 1), repeat=dim) if any(s)]


@dataclass(frozen=True)
class StepSet:
    dim: int
    steps: frozenset

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {self.dim}")
        for s in self.steps:
            if len(s) != self.dim or any(c not in (-1, 0, 1) for c in s):
                raise ValueError(f"invalid step {s} for dimension {self.dim}")
            if not any(s):
                raise ValueError("the zero step is not allowed")

    @classmethod
    def of(cls, steps: Iterable[Sequence[int]], dim: int | None = None) -> "StepSet":
        steps = [tuple(int(c) for c in s) for s in steps]
        if dim is None:
            if not steps:
                raise ValueError("cannot infer the dimension of an empty step set")
            dim = len(steps[0])
        return cls(dim, frozenset(steps))

    @classmethod
    def from_bits(cls, bits: str) -> "StepSet":
        dim = {8: 2, 26: 3}.get(len(bits))
        if dim is None or set(bits) - {"0", "1"}:
            raise ValueError(f"bitstring must have length 8 or 26 over {{0,1}}: {bits!r}")
        return cls(dim, frozenset(s for s, b in zip(unit_steps(dim), bits) if b == "1"))

    @property
    def bits(self) -> str:
        """Canonical bitstring: lexicographic order over steps (dx, then dy, then dz)."""
        return "".join("1" if s in self.steps else "0" for s in unit_steps(self.dim))

    def __len__(self) -> int:
        return len(self.steps)

    def sorted_steps(self) -> list[Step]:
        return sorted(self.steps)

    def __str__(self) -> str:
        return "{" + ", ".join(str(s) for s in self.sorted_steps()) + "}"


def parse_steps(text: str) -> StepSet:
    """Parse a compass list ("W,S,NE"), a coordinate list ("(-1,0);(1,1)") or a bitstring."""
    text = text.strip()
    if not text:
        raise ValueError("empty step description")
    if re.fullmatch(r"[01]+", text):
        st = StepSet.from_bits(text)
        return st
    if "(" in text:
        tuples = re.findall(r"\(([^()]*)\)", text)
        rest = re.sub(r"\([^()]*\)", "", text)
        if rest.strip(" ;,") or not tuples:
            raise ValueError(f"malformed coordinate list: {text!r}")
        steps = []
        for tok in tuples:
            try:
                coords = tuple(int(c) for c in tok.split(","))
            except ValueError:
                raise ValueError(f"malformed coordinate tuple: ({tok})") from None
            steps.append(coords)
        dims = {len(s) for s in steps}
        if len(dims) != 1:
            raise ValueError("steps of mixed dimension")
        return StepSet.of(steps)
    steps = []
    for tok in re.split(r"[,\s;]+", text.upper()):
        if not tok:
            continue
        if tok not in COMPASS:
            raise ValueError(f"unknown compass direction {tok!r}")
        steps.append(COMPASS[tok])
    return StepSet.of(steps, dim=2)


def reverse_steps(S: StepSet) -> StepSet:
    return StepSet(S.dim, frozenset(tuple(-c for c in s) for s in S.steps))


def swap_axes(S: StepSet, perm: Sequence[int]) -> StepSet:
    return StepSet(S.dim, frozenset(tuple(s[i] for i in perm) for s in S.steps))


# -- enumeration ---------------------------------------------------------------

def _shift_slices(h: int, n_src: int, n_dst: int) -> tuple[slice, slice] | None:
    """Source/destination index ranges along one axis for a step component h."""
    lo = max(0, -h)
    hi = min(n_src, n_dst - h)
    if hi <= lo:
        return None
    return slice(lo, hi), slice(lo + h, hi + h)


def _extents(S: StepSet, N: int) -> tuple[int, ...]:
    """Array side length per axis: an axis without positive steps never leaves 0."""
    return tuple(
        N + 1 if any(s[ax] > 0 for s in S.steps) else 1 for ax in range(S.dim)
    )


def _spec_mask(spec: Sequence[int], shape: tuple[int, ...]) -> tuple[slice, ...]:
    return tuple(slice(0, 1) if v == 0 else slice(None) for v in spec)


def _dp_primes(S: StepSet, N: int) -> list[int]:
    bits = (max(len(S), 1) ** max(N - 1, 0)).bit_length() + 2
    primes, total = [], 1
    for p in primes_below(_DP_PRIME_BOUND):
        primes.append(p)
        total *= p
        if total.bit_length() > bits:
            return primes
    raise AssertionError("unreachable")


def _check_spec(S: StepSet, spec: Sequence[int]) -> tuple[int, ...]:
    spec = tuple(int(v) for v in spec)
    if len(spec) != S.dim or any(v not in (0, 1) for v in spec):
        raise ValueError(f"specialization {spec} does not match dimension {S.dim}")
    return spec


@dataclass
class SeriesZ:
    """Truncated integer series a_0..a_{N-1} with provenance."""

    terms: list[int]
    steps: str = ""
    dim: int = 0
    spec: tuple[int, ...] = ()

    @property
    def N(self) -> int:
        return len(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __iter__(self):
        return iter(self.terms)


def _sum_mod(a: np.ndarray, p: int) -> int:
    # split into 29-bit halves so the int64 sums cannot overflow
    lo = int((a & ((1 << 29) - 1)).sum())
    hi = int((a >> 29).sum())
    return ((hi % p) * (1 << 29) + lo) % p


def _modular_totals(S: StepSet, N: int, specs: Sequence[tuple[int, ...]], primes: list[int]):
    """Yield, per prime, a (len(specs), N) array of specialized totals mod p."""
    shape = _extents(S, N)
    steps = S.sorted_steps()
    for p in primes:
        cur = np.ones((1,) * S.dim, dtype=np.int64)
        out = np.zeros((len(specs), N), dtype=np.int64)
        for n in range(N):
            for k, sp in enumerate(specs):
                out[k, n] = _sum_mod(cur[_spec_mask(sp, cur.shape)], p)
            if n == N - 1:
                break
            active = cur.shape
            new_active = tuple(min(a + 1, e) for a, e in zip(active, shape))
            nxt = np.zeros(new_active, dtype=np.int64)
            for s in steps:
                src, dst = [], []
                for ax, h in enumerate(s):
                    sl = _shift_slices(h, active[ax], new_active[ax])
                    if sl is None:
                        break
                    src.append(sl[0])
                    dst.append(sl[1])
                else:
                    nxt[tuple(dst)] += cur[tuple(src)]
            np.remainder(nxt, p, out=nxt)
            cur = nxt
        yield out


def expand_many(S: StepSet, N: int, specs: Sequence[Sequence[int]]) -> list[SeriesZ]:
    """Series for several specializations from one pass over the slices."""
    if N < 1:
        raise ValueError("N must be at least 1")
    specs = [_check_spec(S, sp) for sp in specs]
    if not S.steps:
        return [SeriesZ([1] + [0] * (N - 1), S.bits, S.dim, sp) for sp in specs]
    primes = _dp_primes(S, N)
    residues = list(_modular_totals(S, N, specs, primes))
    size = len(S)
    out = []
    for k, sp in enumerate(specs):
        terms = []
        bound = 1
        for n in range(N):
            a = crt_combine([int(r[k, n]) for r in residues], primes)
            if a > bound:
                raise ArithmeticError(
                    f"coefficient {n} = {a} exceeds |S|^n = {bound}; enumeration is inconsistent")
            terms.append(a)
            bound *= size
        out.append(SeriesZ(terms, S.bits, S.dim, sp))
    return out


def expand_counts(S: StepSet, N: int, spec: Sequence[int] | None = None) -> SeriesZ:
    """First N coefficients of the generating function specialized at ``spec``.

    A spec coordinate equal to 0 forces the walk to end on that coordinate
    hyperplane; 1 leaves it free. The default spec (1, ..., 1) counts all walks.
    """
    if spec is None:
        spec = (1,) * S.dim
    return expand_many(S, N, [spec])[0]


def walk_slices(S: StepSet, N: int) -> Iterator[np.ndarray]:
    """Exact slices f(n; .) for n = 0..N-1 as object arrays of side n+1 (small N only)."""
    steps = S.sorted_steps()
    cur = np.zeros((1,) * S.dim, dtype=object)
    cur[(0,) * S.dim] = 1
    for n in range(N):
        yield cur
        nxt = np.zeros((n + 2,) * S.dim, dtype=object)
        for s in steps:
            src, dst, ok = [], [], True
            for h in s:
                sl = _shift_slices(h, n + 1, n + 2)
                if sl is None:
                    ok = False
                    break
                src.append(sl[0])
                dst.append(sl[1])
            if ok:
                nxt[tuple(dst)] += cur[tuple(src)]
        cur = nxt


def brute_force_walks(S: StepSet, n: int, max_n: int = 12) -> int:
    """Count length-n walks staying in the nonnegative orthant by explicit generation."""
    if n > max_n:
        raise ValueError(
            f"brute force refused: n={n} > {max_n} would visit up to {len(S)}^{n} = "
            f"{len(S) ** n} step strings")
    steps = S.sorted_steps()
    count = 0

    def walk(pos: tuple[int, ...], left: int) -> None:
        nonlocal count
        if left == 0:
            count += 1
            return
        for s in steps:
            nxt = tuple(a + b for a, b in zip(pos, s))
            if min(nxt) >= 0:
                walk(nxt, left - 1)

    walk((0,) * S.dim, n)
    return count


def enumerate_stepsets(dim: int, max_size: int) -> list[StepSet]:
    """All subsets of the unit steps with at most max_size elements, including the empty set.

    Sorted by canonical bitstring.
    """
    units = unit_steps(dim)
    out = []
    for k in range(0, min(max_size, len(units)) + 1):
        for combo in itertools.combinations(range(len(units)), k):
            out.append(combo)
    bits = []
    for combo in out:
        b = ["0"] * len(units)
        for i in combo:
            b[i] = "1"
        bits.append("".join(b))
    bits.sort()
    return [StepSet.from_bits(b) for b in bits]


@dataclass
class StepClass:
    representative: StepSet
    members: list[StepSet] = field(default_factory=list)
    prefix: tuple[int, ...] = ()


def dedupe_by_prefix(sets: Sequence[StepSet], prefix_len: int,
                     spec: Sequence[int] | None = None) -> list[StepClass]:
    """Partition step sets by equal coefficient prefixes; representative = least bitstring."""
    if prefix_len < 1:
        raise ValueError("prefix_len must be positive")
    classes: dict[tuple[int, ...], StepClass] = {}
    for S in sets:
        sp = spec if spec is not None else (1,) * S.dim
        key = tuple(expand_counts(S, prefix_len, sp).terms)
        cls = classes.get(key)
        if cls is None:
            classes[key] = StepClass(S, [S], key)
        else:
            cls.members.append(S)
            if S.bits < cls.representative.bits:
                cls.representative = S
    return sorted(classes.values(), key=lambda c: c.representative.bits)


# -- series cache files ---------------------------------------------------------

def series_header(S: StepSet, spec: Sequence[int], N: int) -> str:
    return f"# steps={S.bits} dim={S.dim} spec={','.join(str(v) for v in spec)} N={N}"


def write_series(path: Path, series: SeriesZ, S: StepSet) -> None:
    """Write the cache file atomically (create a temporary sibling, then rename)."""
    path = Path(path)
    body = series_header(S, series.spec, series.N) + "\n" + "".join(f"{a}\n" for a in series.terms)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", newline="\n", encoding="ascii") as fh:
        fh.write(body)
    tmp.replace(path)


def read_series(path: Path) -> tuple[dict, list[int]]:
    with open(path, encoding="ascii", newline="") as fh:
        lines = fh.read().split("\n")
    header = lines[0]
    m = re.fullmatch(r"# steps=([01]+) dim=(\d) spec=([01,]+) N=(\d+)", header)
    if not m:
        raise ValueError(f"bad series header: {header!r}")
    meta = {"steps": m.group(1), "dim": int(m.group(2)),
            "spec": tuple(int(v) for v in m.group(3).split(",")), "N": int(m.group(4))}
    terms = [int(x) for x in lines[1:] if x != ""]
    if len(terms) != meta["N"]:
        raise ValueError(f"{path}: header says N={meta['N']} but file has {len(terms)} terms")
    return meta, terms
