"""Classification campaigns: per-class pipeline, JSON-lines result database and table checks."""
from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import mpmath

from . import __version__
from .arith.bivariate import PolyQ2
from .arith.polyq import PolyQ
from .asympt import ClosedFormExpr, analyze_asymptotics
from .certify import FAIL, certify
from .fixtures import TABLE_2D, TABLE_3D_ALGEBRAIC, TABLE_3D_TRANSCENDENTAL, TableRow
from .guess import GuessConfig, GuessResult, algeq_residual, guess_algeq, guess_ode, guess_rec, minimize
from .ore.operators import DiffOp, RecOp, apply_diffop, apply_recop
from .walks import (
    StepClass,
    StepSet,
    dedupe_by_prefix,
    enumerate_stepsets,
    expand_counts,
    read_series,
    reverse_steps,
    write_series,
)

log = logging.getLogger(__name__)

CACHE_ENV = "WALKCLASSIFIER_CACHE"

ALGEBRAIC = "algebraic"
TRANSCENDENTAL = "D-finite-transcendental-candidate"
NONE_FOUND = "none-found"

PREFIX_LEN = 30


@dataclass(frozen=True)
class CampaignConfig:
    dim: int = 2
    N: int = 250
    rec_bounds: tuple[int, int] = (10, 20)
    ode_bounds: tuple[int, int] = (6, 24)
    alg_bounds: tuple[int, int] = (12, 20)
    margin: int = 32
    prime_budget: int = 80
    sieve_primes: int = 20
    extension_factor: int = 2
    asympt_terms: int = 8000
    asympt_tol: float = 1e-4
    jobs: int = 1
    cache: str | None = None

    @classmethod
    def defaults(cls, dim: int, long_run: bool = False, **kw) -> "CampaignConfig":
        if dim == 3:
            base = {"N": 128, "ode_bounds": (10, 75) if long_run else (6, 30)}
            if long_run:
                base["N"] = 400
            return cls(dim=3, **{**base, **kw})
        return cls(dim=dim, **kw)

    def guess_config(self, kind: str) -> GuessConfig:
        r, d = {"rec": self.rec_bounds, "ode": self.ode_bounds, "algeq": self.alg_bounds}[kind]
        return GuessConfig(max_order=r, max_degree=d, margin=self.margin,
                           prime_budget=self.prime_budget)

    def bounds_key(self) -> dict:
        """Everything that can change a record; execution-only knobs are left out."""
        d = asdict(self)
        for k in ("jobs", "cache"):
            d.pop(k)
        return d


def record_key(bits: str, cfg: CampaignConfig) -> str:
    blob = json.dumps({"steps": bits, "bounds": cfg.bounds_key(), "version": __version__},
                      sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


# -- series with an on-disk cache ----------------------------------------------

def cache_dir(explicit: str | None = None) -> Path | None:
    d = explicit or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def cached_series(S: StepSet, N: int, cache: str | None = None) -> list[int]:
    spec = (1,) * S.dim
    root = cache_dir(cache)
    if root is None:
        return list(expand_counts(S, N, spec).terms)
    root.mkdir(parents=True, exist_ok=True)
    # any cached file with at least N terms serves
    for path in sorted(root.glob(f"{S.bits}_N*.txt")):
        meta, terms = read_series(path)
        if meta["steps"] == S.bits and meta["spec"] == spec and meta["N"] >= N:
            return terms[:N]
    series = expand_counts(S, N, spec)
    write_series(root / f"{S.bits}_N{N}.txt", series, S)
    return list(series.terms)


# -- payload (de)serialization ---------------------------------------------------

def payload_to_json(g: GuessResult | None):
    return g.to_json() if g is not None else None


def payload_from_json(d: dict | None):
    if not d or "payload" not in d:
        return None
    p = d["payload"]
    if d["kind"] == "ode":
        return DiffOp.from_json(p)
    if d["kind"] == "rec":
        return RecOp.from_json(p)
    return PolyQ2([PolyQ([Fraction(x) for x in row]) for row in p["coeffs"]])


def annihilates(kind: str, payload, terms: Sequence[int]) -> bool:
    if kind == "ode":
        return not any(apply_diffop(payload, terms))
    if kind == "rec":
        return not any(apply_recop(payload, terms))
    return not any(algeq_residual(payload, terms))


# -- fixtures -------------------------------------------------------------------

def fixture_rows(dim: int) -> tuple[TableRow, ...]:
    return TABLE_2D if dim == 2 else TABLE_3D_ALGEBRAIC + TABLE_3D_TRANSCENDENTAL


def match_fixture(dim: int, prefix: Sequence[int], members: Iterable[str]) -> TableRow | None:
    members = set(members)
    hits = [r for r in fixture_rows(dim) if tuple(prefix[: len(r.first_terms)]) == r.first_terms]
    if len(hits) > 1:
        hits = [r for r in hits if members & set(r.steps)] or hits
    return hits[0] if hits else None


# -- per-class pipeline --------------------------------------------------------

def _shape(g: GuessResult | None):
    return list(g.shape) if g else None


def _fmt(x, digits: int = 30) -> str:
    return mpmath.nstr(x, digits)


def classify_class(cls: StepClass, cfg: CampaignConfig, scope: str = "full") -> dict:
    """Expand, guess, minimize, certify and fit one class; never raises."""
    S = cls.representative
    members = sorted(m.bits for m in cls.members)
    tag = match_fixture(S.dim, cls.prefix, members)
    rec = {
        "key": record_key(S.bits, cfg), "steps": S.bits, "dim": S.dim, "representative": True,
        "members": members, "spec": [1] * S.dim, "N": cfg.N, "scope": scope,
        "bounds": cfg.bounds_key(), "tag": tag.tag if tag else None, "version": __version__,
    }
    t0 = time.time()
    try:
        rec.update(_pipeline(S, cfg))
        rec["status"] = "ok"
    except Exception as exc:  # recorded, never fatal to the campaign
        log.exception("class %s failed", S.bits)
        rec.update({"status": "error", "error": f"{type(exc).__name__}: {exc}", "verdict": NONE_FOUND})
    rec["elapsed"] = round(time.time() - t0, 3)
    rec["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return rec


def _pipeline(S: StepSet, cfg: CampaignConfig) -> dict:
    terms = cached_series(S, cfg.N, cfg.cache)
    g = {
        "rec": guess_rec(terms, cfg.guess_config("rec")),
        "ode": guess_ode(terms, cfg.guess_config("ode")),
        "algeq": guess_algeq(terms, cfg.guess_config("algeq")),
    }
    for kind in ("ode", "algeq"):
        if g[kind]:
            g[kind] = minimize([g[kind]], terms)
    out: dict = {"shapes": {k: _shape(v) for k, v in g.items()},
                 "equations": {k: payload_to_json(v) for k, v in g.items() if v},
                 "sieves": {}, "asymptotics": None}
    if not any(g.values()):
        out["verdict"] = NONE_FOUND
        return out

    terms2 = cached_series(S, cfg.extension_factor * cfg.N, cfg.cache)
    ode = g["ode"] if g["ode"] else None
    shared = None
    for kind in ("ode", "rec", "algeq"):
        if g[kind]:
            rep = certify(g[kind], terms, terms2, ode=ode, K=cfg.sieve_primes, ode_verdicts=shared)
            if kind == "ode":
                shared = (rep.analytic, rep.arithmetic)
            out["sieves"][kind] = rep.to_json()
    failed = [k for k, v in out["sieves"].items() if v["overall"] == FAIL]
    if failed:
        out["verdict"] = NONE_FOUND
        out["certification_failed"] = failed
        return out
    out["verdict"] = ALGEBRAIC if g["algeq"] else TRANSCENDENTAL

    if g["rec"] and cfg.asympt_terms:
        try:
            rep = analyze_asymptotics(terms, g["rec"].payload, ode.payload if ode else None,
                                      M=cfg.asympt_terms)
            f = rep.fit
            out["asymptotics"] = {
                "rho": _fmt(f.rho), "rho_exact": str(f.rho_exact) if f.rho_exact else None,
                "numeric_rho": _fmt(rep.numeric_rho), "alpha": _fmt(f.alpha),
                "alpha_exact": str(f.alpha_exact), "kappa": _fmt(f.kappa),
                "kappa_digits": f.kappa_digits, "step": str(rep.step), "terms": rep.terms,
                "log_residual": _fmt(f.log_residual, 6),
            }
        except (ArithmeticError, ValueError) as exc:
            out["asymptotics"] = {"error": f"{type(exc).__name__}: {exc}"}
    return out


# -- campaign driver -----------------------------------------------------------

def is_trivial(cls: StepClass) -> bool:
    """The class of step sets that can never leave the origin: 1, 0, 0, ..."""
    return not any(cls.prefix[1:])


def build_classes(dim: int, restrict: Sequence[StepSet] | None = None,
                  prefix_len: int = PREFIX_LEN) -> tuple[list[StepClass], int]:
    """Deduplicated classes (trivial class removed) and the number of sets considered."""
    sets = list(restrict) if restrict else enumerate_stepsets(dim, 3 ** dim - 1)
    classes = [c for c in dedupe_by_prefix(sets, prefix_len) if not is_trivial(c)]
    return classes, len(sets)


def read_db(path: str | Path) -> list[dict]:
    path = Path(path)
    if not path.exists():
        return []
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def _dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def _run_one(args):
    cls, cfg, scope = args
    return classify_class(cls, cfg, scope)


@dataclass
class CampaignSummary:
    step_sets: int
    classes: int
    computed: int
    reused: int
    dfinite: int
    algebraic: int
    errors: int
    counts: dict = field(default_factory=dict)

    def line(self) -> str:
        return (f"step sets {self.step_sets}, classes {self.classes}, D-finite {self.dfinite}, "
                f"algebraic {self.algebraic}, transcendental {self.dfinite - self.algebraic}, "
                f"errors {self.errors} (computed {self.computed}, reused {self.reused})")


def run_campaign(cfg: CampaignConfig, db: str | Path, restrict: Sequence[StepSet] | None = None,
                 prefix_len: int = PREFIX_LEN) -> CampaignSummary:
    """Classify every class, appending new records to ``db`` in class order.

    Records already present under the same key are reused untouched.
    """
    classes, nsets = build_classes(cfg.dim, restrict, prefix_len)
    scope = "subset" if restrict else "full"
    existing = {r["key"]: r for r in read_db(db)}
    todo = [c for c in classes if record_key(c.representative.bits, cfg) not in existing]
    Path(db).parent.mkdir(parents=True, exist_ok=True)
    new: list[dict] = []
    with open(db, "a", encoding="utf-8", newline="\n") as fh:
        for rec in _map(todo, cfg, scope):
            fh.write(_dumps(rec) + "\n")
            fh.flush()
            new.append(rec)
    records = [existing.get(record_key(c.representative.bits, cfg)) for c in classes]
    by_key = {r["key"]: r for r in new}
    records = [r or by_key[record_key(c.representative.bits, cfg)] for r, c in zip(records, classes)]
    dfin = sum(r["verdict"] != NONE_FOUND for r in records)
    alg = sum(r["verdict"] == ALGEBRAIC for r in records)
    errs = sum(r.get("status") == "error" for r in records)
    return CampaignSummary(nsets, len(classes), len(new), len(classes) - len(new), dfin, alg, errs)


def _map(classes: list[StepClass], cfg: CampaignConfig, scope: str) -> Iterator[dict]:
    jobs = [(c, cfg, scope) for c in classes]
    if cfg.jobs <= 1:
        yield from map(_run_one, jobs)
        return
    with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
        # map keeps class order, so the database layout does not depend on scheduling
        yield from ex.map(_run_one, jobs)


def strip_volatile(rec: dict) -> dict:
    return {k: v for k, v in rec.items() if k not in ("timestamp", "elapsed")}


# -- table comparison ------------------------------------------------------------

@dataclass
class TableCheck:
    compared: int = 0
    mismatches: list[dict] = field(default_factory=list)
    missing: list[str] = field(default_factory=list)
    unexpected: list[str] = field(default_factory=list)
    asymptotics_checked: int = 0

    @property
    def total(self) -> int:
        return len(self.mismatches) + len(self.missing) + len(self.unexpected)

    def to_json(self) -> dict:
        return {"compared": self.compared, "mismatches": self.mismatches, "missing": self.missing,
                "unexpected_equations": self.unexpected,
                "asymptotics_checked": self.asymptotics_checked, "total": self.total}


def _tuple(x):
    return tuple(x) if x is not None else None


def _find_record(row: TableRow, records: list[dict]) -> dict | None:
    for r in records:
        if r.get("tag") == row.tag or set(row.steps) & set(r.get("members", [])):
            return r
    return None


def check_tables(records: list[dict], dim: int = 2, tol: float = 1e-4,
                 reverify: bool = True) -> TableCheck:
    """Compare records against the embedded tables.

    Rows absent from the database count as mismatches, except for databases
    produced by a restricted run, where only the rows present are compared.
    """
    records = [r for r in records if r.get("dim") == dim]
    subset = any(r.get("scope") == "subset" for r in records)
    out = TableCheck()
    matched = set()
    for row in fixture_rows(dim):
        r = _find_record(row, records)
        if r is None:
            if not subset:
                out.missing.append(row.tag)
            continue
        matched.add(r["key"])
        out.compared += 1
        _compare_row(row, r, out, tol, reverify)
    for r in records:
        if r["key"] not in matched and r.get("verdict", NONE_FOUND) != NONE_FOUND:
            out.unexpected.append(r["steps"])
    return out


def _compare_row(row: TableRow, r: dict, out: TableCheck, tol: float, reverify: bool) -> None:
    def bad(field_, expected, got):
        out.mismatches.append({"tag": row.tag, "field": field_, "expected": expected, "got": got})

    shapes = r.get("shapes") or {}
    expected_verdict = ALGEBRAIC if row.algebraic else TRANSCENDENTAL
    if r.get("verdict") != expected_verdict:
        bad("verdict", expected_verdict, r.get("verdict"))
    for kind, want in (("rec", row.rec), ("ode", row.ode), ("algeq", row.alg)):
        got = _tuple(shapes.get(kind))
        if got != want:
            bad(kind, want, got)
    if reverify and r.get("equations"):
        S = StepSet.from_bits(r["steps"])
        terms = list(expand_counts(S, r["N"]).terms)
        for kind, d in r["equations"].items():
            if not annihilates(kind, payload_from_json(d), terms):
                bad(f"{kind}-payload", "annihilates fresh expansion", "residual nonzero")
    if row.kappa is not None:
        _compare_asymptotics(row, r.get("asymptotics"), bad, tol, out)


def _compare_asymptotics(row: TableRow, a: dict | None, bad, tol: float, out: TableCheck) -> None:
    if not a or "error" in a:
        bad("asymptotics", "fit", a)
        return
    out.asymptotics_checked += 1
    with mpmath.workprec(160):
        for name, expr in (("rho", row.rho), ("kappa", row.kappa)):
            want = ClosedFormExpr(expr).evaluate()
            got = mpmath.mpf(a[name])
            if abs(got - want) > tol * max(1, abs(want)):
                bad(name, mpmath.nstr(want, 12), a[name][:14])
    if a["alpha_exact"] != row.alpha:
        bad("alpha", row.alpha, a["alpha_exact"])


# -- reversal report ---------------------------------------------------------------

def reversal_report(records: list[dict]) -> dict:
    """For every D-finite class, whether the class of the reversed step set is D-finite too."""
    owner = {}
    for r in records:
        for m in r.get("members", []):
            owner[m] = r
    rows = []
    for r in records:
        if r.get("verdict", NONE_FOUND) == NONE_FOUND:
            continue
        rev = reverse_steps(StepSet.from_bits(r["steps"])).bits
        other = owner.get(rev)
        if other is None:
            state = "unknown"  # reversed set not in this database (or in the trivial class)
        elif other["verdict"] == NONE_FOUND:
            state = "none-found"
        else:
            state = "d-finite"
        rows.append({"steps": r["steps"], "reversed": rev, "reversed_state": state,
                     "self_reversed": rev in r.get("members", [])})
    counts = {s: sum(x["reversed_state"] == s for x in rows) for s in ("d-finite", "none-found", "unknown")}
    return {"dfinite_classes": len(rows), "counts": counts, "rows": rows}
