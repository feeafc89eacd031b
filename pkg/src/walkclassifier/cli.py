"""Command-line interface: ``walkclassifier <subcommand> ...``.

Exit codes: 0 success, 2 table mismatch, 3 some campaign classes failed, 4 configuration error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .asympt import analyze_asymptotics
from .campaign import (
    CampaignConfig,
    cached_series,
    check_tables,
    read_db,
    reversal_report,
    run_campaign,
)
from .certify import certify
from .guess import GUESSERS, GuessConfig, minimize
from .walks import (
    brute_force_walks,
    enumerate_stepsets,
    expand_counts,
    parse_steps,
    read_series,
    series_header,
    write_series,
)

EXIT_OK, EXIT_MISMATCH, EXIT_PARTIAL, EXIT_CONFIG = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


def read_config(path: str) -> dict:
    """key = value lines; '#' starts a comment; integers are converted."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key = value")
        k, v = (x.strip() for x in line.split("=", 1))
        v = v.strip('"\'')
        key = k.replace("-", "_")
        if v.lower() in ("true", "false"):
            out[key] = v.lower() == "true"
        else:
            try:
                out[key] = int(v)
            except ValueError:
                out[key] = v
    return out


def _spec(text: str | None, dim: int) -> tuple[int, ...]:
    if text is None:
        return (1,) * dim
    try:
        spec = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"bad --spec {text!r}") from None
    if len(spec) != dim or set(spec) - {0, 1}:
        raise ConfigError(f"--spec must have {dim} entries from {{0,1}}")
    return spec


def _steps(args):
    if not args.steps:
        raise ConfigError("--steps is required")
    try:
        return parse_steps(args.steps)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _terms_of(args) -> list[int]:
    if getattr(args, "series", None):
        return read_series(args.series)[1][: args.terms] if args.terms else read_series(args.series)[1]
    S = _steps(args)
    N = args.terms or 250
    spec = _spec(args.spec, S.dim)
    if spec == (1,) * S.dim:
        return cached_series(S, N, args.cache)
    return list(expand_counts(S, N, spec).terms)


def _guess_cfg(args, kind: str) -> GuessConfig:
    base = {"ode": GuessConfig.for_ode, "rec": GuessConfig.for_rec, "algeq": GuessConfig.for_algeq}[kind]
    kw = {}
    if args.max_order is not None:
        kw["max_order"] = args.max_order
    if args.max_degree is not None:
        kw["max_degree"] = args.max_degree
    if args.margin is not None:
        kw["margin"] = args.margin
    try:
        return base(**kw)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True, default=str))


# -- subcommands -----------------------------------------------------------------

def cmd_expand(args) -> int:
    S = _steps(args)
    N = args.terms or 15
    spec = _spec(args.spec, S.dim)
    series = expand_counts(S, N, spec)
    if args.out:
        out = Path(args.out)
        if out.exists():
            meta, _ = read_series(out)
            if (meta["steps"], meta["spec"], meta["N"]) != (S.bits, spec, N):
                print(f"error: {out} exists with a different header", file=sys.stderr)
                return EXIT_CONFIG
            return EXIT_OK
        write_series(out, series, S)
    else:
        print(series_header(S, spec, N))
        print("\n".join(str(a) for a in series.terms))
    return EXIT_OK


def _run_guesses(args, terms):
    kinds = ["rec", "ode", "algeq"] if args.kind == "all" else [args.kind]
    res = {k: GUESSERS[k](terms, _guess_cfg(args, k)) for k in kinds}
    for k in ("ode", "algeq"):
        if k in res and res[k]:
            res[k] = minimize([res[k]], terms)
    return res


def cmd_guess(args) -> int:
    terms = _terms_of(args)
    _emit({k: v.to_json() for k, v in _run_guesses(args, terms).items()})
    return EXIT_OK


def cmd_certify(args) -> int:
    terms = _terms_of(args)
    terms2 = None if args.series else cached_series(_steps(args), 2 * len(terms), args.cache)
    res = _run_guesses(args, terms)
    ode = res.get("ode")
    out = {k: certify(v, terms, terms2, ode=ode, K=args.primes or 20).to_json()
           for k, v in res.items() if v}
    _emit(out or {"status": "no equation found"})
    return EXIT_OK


def cmd_asympt(args) -> int:
    terms = _terms_of(args)
    rec = GUESSERS["rec"](terms, _guess_cfg(args, "rec"))
    if not rec:
        print("no recurrence found", file=sys.stderr)
        return EXIT_PARTIAL
    ode = GUESSERS["ode"](terms, GuessConfig.for_ode())
    rep = analyze_asymptotics(terms, rec.payload, ode.payload if ode else None,
                              M=args.asympt_terms or 8000)
    d = rep.fit.to_json()
    d.update({"numeric_rho": str(rep.numeric_rho), "step": str(rep.step), "terms": rep.terms})
    _emit(d)
    return EXIT_OK


def _campaign_config(args) -> CampaignConfig:
    kw = {}
    for name, key in (("terms", "N"), ("margin", "margin"), ("primes", "sieve_primes"),
                      ("jobs", "jobs"), ("cache", "cache"), ("asympt_terms", "asympt_terms")):
        v = getattr(args, name, None)
        if v is not None:
            kw[key] = v
    if args.max_order is not None or args.max_degree is not None:
        r, d = CampaignConfig.defaults(args.dim, args.long_run).ode_bounds
        kw["ode_bounds"] = (args.max_order or r, args.max_degree or d)
    try:
        cfg = CampaignConfig.defaults(args.dim, args.long_run, **kw)
        cfg.guess_config("ode")
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def cmd_classify(args) -> int:
    if args.dim not in (2, 3):
        raise ConfigError("--dim must be 2 or 3")
    if args.dim == 3 and not args.steps_list and not args.long_run:
        raise ConfigError("a full 3D campaign needs --long-run (or restrict with --steps)")
    cfg = _campaign_config(args)
    restrict = None
    if args.steps_list:
        try:
            restrict = [parse_steps(s) for s in args.steps_list]
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if any(S.dim != args.dim for S in restrict):
            raise ConfigError("step sets do not match --dim")
    summary = run_campaign(cfg, args.db, restrict)
    print(summary.line())
    return EXIT_PARTIAL if summary.errors else EXIT_OK


def cmd_check_tables(args) -> int:
    res = check_tables(read_db(args.db), dim=args.dim, reverify=not args.no_reverify)
    for m in res.mismatches:
        print(f"mismatch {m['tag']}: {m['field']} expected {m['expected']} got {m['got']}")
    for t in res.missing:
        print(f"missing {t}")
    for s in res.unexpected:
        print(f"unexpected equation for {s}")
    print(f"rows compared {res.compared}, asymptotics checked {res.asymptotics_checked}, "
          f"mismatches {res.total}")
    return EXIT_MISMATCH if res.total else EXIT_OK


def cmd_reversal_report(args) -> int:
    rep = reversal_report(read_db(args.db))
    print(f"D-finite classes {rep['dfinite_classes']}: reversed class "
          + ", ".join(f"{k} {v}" for k, v in rep["counts"].items()))
    if args.verbose:
        for r in rep["rows"]:
            print(f"  {r['steps']} -> {r['reversed']}: {r['reversed_state']}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    """Brute-force path counts against the DP for every nonempty step set."""
    max_n = args.max_n
    bad = 0
    sets = [S for S in enumerate_stepsets(args.dim, 3 ** args.dim - 1) if len(S)]
    for S in sets:
        dp = expand_counts(S, max_n + 1).terms
        bf = [brute_force_walks(S, n, max_n) for n in range(max_n + 1)]
        if dp != bf:
            bad += 1
            print(f"disagreement for {S.bits}: dp {dp} brute {bf}")
    print(f"{len(sets)} step sets, n <= {max_n}: {bad} disagreements")
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_selftest(args) -> int:
    from .fixtures import KREWERAS_TERMS
    S = parse_steps("W,S,NE")
    terms = list(expand_counts(S, 100).terms)
    checks = {
        "expansion": tuple(terms[:15]) == KREWERAS_TERMS,
        "recurrence": GUESSERS["rec"](terms).shape == (6, 4),
        "ode": GUESSERS["ode"](terms).shape == (4, 9),
        "algeq": GUESSERS["algeq"](terms).shape == (6, 8),
    }
    for k, ok in checks.items():
        print(f"{k}: {'ok' if ok else 'FAILED'}")
    return EXIT_OK if all(checks.values()) else EXIT_MISMATCH


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file supplying defaults for any flag")
    common.add_argument("--cache", help="series cache directory (overrides $WALKCLASSIFIER_CACHE)")
    common.add_argument("-v", "--verbose", action="store_true")

    seq = argparse.ArgumentParser(add_help=False)
    seq.add_argument("--steps", help="compass list, coordinate list or bitstring")
    seq.add_argument("--series", help="read terms from a series file instead of expanding")
    seq.add_argument("--terms", type=int, help="number of terms N")
    seq.add_argument("--spec", help="specialization, e.g. 1,1 or 0,1")

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--max-order", type=int)
    bounds.add_argument("--max-degree", type=int)
    bounds.add_argument("--margin", type=int)
    bounds.add_argument("--primes", type=int, help="good primes K for the arithmetic sieve")
    bounds.add_argument("--kind", choices=["rec", "ode", "algeq", "all"], default="all")

    p = argparse.ArgumentParser(prog="walkclassifier", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand", parents=[common, seq], help="write the series of a step set")
    s.add_argument("--out")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("guess", parents=[common, seq, bounds], help="guess equations")
    s.set_defaults(func=cmd_guess)

    s = sub.add_parser("certify", parents=[common, seq, bounds], help="guess and run the sieves")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("asympt", parents=[common, seq, bounds], help="fit rho, alpha, kappa")
    s.add_argument("--asympt-terms", type=int)
    s.set_defaults(func=cmd_asympt)

    s = sub.add_parser("classify", parents=[common, bounds], help="run a classification campaign")
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--terms", type=int)
    s.add_argument("--steps", dest="steps_list", action="append",
                   help="restrict to this step set (repeatable)")
    s.add_argument("--jobs", type=int)
    s.add_argument("--db", default="walks.jsonl")
    s.add_argument("--asympt-terms", type=int)
    s.add_argument("--long-run", action="store_true", help="full-scale 3D bounds (days of CPU time)")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("check-tables", parents=[common], help="compare a database with the tables")
    s.add_argument("--db", default="walks.jsonl")
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--no-reverify", action="store_true")
    s.set_defaults(func=cmd_check_tables)

    s = sub.add_parser("reversal-report", parents=[common], help="D-finiteness under arrow reversal")
    s.add_argument("--db", default="walks.jsonl")
    s.set_defaults(func=cmd_reversal_report)

    s = sub.add_parser("oracle", parents=[common], help="brute-force cross-check of the DP")
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--max-n", type=int, default=7)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("selftest", parents=[common], help="quick end-to-end check")
    s.set_defaults(func=cmd_selftest)
    return p


def _apply_config(args, parser) -> None:
    if not args.config:
        return
    for k, v in read_config(args.config).items():
        if not hasattr(args, k):
            raise ConfigError(f"unknown config key {k!r}")
        if getattr(args, k) in (None, False):
            setattr(args, k, v)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        _apply_config(args, parser)
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
