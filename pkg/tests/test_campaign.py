import json

import pytest

from walkclassifier import cli
from walkclassifier.campaign import (
    ALGEBRAIC,
    NONE_FOUND,
    CampaignConfig,
    build_classes,
    cached_series,
    check_tables,
    read_db,
    reversal_report,
    run_campaign,
    strip_volatile,
)
from walkclassifier.walks import StepSet, parse_steps

KREWERAS = parse_steps("W,S,NE")
OTHER = parse_steps("N,SE,W,SW")  # no equation within the bounds
FAST = dict(sieve_primes=10)


@pytest.fixture(scope="module")
def small_db(tmp_path_factory):
    path = tmp_path_factory.mktemp("db") / "walks.jsonl"
    summary = run_campaign(CampaignConfig(**FAST), path, [KREWERAS, OTHER])
    return path, summary


def test_restricted_campaign_records(small_db):
    path, summary = small_db
    assert summary.classes == 2 and summary.dfinite == 1 and summary.algebraic == 1
    recs = {r["steps"]: r for r in read_db(path)}
    k = recs[KREWERAS.bits]
    assert k["verdict"] == ALGEBRAIC and k["tag"] == "A151265"
    assert k["shapes"] == {"rec": [6, 4], "ode": [4, 9], "algeq": [6, 8]}
    assert k["sieves"]["ode"]["overall"] == "pass"
    assert k["asymptotics"]["alpha_exact"] == "-3/4"
    assert recs[OTHER.bits]["verdict"] == NONE_FOUND


def test_idempotent_rerun(small_db):
    path, _ = small_db
    before = path.read_bytes()
    summary = run_campaign(CampaignConfig(**FAST), path, [KREWERAS, OTHER])
    assert summary.computed == 0 and summary.reused == 2
    assert path.read_bytes() == before


def test_deterministic_records(small_db, tmp_path):
    path, _ = small_db
    other = tmp_path / "again.jsonl"
    run_campaign(CampaignConfig(**FAST), other, [KREWERAS, OTHER])
    a = [strip_volatile(r) for r in read_db(path)]
    b = [strip_volatile(r) for r in read_db(other)]
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_check_tables_on_subset(small_db):
    path, _ = small_db
    res = check_tables(read_db(path))
    assert res.compared == 1 and res.total == 0 and res.asymptotics_checked == 1


def test_check_tables_on_empty_db():
    res = check_tables([])
    assert len(res.missing) == 36 and res.total == 36


def test_check_tables_flags_wrong_shape(small_db):
    path, _ = small_db
    recs = read_db(path)
    for r in recs:
        if r["steps"] == KREWERAS.bits:
            r["shapes"]["ode"] = [5, 9]
    res = check_tables(recs, reverify=False)
    assert [m["field"] for m in res.mismatches] == ["ode"]


def test_reversal_report(small_db):
    path, _ = small_db
    rep = reversal_report(read_db(path))
    assert rep["dfinite_classes"] == 1
    assert rep["rows"][0]["reversed"] == parse_steps("E,N,SW").bits
    assert rep["counts"]["unknown"] == 1  # reverse Kreweras is not in this database


def test_trivial_class_is_dropped():
    classes, nsets = build_classes(2, [StepSet(2, frozenset()), parse_steps("S,W"), KREWERAS])
    assert nsets == 3 and len(classes) == 1


def test_series_cache(tmp_path):
    a = cached_series(KREWERAS, 40, str(tmp_path))
    assert len(list(tmp_path.iterdir())) == 1
    assert cached_series(KREWERAS, 30, str(tmp_path)) == a[:30]
    assert len(list(tmp_path.iterdir())) == 1


# -- command line ----------------------------------------------------------------

def test_cli_expand(capsys, tmp_path):
    assert cli.main(["expand", "--steps", "W,S,NE", "--terms", "15"]) == 0
    out = capsys.readouterr().out.split()
    assert out[-1] == "469795"
    target = tmp_path / "k.txt"
    assert cli.main(["expand", "--steps", "N", "--terms", "5", "--out", str(target)]) == 0
    assert target.read_text().splitlines()[1:] == ["1"] * 5
    assert cli.main(["expand", "--steps", "N", "--terms", "5", "--out", str(target)]) == 0
    assert cli.main(["expand", "--steps", "N", "--terms", "6", "--out", str(target)]) == cli.EXIT_CONFIG


def test_cli_guess_json(capsys):
    assert cli.main(["guess", "--steps", "W,S,NE", "--terms", "100", "--kind", "rec"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["rec"]["shape"] == [6, 4]


def test_cli_config_errors(tmp_path, capsys):
    assert cli.main(["classify", "--dim", "3"]) == cli.EXIT_CONFIG
    assert cli.main(["guess", "--steps", "Q"]) == cli.EXIT_CONFIG
    assert cli.main(["guess", "--steps", "N", "--margin", "3"]) == cli.EXIT_CONFIG
    bad = tmp_path / "c.toml"
    bad.write_text("nonsense_key = 4\n")
    assert cli.main(["guess", "--steps", "N", "--config", str(bad)]) == cli.EXIT_CONFIG


def test_cli_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "walkclassifier.toml"
    cfg.write_text("# desk settings\nterms = 100\nkind = \"rec\"\n")
    assert cli.main(["guess", "--steps", "W,S,NE", "--config", str(cfg)]) == 0
    assert json.loads(capsys.readouterr().out)["rec"]["shape"] == [6, 4]


def test_cli_check_tables_exit_codes(small_db, tmp_path, capsys):
    path, _ = small_db
    assert cli.main(["check-tables", "--db", str(path)]) == 0
    assert cli.main(["check-tables", "--db", str(tmp_path / "none.jsonl")]) == cli.EXIT_MISMATCH
    assert "mismatches 36" in capsys.readouterr().out


def test_cli_oracle_and_selftest(capsys):
    assert cli.main(["oracle", "--max-n", "4"]) == 0
    assert "0 disagreements" in capsys.readouterr().out
    assert cli.main(["selftest"]) == 0
