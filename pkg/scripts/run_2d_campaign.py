"""Classify every 2D step set and compare the outcome with the embedded table.

    python scripts/run_2d_campaign.py --db runs/walks2d.jsonl --cache runs/series

Rerunning with the same database only computes classes that are not yet there.
"""
import argparse
import time

from walkclassifier.campaign import CampaignConfig, check_tables, read_db, reversal_report, run_campaign


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--db", default="runs/walks2d.jsonl")
    ap.add_argument("--cache", default=None)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    t0 = time.perf_counter()
    summary = run_campaign(CampaignConfig(cache=args.cache, jobs=args.jobs), args.db)
    print(summary.line())
    print(f"campaign wall time {time.perf_counter() - t0:.0f} s")

    records = read_db(args.db)
    res = check_tables(records)
    print(f"table rows compared {res.compared}, mismatches {res.total}")
    for m in res.mismatches:
        print("  ", m)
    slow = sorted(records, key=lambda r: -r["elapsed"])[:5]
    print("slowest classes:", ", ".join(f"{r['tag'] or r['steps']} {r['elapsed']:.0f}s" for r in slow))
    rep = reversal_report(records)
    print("arrow reversal:", rep["counts"])


if __name__ == "__main__":
    main()
