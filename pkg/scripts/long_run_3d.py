"""Full 3D campaign at N=400 (long-run mode; days of CPU time on one core).

Interrupt at will: records are appended as classes finish and a restart picks up
where the previous run stopped.
"""
import argparse

from walkclassifier.campaign import CampaignConfig, check_tables, read_db, reversal_report, run_campaign


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--db", default="runs/walks3d.jsonl")
    ap.add_argument("--cache", default=None)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    cfg = CampaignConfig.defaults(3, long_run=True, cache=args.cache, jobs=args.jobs)
    print(run_campaign(cfg, args.db).line())
    records = read_db(args.db)
    res = check_tables(records, dim=3)
    print(f"table rows compared {res.compared}, mismatches {res.total}")
    print("arrow reversal:", reversal_report(records)["counts"])


if __name__ == "__main__":
    main()
