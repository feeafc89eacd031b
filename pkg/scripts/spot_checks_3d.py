"""Desk-scale 3D checks: displayed sequences, two tabulated classes, the stubborn sets."""
import argparse
import time

from walkclassifier.campaign import CampaignConfig, read_db, run_campaign
from walkclassifier.fixtures import SEQUENCES_3D, STUBBORN_3D, row_by_tag
from walkclassifier.walks import StepSet, expand_counts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--db", default="runs/spot3d.jsonl")
    ap.add_argument("--cache", default=None)
    args = ap.parse_args()

    for tag, (bits, terms) in SEQUENCES_3D.items():
        got = tuple(expand_counts(StepSet.from_bits(bits), len(terms)).terms)
        print(f"{tag} first {len(terms)} terms {'ok' if got == terms else 'DIFFER'}")

    cfg = CampaignConfig.defaults(3, cache=args.cache)
    targets = {tag: row_by_tag(tag).steps for tag in ("A149847", "A025237")}
    targets.update({tag: (SEQUENCES_3D[tag][0],) for tag in STUBBORN_3D})
    for tag, bits in targets.items():
        t0 = time.perf_counter()
        run_campaign(cfg, args.db, [StepSet.from_bits(b) for b in bits])
        rec = next(r for r in read_db(args.db) if set(bits) & set(r["members"]))
        print(f"{tag}: {rec['verdict']}, shapes {rec['shapes']} ({time.perf_counter() - t0:.0f} s)")


if __name__ == "__main__":
    main()
