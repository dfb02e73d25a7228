#!/usr/bin/env python3
"""Survey empirical stabilization thresholds over a random instance suite.

    python scripts/survey_thresholds.py --n 200 --seed 1 --csv thresholds.csv
"""
import argparse
import csv
import sys
import time
from collections import Counter

from sumsetgrowth.growth import detect_stabilization, slice_thresholds
from sumsetgrowth.instances import random_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--seed", type=int, default=20240611)
    ap.add_argument("--csv", help="write one row per instance")
    args = ap.parse_args()

    rows = []
    t0 = time.perf_counter()
    for i, inst in enumerate(random_suite(args.n, args.seed)):
        p = inst.problem
        T = 30 if p.r == 1 else 10
        rep = detect_stabilization(p, T)
        tau = rep.fitted.thresholds[0] if rep.stabilized else None
        u = slice_thresholds(rep.table, p.k) if rep.stabilized else None
        rows.append({
            "index": i,
            "family": inst.family,
            "r": p.r,
            "k": " ".join(map(str, p.k)),
            "status": rep.status,
            "tau": tau,
            "relaxed": " ".join(map(str, rep.relaxed_thresholds or ())),
            "slice": " ".join(map(str, u or ())),
            "polynomial": str(rep.fitted) if rep.stabilized else "",
        })

    by_family = Counter()
    worst = Counter()
    for row in rows:
        by_family[row["family"], row["status"]] += 1
        if row["tau"] is not None:
            worst[row["family"]] = max(worst[row["family"]], row["tau"])
    for (fam, status), n in sorted(by_family.items()):
        print(f"{fam:8s} {status:15s} {n:4d}   max tau {worst[fam]}")
    print(f"{len(rows)} instances in {time.perf_counter() - t0:.1f}s")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
