#!/usr/bin/env python3
"""Compare the low gap set of hA (A = {0} u gens) with the numerical semigroup
generated by gens, for every coprime generator set drawn from [2, max].

    python scripts/frobenius_structure.py --max 12 --size 3
"""
import argparse
import itertools
import sys
from functools import reduce
from math import gcd

from sumsetgrowth.structure import frobenius_table, normalize, structure_sets


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max", type=int, default=12)
    ap.add_argument("--size", type=int, default=3)
    ap.add_argument("--max-threshold", type=int, default=200)
    args = ap.parse_args()

    mismatches = 0
    total = 0
    print("gens,frobenius,gaps,c,|C|,d,|D|,Delta,h_star")
    for gens in itertools.combinations(range(2, args.max + 1), args.size):
        if reduce(gcd, gens) != 1:
            continue
        total += 1
        f, gaps = frobenius_table(gens)
        rep = structure_sets(normalize([0], [[0, *gens]]), args.max_threshold)
        if max(rep.G_low, default=-1) != f or len(rep.G_low) != gaps:
            mismatches += 1
        print(" ".join(map(str, gens)), f, gaps, rep.c, len(rep.C), rep.d, len(rep.D),
              rep.delta, rep.h_star[0], sep=",")
    print(f"# {total} generator sets, {mismatches} mismatches", file=sys.stderr)
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
