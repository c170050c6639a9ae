"""Search small 2-marked diagrams for nonzero degree-two alternating sums.

Prints the first witness per slot and, with --all, counts every witness
with at most --max-chords chords grouped by the sums it produces.
"""
from __future__ import annotations

import argparse
from collections import Counter
from itertools import combinations

from vknot.moves import MarkedDiagram, alternating_sums, degree_two_witness, small_diagrams

SLOTS = ("00", "01", "10", "11")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-chords", type=int, default=3)
    ap.add_argument("--all", action="store_true")
    args = ap.parse_args()

    for s in SLOTS:
        w = degree_two_witness(slot=s, max_chords=args.max_chords)
        sums = ", ".join(f"{k}{s}: {p}" for k, p in w.sums.items())
        print(f"slot {s}: base {w.marked.base}  marks {list(w.marked.marks)}  ->  {sums}")

    if args.all:
        tally = Counter()
        for D in small_diagrams(args.max_chords):
            for marks in combinations(D.labels, 2):
                sums = alternating_sums(MarkedDiagram(D, marks), ["F00", "G00", "H00"])
                if any(not p.is_zero() for p in sums.values()):
                    tally[tuple(p.to_text() for p in sums.values())] += 1
        for key, count in tally.most_common(10):
            print(f"{count:6d}  F00={key[0]}  G00={key[1]}  H00={key[2]}")


if __name__ == "__main__":
    main()
