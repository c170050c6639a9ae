"""Dump pairing tables (TSV) and invariants of K(n), K'(n) for a range of n."""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from vknot.cli import family_document


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--out", default="family_out")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    bad = 0
    for name in ("K", "Kprime"):
        for n in range(2, args.max_n + 1):
            doc = family_document(name, n)
            (out / f"{name}_{n}.tsv").write_text(doc["tables_tsv"], encoding="utf-8")
            (out / f"{name}_{n}.json").write_text(json.dumps(doc, indent=2), encoding="utf-8")
            flag = "ok" if not doc["mismatches"] else "MISMATCH"
            bad += bool(doc["mismatches"])
            print(f"{name}({n}) genus {doc['genus']}  W0 = {doc['polynomials']['W0']}  [{flag}]")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
