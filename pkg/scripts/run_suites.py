"""Run every verification suite and write one JSON summary.

    python scripts/run_suites.py --trials 200 --seed 1 --out suites.json
"""
from __future__ import annotations

import argparse
import json
import logging
import time

from vknot.verify import SUITES, run_suite

log = logging.getLogger("run_suites")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=None, help="per-suite trials (default: suite default)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suites", nargs="*", default=list(SUITES), choices=list(SUITES))
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    summary = {}
    for name in args.suites:
        t0 = time.perf_counter()
        res = run_suite(name, args.trials, args.seed)
        dt = time.perf_counter() - t0
        log.info("%-16s %s  %5d checks  %6.2fs", name, "PASS" if res.passed else "FAIL",
                 res.checked, dt)
        doc = res.to_dict()
        doc["seconds"] = round(dt, 3)
        summary[name] = doc
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=2)
    return 0 if all(d["passed"] for d in summary.values()) else 1


if __name__ == "__main__":
    raise SystemExit(main())
