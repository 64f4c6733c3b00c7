#!/usr/bin/env python3
"""Run the marker-count bound campaigns across their parameter grids.

Usage: python3 scripts/run_bounds.py [--samples N] [--seed S]
"""
import argparse
import sys

from tlci.difftest import run_bound


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    grid = (
        [("gap-markers-pq", dict(a=a)) for a in (1, 2, 3)]
        + [("gap-markers-witness", dict(a=1, automaton="consec")),
           ("gap-markers-witness", dict(a=1, automaton="pq"))]
        + [("boundary-runs", dict(a=a, k=k)) for a in (1, 2) for k in (2, 3)]
        + [("unit-markers", dict(a=a, k=k)) for a in (1, 2) for k in (2, 3)]
    )
    failed = False
    for bound_id, kw in grid:
        rep = run_bound(bound_id, args.samples, master_seed=args.seed, **kw)
        status = "ok" if rep.violation is None else "FAIL"
        params = " ".join(f"{n}={v}" for n, v in kw.items())
        print(f"{bound_id:20s} {params:22s} max {rep.max_observed:2d} "
              f"<= bound {rep.bound:2d} [{status}]")
        if rep.violation:
            failed = True
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
