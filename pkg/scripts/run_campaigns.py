#!/usr/bin/env python3
"""Run every differential-testing campaign and print one line per case.

Usage: python3 scripts/run_campaigns.py [--trials N] [--seed S]
"""
import argparse
import sys

from tlci.difftest import run_equivalence, standard_cases


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    failed = False
    for case_id, case in standard_cases().items():
        rep = run_equivalence(case, trials=args.trials, master_seed=args.seed)
        status = "ok" if rep.disagreements == 0 else "FAIL"
        print(f"{case_id:24s} {rep.agreements}/{rep.trials} agree, "
              f"{rep.skips} skipped [{status}] digest={rep.digest[:12]}")
        if rep.disagreements:
            failed = True
            print("  counterexample:")
            for line in rep.counterexample.splitlines():
                print(f"    {line}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
