#!/usr/bin/env python3
"""Check that every documented mutation of a rewrite pass is detected.

Usage: python3 scripts/run_mutations.py [--trials N] [--seed S]
"""
import argparse
import sys

from tlci.difftest import mutated_cases, run_mutation_campaign


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    undetected = False
    for case_id in mutated_cases():
        rep = run_mutation_campaign(case_id, trials=args.trials,
                                    master_seed=args.seed)
        status = "detected" if rep.disagreements else "NOT DETECTED"
        print(f"{case_id:28s} [{status}] after {rep.trials} trials")
        if not rep.disagreements:
            undetected = True
    return 1 if undetected else 0


if __name__ == "__main__":
    sys.exit(main())
