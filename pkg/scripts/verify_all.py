"""Run the ten acceptance checks and print one line each (exit 1 on any FAIL).

With --details the evidence of failing checks is dumped as JSON.
"""
import argparse
import json
import sys

from dinfty.acceptance import run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--details", action="store_true")
    args = ap.parse_args()
    results = run_all(args.seed)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    if args.details:
        for r in failed:
            print(json.dumps({r.number: r.details}, ensure_ascii=False, indent=2, default=str))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
