#!/usr/bin/env python3
"""Run the acceptance criteria outside pytest and print one line per criterion.

    python scripts/run_acceptance.py            # all criteria
    python scripts/run_acceptance.py 1 5 -v     # selected, with sub-checks
"""

import argparse
import sys

from hhfermat.acceptance import CRITERIA


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("which", nargs="*", type=int, help="criterion numbers (default: all)")
    ap.add_argument("-v", "--verbose", action="store_true", help="print every sub-check and derived value")
    args = ap.parse_args()
    ok = True
    for k in args.which or range(1, len(CRITERIA) + 1):
        cr = CRITERIA[k - 1]()
        print(cr.line(), flush=True)
        if args.verbose:
            print("\n".join(cr.details()))
            for name, good in cr.derived.items():
                print(f"  [derived {'ok' if good else 'FAIL'}] {name}")
        ok = ok and cr.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
