#!/usr/bin/env python3
"""Compare the cup-table engine with the Clifford oracle on every pair of a group.

    python scripts/oracle_compare.py --n 3 --N 3 --gen "(1,2)" --gen "(1,2,3)"
    python scripts/oracle_compare.py --n 4 --N 4 --gen J --gen "(1,2)(3,4)" --frame eigen

Prints one line per disagreeing or inconclusive pair and a JSON summary.
"""

import argparse
import json
import sys

from hhfermat.clifford_oracle import CliffordOracle
from hhfermat.cuptable import CupEngine
from hhfermat.fixedlocus import Fermat
from hhfermat.group import Group, parse_element


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--N", type=int, required=True)
    ap.add_argument("--gen", action="append", required=True)
    ap.add_argument("--L", type=int)
    ap.add_argument("--frame", choices=("koszul", "eigen"), default="koszul")
    args = ap.parse_args()
    G = Group([parse_element(g, args.N, args.n) for g in args.gen], args.N, args.n)
    fm = Fermat(args.n, args.N, args.L or G.eigen_order())
    E, O = CupEngine(fm), CliffordOracle(fm, frame=args.frame)
    agree = disagree = inconclusive = 0
    for u in G:
        for v in G:
            res = O.sigma(u, v)
            mine = E.sigma_class(u, v)
            if not res.conclusive:
                inconclusive += 1
                print(f"inconclusive {u} {v}")
            if res.sigma == mine:
                agree += 1
            else:
                disagree += 1
                print(f"differ {u} {v}: engine {mine} oracle {res.sigma}")
    total = agree + disagree
    print(json.dumps({"group_order": len(G), "L": fm.L, "frame": args.frame, "pairs": total, "agree": agree,
                      "disagree": disagree, "inconclusive": inconclusive, "inconclusive_rate": inconclusive / max(1, total)}))
    return 0 if disagree == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
