"""Random blow-up chains on surface configurations; count PV mismatches.

    python3 scripts/blowup_sweep.py --surfaces 100 --depth 4
"""

import argparse
import random
from collections import Counter

from mpv import scenarios
from mpv.stratconfig import total_class
from mpv.surfblow import blowup, invariance_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--surfaces", type=int, default=100)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--seed", default="sweep")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally = Counter()
    for s in range(args.surfaces):
        c = scenarios.random_surface(s)
        for k in range(args.depth):
            center = scenarios.random_center(rng, c)
            after = blowup(c, center, f"X{k + 1}")
            tally[center.kind] += 1
            assert total_class(after) - total_class(c) == scenarios.L({1: 1}, c.m)
            rep = invariance_report(c, after)
            if rep.equal is None:
                tally["undefined"] += 1
            else:
                tally["equal" if rep.equal else "DIFFERENT"] += 1
            c = after
    for key in ("free", "curve", "point", "equal", "undefined", "DIFFERENT"):
        print(f"{key:10s} {tally[key]}")


if __name__ == "__main__":
    main()
