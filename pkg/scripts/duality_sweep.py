"""Sweep the functional equation over random P^1 / line configurations.

Besides the canonical-degree families this also tries alphas that violate
the degree constraint, to see whether the identity depends on it.

    python3 scripts/duality_sweep.py --count 200
"""

import argparse
import random
from fractions import Fraction

from mpv import scenarios
from mpv.stratconfig import ComponentData, StratifiedConfig, closed_strata_input
from mpv.zetapv import functional_equation_check


def free_alphas(c, rng):
    """Same strata, alphas drawn without any degree constraint."""
    comps = []
    for comp in c.components:
        a = Fraction(0)
        while a == 0:
            a = Fraction(rng.randint(-6 * c.m, 6 * c.m), c.m)
        comps.append(ComponentData(comp.id, alpha=a))
    return StratifiedConfig(c.n, c.m, tuple(comps), c.open_strata)


def holds(c):
    return functional_equation_check(closed_strata_input(c), c.alphas(), c.m).holds


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    args = ap.parse_args()
    rng = random.Random("duality-sweep")
    for family in ("p1", "p2lines"):
        canon = free = 0
        for seed in range(args.count):
            c = scenarios.random_canonical(seed, family)
            canon += holds(c)
            free += holds(free_alphas(c, rng))
        print(f"{family:8s} canonical degree: {canon}/{args.count} hold; "
              f"unconstrained alphas: {free}/{args.count} hold")


if __name__ == "__main__":
    main()
