"""Replay the three blow-ups over the two-line plane and print each stage.

    python3 scripts/figure2_chain.py [--hodge]
"""

import argparse

from mpv.scenarios import figure2chain
from mpv.surfblow import invariance_report
from mpv.zetapv import log_poles, pv, zeta


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--hodge", action="store_true", help="use the Hodge realization")
    args = ap.parse_args()
    realization = "hodge" if args.hodge else "motivic"

    stages = figure2chain()
    for i, stage in enumerate(stages):
        c = stage.config
        coeffs = ", ".join(f"{comp.id}={comp.alpha - 1}" for comp in c.components)
        print(f"{stage.name:6s} centre={str(stage.center or '-'):12s} div: {coeffs}")
        poles = log_poles(c)
        if poles:
            print(f"       PV not defined (poles along {', '.join(poles)})")
            print(f"       zeta = {zeta(c, realization).render()}")
        else:
            print(f"       PV = {pv(c, realization).render()}")
        if i:
            print(f"       vs {stages[i - 1].name}: {invariance_report(stages[i - 1].config, c, realization)}")


if __name__ == "__main__":
    main()
