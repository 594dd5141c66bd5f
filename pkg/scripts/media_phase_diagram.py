#!/usr/bin/env python3
"""Phase diagram of the reduced-menu media choice.

Sweeps the (prior, precision) rectangle and records which source wins the
reduced menu, the two expected values, and the analytic crossing prior.
The flip line in the output matches (1/2) / (5/2 - 2*lambda) up to grid
resolution; plot the CSV with your tool of choice.

Usage: python scripts/media_phase_diagram.py --grid 80 > media_phase.csv
"""

from __future__ import annotations

import argparse
import sys

from rschoice.media import MediaParams, media_menu_choice, media_pstar


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=50, help="points per axis")
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    lines = ["p,lambda,chosen,u_own_moderate,v_opposite_extreme,pstar"]
    for j in range(args.grid):
        lam = 0.5 + 0.25 * (j + 0.5) / args.grid
        for i in range(args.grid):
            p = 0.5 * (i + 0.5) / args.grid
            out = media_menu_choice(MediaParams(p=p, lam=lam), "N")
            lines.append(
                f"{p:.8f},{lam:.8f},{out.chosen_source},"
                f"{out.expected_payoffs['sigmaL'][0]:.10f},"
                f"{out.expected_payoffs['sigmaRR'][1]:.10f},"
                f"{media_pstar(lam):.10f}"
            )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
