#!/usr/bin/env python3
"""Minority share and effort responses to the repression intensity.

For each policy level the script reports the analytic rest point, the
effort of both sides at that rest point, and (optionally) the simulated
endpoint as a cross-check.  The rest point dips until the reactance
threshold and rises beyond it: repression past the threshold grows the
minority.  Past the corner-crossing policy the budget cap binds and the
closed form stops applying; the simulated column shows the true endpoint
peeling away from it there.

Usage: python scripts/culture_policy_sweep.py --g-max 8 --points 60 --simulate
"""

from __future__ import annotations

import argparse
import sys

from rschoice.culture import (
    CultureParams,
    culture_dynamics,
    effort,
    steady_state,
    transmission_value,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--beta", type=float, default=2.0)
    parser.add_argument("--g-hat", type=float, default=2.0)
    parser.add_argument("--v-hat", type=float, default=2.0)
    parser.add_argument("--lambda-r", type=float, default=1.5)
    parser.add_argument("--q0", type=float, default=0.3)
    parser.add_argument("--g-max", type=float, default=8.0)
    parser.add_argument("--points", type=int, default=40)
    parser.add_argument("--simulate", action="store_true",
                        help="integrate the flow and append the endpoint")
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    header = "g,q_star,d_minority,d_majority"
    if args.simulate:
        header += ",q_simulated"
    lines = [header]
    for k in range(args.points):
        g = 1.0 + (args.g_max - 1.0) * k / (args.points - 1)
        params = CultureParams(
            beta=args.beta, g_hat=args.g_hat, v_hat=args.v_hat,
            lambda_r=args.lambda_r, g=g, q0=args.q0,
        )
        q_star = steady_state(params)
        value = transmission_value(g, args.g_hat, args.v_hat, args.lambda_r)
        d_m = effort(args.beta, value, g, q_star)
        d_mj = effort(args.beta, args.v_hat, 1.0, 1.0 - q_star)
        row = f"{g:.6f},{q_star:.10f},{d_m:.10f},{d_mj:.10f}"
        if args.simulate:
            row += f",{culture_dynamics(params, record_every=10_000).q_end:.10f}"
        lines.append(row)
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
