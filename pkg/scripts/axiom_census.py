#!/usr/bin/env python3
"""Census of axiom profiles over all choice functions on a small ground set.

Counts, for every subset of {Exp, NRS, IR, SPR, IIA}, how many total
choice functions exhibit exactly that profile.  On four options the run
covers all 20 736 functions in a couple of seconds and shows how thin the
rationalizable layers are.

Usage: python scripts/axiom_census.py --size 4
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from rschoice.axioms import check_all
from rschoice.core import GroundSet, enumerate_choice_functions
from rschoice.revealed import reveal


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=3, choices=(2, 3, 4))
    args = parser.parse_args()

    ground = GroundSet(tuple("abcd"[: args.size]))
    census: Counter[tuple[str, ...]] = Counter()
    total = 0
    for cf in enumerate_choice_functions(ground):
        total += 1
        verdicts = check_all(cf, report=reveal(cf), cap=1)
        profile = tuple(v.axiom for v in verdicts if v.holds)
        census[profile] += 1
    sys.stdout.write(f"total functions: {total}\n")
    for profile, count in sorted(census.items(), key=lambda kv: (-len(kv[0]), kv[0])):
        label = "+".join(profile) if profile else "(none)"
        sys.stdout.write(f"{label}: {count}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
