#!/usr/bin/env python3
"""Print the generator catalog for a rank/genus pair, with degree counts.

The rank-2 genus-2 fixed-determinant case is the classical six-generator
catalog; other inputs show how marked points and a varying determinant
grow the list.
"""

import argparse
from fractions import Fraction

from projchar.projclass import generator_catalog
from projchar.univdet import ParabolicDatum, ParabolicPoint


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("rank", type=int, nargs="?", default=2)
    parser.add_argument("genus", type=int, nargs="?", default=2)
    parser.add_argument(
        "--full-flag-point",
        metavar="LABEL",
        help="add one marked point with a full flag (all multiplicities 1)",
    )
    parser.add_argument(
        "--varying-det",
        action="store_true",
        help="include the degree-1 slants of c1",
    )
    args = parser.parse_args()

    points = ()
    if args.full_flag_point:
        ms = (1,) * args.rank
        ws = tuple(Fraction(i, args.rank) for i in range(args.rank))
        points = (ParabolicPoint(args.full_flag_point, ms, ws),)
    entries = generator_catalog(
        args.rank, args.genus, ParabolicDatum(points), fixed_det=not args.varying_det
    )
    for name, degree in entries:
        print(f"{name} degree={degree}")
    counts: dict[int, int] = {}
    for _, degree in entries:
        counts[degree] = counts.get(degree, 0) + 1
    summary = ", ".join(f"{d}: {c}" for d, c in sorted(counts.items()))
    print(f"total {len(entries)} generators ({summary})")


if __name__ == "__main__":
    main()
