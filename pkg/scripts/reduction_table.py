#!/usr/bin/env python3
"""Print the reduction table lambda, P for every rank up to a bound.

Each line records the identity a_k = P + lambda * c_k, with P in terms of
c_1 and the lower canonical classes.  The output is stable and is frozen
under tests/golden/reduction_table.txt.
"""

import argparse

from projchar.projclass import lambda_p
from projchar.qpoly import format_fraction


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=6)
    args = parser.parse_args()
    for n in range(2, args.max_rank + 1):
        for k in range(2, n + 1):
            data = lambda_p(n, k)
            print(
                f"n={n} k={k} lambda={format_fraction(data.lam)}"
                f" P={data.P.to_text()}"
            )


if __name__ == "__main__":
    main()
