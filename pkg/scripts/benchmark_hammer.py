#!/usr/bin/env python3
"""Wall-time sweep of the reconstruction kernel over (width, support) grids.

Generates random sparse distributions, runs the full reconstruction, and
prints a timing table. Useful for checking that the blocked pairwise
kernels stay within budget as the support grows.
"""

import argparse
import time

import numpy as np

from hamrec import Distribution, hammer


def random_support(rng: np.random.Generator, width: int, size: int) -> Distribution:
    values = np.unique(rng.integers(0, 2 ** width, size=size * 2))
    rng.shuffle(values)
    values = values[:size]
    raw = rng.random(len(values)) + 0.01
    raw /= raw.sum()
    entries = {format(int(v), f"0{width}b"): float(p) for v, p in zip(values, raw)}
    return Distribution(width=width, entries=entries, kind="probabilities")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--widths", type=int, nargs="+", default=[10, 16, 24])
    parser.add_argument(
        "--sizes", type=int, nargs="+", default=[1000, 5000, 10000, 20000]
    )
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.Generator(np.random.PCG64(args.seed))
    print(f"{'width':>6}{'support':>9}{'pairs':>14}{'seconds':>10}")
    for width in args.widths:
        for size in args.sizes:
            if size > 2 ** width:
                continue
            d = random_support(rng, width, size)
            start = time.perf_counter()
            report = hammer(d)
            elapsed = time.perf_counter() - start
            pairs = report.pair_evaluations_step1 + report.pair_evaluations_step3
            print(f"{width:>6}{len(d):>9}{pairs:>14}{elapsed:>10.3f}")


if __name__ == "__main__":
    main()
