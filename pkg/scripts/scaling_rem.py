#!/usr/bin/env python3
"""Wall-time scaling of remainder evaluation in the variable count.

Fixes the outer polynomial (degree 3 in two forms) and the generator degree
at 3, then times rem_eval across a range of n.  The theory predicts
d^O(r) * poly(n); the printed ratios should stay far below the n^4 slope.

Usage: python scripts/scaling_rem.py [--sizes 20,40,80,160] [--seed 0]
"""

import argparse
import random
import time
from fractions import Fraction

from unideal.circuits import CircuitBuilder
from unideal.division import UnivariateIdeal
from unideal.linalg import LinearForm
from unideal.lowrank import LowRankInput, rem_eval
from unideal.poly import UnivariatePoly

F = Fraction


def build_instance(rng, n):
    b = CircuitBuilder(2)
    z1, z2 = b.input(0), b.input(1)
    outer = b.build(b.add(b.mul(z1, z1, z2), b.mul(z2, z2), z1))
    forms = tuple(
        LinearForm(tuple(F(rng.randint(-3, 3)) for _ in range(n))) for _ in range(2)
    )
    ideal = UnivariateIdeal(
        tuple(
            (i, UnivariatePoly([F(rng.randint(-3, 3)) for _ in range(3)] + [F(1)]))
            for i in range(n)
        )
    )
    alpha = [F(rng.randint(-4, 4)) for _ in range(n)]
    return LowRankInput(outer, forms, 3), ideal, alpha


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="20,40,80")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]
    times = {}
    print(f"{'n':>6} {'best (ms)':>12}")
    for n in sizes:
        inp, ideal, alpha = build_instance(rng, n)
        best = min(
            _timed(lambda: rem_eval(inp, ideal, alpha)) for _ in range(args.repeats)
        )
        times[n] = best
        print(f"{n:>6} {best * 1e3:>12.2f}")
    base = sizes[0]
    print("\nratios against n^4 slope:")
    for n in sizes[1:]:
        allowed = (n / base) ** 4
        print(f"  t({n})/t({base}) = {times[n] / times[base]:8.2f}   (n^4 slope: {allowed:.0f})")


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


if __name__ == "__main__":
    main()
