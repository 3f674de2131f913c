#!/usr/bin/env python3
"""Cross-check the wall complex against the grid oracle on random instances."""
import argparse
import random
import sys
import time

from bsloci.verify import grid_pattern_oracle, random_instance


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--denominator", type=int, default=7)
    ap.add_argument("--r", type=int, default=2)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    bad = checked = 0
    start = time.perf_counter()
    for i in range(args.count):
        data, _, elements = random_instance(rng, r=args.r)
        side = rng.randint(2, 4 if args.r == 2 else 2)
        rep = grid_pattern_oracle(data, elements, [(0, side)] * args.r, args.denominator)
        checked += rep.checked
        if not rep.ok:
            bad += 1
            print(f"instance {i}: {len(rep.mismatches)} mismatches, first {rep.mismatches[0]}")
    print(f"{args.count} instances, {checked} grid points, {bad} failing, {time.perf_counter() - start:.1f}s")
    return int(bad > 0)


if __name__ == "__main__":
    sys.exit(main())
