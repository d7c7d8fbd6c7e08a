"""Hilbert-additivity and generator-independence checks on random pairs."""

import argparse
import random
import time

from netlog import exactness as ex
from netlog.poly import standard_ring


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--degrees", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args()
    R = standard_ring(4)
    rng = random.Random(args.seed)
    bad = 0
    for d in args.degrees:
        for i in range(args.count):
            pair = ex.random_pair(R, d, rng)
            t = time.perf_counter()
            checks = ex.check_pair(pair)
            fails = [c.name for c in checks if not c.ok]
            bad += len(fails)
            print(f"d={d} #{i} F={pair.X[0]} H={pair.Y[0]}: {len(checks)} checks, "
                  f"failed {fails or 'none'} ({time.perf_counter() - t:.1f}s)", flush=True)
    print("all exact" if not bad else f"{bad} failures")


if __name__ == "__main__":
    main()
