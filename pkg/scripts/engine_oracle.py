"""Gröbner engine against Macaulay-matrix ranks on random inputs."""

import argparse

from netlog import oracle


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--degree", type=int, default=8)
    args = ap.parse_args()
    cases = oracle.run_cases(args.count, args.seed, args.degree)
    for c in cases:
        print(f"{c.label:14s} vars={c.nvars} gens={len(c.gens)} quotient={bool(c.quotient)} "
              f"checks={c.checked} {'ok' if c.ok else c.mismatches}")
    print(f"{sum(c.ok for c in cases)}/{len(cases)} agree")


if __name__ == "__main__":
    main()
