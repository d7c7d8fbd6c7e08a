"""Gieseker destabilizer scans on the quadric."""

import argparse

from netlog import modules as md
from netlog import pipeline as pl
from netlog import stability as st
from netlog.poly import standard_ring


def show(name, v):
    print(f"{name}: {v.verdict}", f"witness {(v.witness.a, v.witness.b)}" if v.witness else "")
    for c in v.cells:
        if c.h0:
            print(f"   ({c.a:2d},{c.b:2d}) h0={c.h0} |Z|>={c.min_Z} Z'={c.Z_prime} P_F={c.P_F} {c.outcome}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--window", type=int, nargs=2, default=(-3, 3))
    args = ap.parse_args()
    R = standard_ring(4)
    Q = "x0*x3 - x1*x2"
    for H in ("x3", "x0 + x1 + x2 + 2*x3"):
        pair = pl.CIPair.parse(R, [Q], [H]).validate()
        show(f"H = {H}", st.gieseker_scan_quadric(pl.net_log_tangent(pair), tuple(args.window)))
    split = md.direct_sum(st.line_bundle_on_quadric(R, 1, 0), st.line_bundle_on_quadric(R, 0, 1))
    show("O(1,0) + O(0,1)", st.gieseker_scan_quadric(split, tuple(args.window)))


if __name__ == "__main__":
    main()
