"""The six singular plane sections, each smoothed to a cubic surface F = g + x3*q."""

import argparse

from netlog import pipeline as pl
from netlog.poly import standard_ring

CASES = {
    "a": "x1^2*x2 - x0^2*(x0 + x2)",
    "b": "x1^2*x2 - x0^3",
    "c1": "x2*(x0*x1 - x2^2)",
    "c2": "x0*(x0*x2 - x1^2)",
    "d1": "x0*x1*x2",
    "d2": "x0*x1*(x0 + x1)",
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1, help="seed for the smoothing quadric")
    args = ap.parse_args()
    R = standard_ring(4)
    x3 = R.gen(3)
    gs = {k: R.parse(v) for k, v in CASES.items()}
    # one quadric that smooths every case
    for s in range(args.seed, args.seed + 50):
        q = pl.smooth_completion(gs["a"], seed=s)
        try:
            for g in gs.values():
                pl.CIPair(R, (g + x3 * q,), (x3,)).validate()
            break
        except pl.PairError:
            continue
    print("q =", q)
    for name, g in gs.items():
        F = g + x3 * q
        sec = pl.section_singularities(F, x3)
        planes = {str(pl.tangent_plane(F, p.coords)) for p in sec.points}
        pair = pl.CIPair(R, (F,), (x3,))
        defect = pl.reflexive_log_tangent(pair).hilbert_polynomial() - pl.net_log_tangent(pair).hilbert_polynomial()
        print(f"{name:3s} expected {name:3s} got {sec.label:3s} mu = {sec.multiplicities} "
              f"l(R0) = {sec.R0_length} tangent planes {sorted(planes)} defect {defect}")


if __name__ == "__main__":
    main()
