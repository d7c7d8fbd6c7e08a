"""The alternating-sum formula for h0 of twisted wedge powers, against direct cohomology.

The direct side: h0 of the dual of the net module on the Fermat cubic
threefold with H = V(x4), twisted by m + d."""

from netlog import modules as md
from netlog import pipeline as pl
from netlog import stability as st
from netlog.poly import standard_ring


def main():
    print("formula table (N, d, p): values for m = p(1-d)-2 .. p(1-d)+1")
    for N in range(3, 7):
        for d in range(2, 6):
            for p in range(1, N - 1):
                top = p * (1 - d)
                vals = [st.wedge_h0_formula(N, d, p, m) for m in range(top - 2, top + 2)]
                print(f"  N={N} d={d} p={p}: {vals}")
    R = standard_ring(5)
    pair = pl.CIPair.parse(R, ["x0^3 + x1^3 + x2^3 + x3^3 + x4^3"], ["x4"]).validate()
    dual = md.hom_dual(pl.net_log_tangent(pair))
    for t in range(0, 4):
        print(f"m = {t - 3}: direct h0 = {md.h0(dual, t)}, formula = {st.wedge_h0_formula(4, 3, 1, t - 3)}")


if __name__ == "__main__":
    main()
