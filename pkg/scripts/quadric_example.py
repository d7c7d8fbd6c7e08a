"""Net log tangent sheaf of the quadric cut by its tangent plane at [1:0:0:0]."""

from netlog import curves as cv
from netlog import modules as md
from netlog import pipeline as pl
from netlog.poly import standard_ring


def main():
    R = standard_ring(4)
    pair = pl.CIPair.parse(R, ["x0*x3 - x1*x2"], ["x3"]).validate()
    print("jacobian:")
    print(pl.jacobian_map(pair))
    net = pl.net_log_tangent(pair)
    refl = pl.reflexive_log_tangent(pair)
    rep = pl.sheaf_report(pair, net, h_range=range(-1, 3))
    print("HP(net)     =", net.hilbert_polynomial())
    print("HP(refl)    =", refl.hilbert_polynomial())
    print("HP(Tor1)    =", pl.tor_defect(pair).hilbert_polynomial())
    print("rank, c1.H, c2 =", rep.rank, rep.c1_dot_H, rep.c2)
    print("c1 bidegree =", cv.bidegree_c1(net))
    print("locally free:", md.is_locally_free(net, 2).locally_free,
          "singular at", [p.to_json()["point"] for p in pl.non_free_points(net, 2)])
    A, B = cv.quadric_rulings()
    print("refl on rulings:", cv.restrict_split(refl, A), cv.restrict_split(refl, B))
    swapped = pl.CIPair.parse(R, ["x3"], ["x0*x3 - x1*x2"]).validate()
    print("swapped pair HP =", pl.net_log_tangent(swapped).hilbert_polynomial())


if __name__ == "__main__":
    main()
