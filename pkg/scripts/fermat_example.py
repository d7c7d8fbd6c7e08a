"""Fermat cubic surface: smooth section, tangent section and lines."""

from netlog import curves as cv
from netlog import modules as md
from netlog import pipeline as pl
from netlog import stability as st
from netlog.poly import standard_ring

FERMAT = "x0^3 + x1^3 + x2^3 + x3^3"


def main():
    R = standard_ring(4)
    pair = pl.CIPair.parse(R, [FERMAT], ["x3"]).validate()
    net = pl.net_log_tangent(pair)
    rep = pl.sheaf_report(pair, net, h_range=range(-1, 3))
    print("HP =", net.hilbert_polynomial(), " c1.H =", rep.c1_dot_H, " c2 =", rep.c2,
          " expected moduli dim =", rep.expected_moduli_dim)
    for k, v in sorted(rep.h_table.items()):
        print(f"  {k} = {v}")
    sec = pl.section_singularities(pair.X[0], pair.Y[0])
    print("l(R0) =", sec.R0_length, " label", sec.label)
    print("characterization:", st.log_character_test(net, pl.surface_data(pair)).to_json())
    TS = pl.tangent_module(pair)[0].presented()
    print("h0(T_S) =", md.h0(TS, 0))
    refl = pl.reflexive_log_tangent(pair)
    for L in cv.fermat_lines_over_Q() + [cv.fermat_line_omega()]:
        print(f"  {L.name}: {cv.restrict_split(refl, L)}")
    tangent = pl.CIPair.parse(R, [FERMAT], ["x0 + x1"]).validate()
    sec = pl.section_singularities(tangent.X[0], tangent.Y[0])
    print("H = x0 + x1:", sec.label, sec.multiplicities)
    L = cv.fermat_lines_over_Q()[0]
    print("  L01_23 in D:", cv.restrict_split(pl.reflexive_log_tangent(tangent), L))


if __name__ == "__main__":
    main()
