"""Acceptance suite: one recorded pass/fail line per criterion.

Run ``pytest tests/test_acceptance.py -v``; the summary section at the end
lists every criterion.  ``python tests/test_acceptance.py`` prints the same
lines without pytest."""

import random
from math import comb

import pytest

from conftest import record
from netlog import curves as cv
from netlog import exactness as ex
from netlog import modules as md
from netlog import oracle
from netlog import pipeline as pl
from netlog import stability as st
from netlog.groebner import FreeModule
from netlog.hilbert import HilbertPolynomial
from netlog.poly import standard_ring

R4 = standard_ring(4)
QUADRIC = "x0*x3 - x1*x2"
FERMAT = "x0^3 + x1^3 + x2^3 + x3^3"
# frozen generic quadric for the singular-section suite (checked smooth for every g below)
SMOOTHING = "-x0^2 + 2*x0*x1 - 2*x1^2 - 2*x1*x2 + x2^2 + x0*x3 + x1*x3 + x2*x3 - x3^2"
SECTION_CASES = {
    "a": ("x1^2*x2 - x0^2*(x0 + x2)", (1,)),
    "b": ("x1^2*x2 - x0^3", (2,)),
    "c1": ("x2*(x0*x1 - x2^2)", (1, 1)),
    "c2": ("x0*(x0*x2 - x1^2)", (3,)),
    "d1": ("x0*x1*x2", (1, 1, 1)),
    "d2": ("x0*x1*(x0 + x1)", (4,)),
}


def hp(*coeffs):
    """Polynomial from coefficients listed from the top degree down."""
    return HilbertPolynomial(tuple(reversed(coeffs)))


def _finish(number, checks):
    bad = [name for name, ok in checks if not ok]
    ok = not bad
    record(number, ok, "all checks exact" if ok else "failed: " + ", ".join(bad))
    assert ok, bad


def _pair(X, Y):
    p = pl.CIPair.parse(R4, [X], [Y])
    p.validate()
    return p


def test_criterion_1_quadric_pipeline():
    pair = _pair(QUADRIC, "x3")
    x0, x1, x2, x3 = R4.gens
    jac = pl.jacobian_map(pair)
    net = pl.net_log_tangent(pair)
    refl = pl.reflexive_log_tangent(pair)
    rep = pl.sheaf_report(pair, net)
    lf = md.is_locally_free(net, 2)
    supp = [p.coords for p in pl.non_free_points(net, 2)]
    checks = [
        ("jacobian", [list(r) for r in jac.rows] == [[x3, -x2, -x1, x0], [R4.zero()] * 3 + [R4.one()]]),
        ("HP(net)", net.hilbert_polynomial() == hp(2, 6, 3)),
        ("rank", rep.rank == 2),
        ("c1.H", rep.c1_dot_H == 2),
        ("c2", rep.c2 == 2),
        ("bidegree", cv.bidegree_c1(net) == (1, 1)),
        ("defect", refl.hilbert_polynomial() - net.hilbert_polynomial() == hp(1)),
        ("not locally free", not lf.locally_free),
        ("singular support", [tuple(c) for c in supp] == [(1, 0, 0, 0)]),
        ("tangent plane", pl.proportional(pl.tangent_plane(pair.X[0], (1, 0, 0, 0)), x3)),
    ]
    _finish(1, checks)


def test_criterion_2_swapped_restriction():
    swapped = _pair("x3", QUADRIC)
    T = pl.net_log_tangent(swapped)
    P2 = standard_ring(3)
    ideal_p = md.image_module([(P2.gen(0),), (P2.gen(1),)], FreeModule.from_twists(P2, [1]))
    ref = md.direct_sum(ideal_p, md.free_module(FreeModule(P2, (0,))))
    window = (-2, 8)
    a, b = T.hilbert(window), ref.hilbert(window)
    target = HilbertPolynomial.from_binomial_sum([(1, 3, 2), (-1, 0, 0), (1, 2, 2)])
    checks = [
        ("HP formula", a.polynomial == target),
        ("HP", a.polynomial == b.polynomial),
        ("HF table", a.table == b.table),
    ]
    _finish(2, checks)


def test_criterion_3_fermat_cubic():
    pair = _pair(FERMAT, "x3")
    net = pl.net_log_tangent(pair)
    rep = pl.sheaf_report(pair, net)
    sec = pl.section_singularities(pair.X[0], pair.Y[0])
    ch = st.log_character_test(net, pl.surface_data(pair))
    TS = pl.tangent_module(pair)[0].presented()
    checks = [
        ("l(R0)", sec.R0_length == 8),
        ("R empty", sec.R_length == 0 and not sec.points),
        ("HP", net.hilbert_polynomial() == hp(3, 3, -7)),
        ("c1.H, c2", (rep.c1_dot_H, rep.c2) == (0, 9)),
        ("moduli dim", rep.expected_moduli_dim == 33),
        ("h0(E(1))", ch.h0_E1 == 3),
        ("E(1) globally generated", ch.globally_generated),
        ("h0(T_S)", md.h0(TS, 0) == 0),
    ]
    _finish(3, checks)


def test_criterion_4_singularity_suite():
    q = R4.parse(SMOOTHING)
    x3 = R4.gen(3)
    checks = []
    for label, (g, mu) in SECTION_CASES.items():
        F = R4.parse(g) + x3 * q
        pair = pl.CIPair(R4, (F,), (x3,))
        pair.validate()  # smoothness of S is machine-checked here
        sec = pl.section_singularities(F, x3)
        checks.append((f"{label} mu", sorted(sec.multiplicities) == sorted(mu)))
        checks.append((f"{label} label", sec.label == label))
    _finish(4, checks)


def test_criterion_5_splitting_types():
    fermat = _pair(FERMAT, "x3")
    fermat_D = _pair(FERMAT, "x0 + x1")
    L = cv.fermat_lines_over_Q()[0]
    quad = _pair(QUADRIC, "x3")
    A, B = cv.quadric_rulings()
    E = pl.reflexive_log_tangent(fermat)
    ED = pl.reflexive_log_tangent(fermat_D)
    EQ = pl.reflexive_log_tangent(quad)
    checks = [
        ("line not in D", not L.lies_on(fermat.Y) and cv.restrict_split(E, L).degrees == (1, -1)),
        ("line in D", L.lies_on(fermat_D.Y) and cv.restrict_split(ED, L).degrees == (0, 0)),
        ("ruling A", cv.restrict_split(EQ, A).degrees == (1, 0)),
        ("ruling B", cv.restrict_split(EQ, B).degrees == (1, 0)),
    ]
    _finish(5, checks)


def test_criterion_6_gieseker_scan():
    tangent = st.gieseker_scan_quadric(pl.net_log_tangent(_pair(QUADRIC, "x3")), (-3, 3))
    generic = st.gieseker_scan_quadric(pl.net_log_tangent(_pair(QUADRIC, "x0 + x1 + x2 + 2*x3")), (-3, 3))
    cell = tangent.cell(1, 0)
    checks = [
        ("tangent verdict", tangent.verdict == "stable-certified-on-window"),
        ("generic verdict", generic.verdict == "stable-certified-on-window"),
        ("(1,0) section", cell is not None and cell.h0 > 0),
        ("(1,0) P(t)", cell is not None and cell.P_F == hp(1, 3, 1)),
    ]
    _finish(6, checks)


def test_criterion_7_exactness_suite():
    rng = random.Random(7)
    checks = []
    for d in (2, 3):
        for i in range(5):
            pair = ex.random_pair(R4, d, rng)
            for c in ex.check_pair(pair):
                checks.append((f"d={d} #{i} {c.name}", c.ok))
    names = {n.split(" ", 2)[2] for n, _ in checks}
    for need in ("tor-sequence", "residue-sequence", "torsion-free-quotient", "double-dual-idempotent",
                 "scaling-net", "scaling-reflexive"):
        checks.append((f"ran {need}", need in names))
    _finish(7, checks)


def test_criterion_8_engine_oracle():
    cases = oracle.run_cases(50, seed=0, D=8)
    checks = [(c.label, c.ok) for c in cases]
    checks.append(("50 cases", len(cases) == 50))
    checks.append(("every case nontrivial", all(c.checked >= 9 for c in cases)))
    _finish(8, checks)


def test_criterion_9_wedge_vanishing():
    # checked literally over the closed range m <= p(1-d)
    checks = []
    for N in range(3, 7):
        for d in range(2, 6):
            for p in range(1, N - 1):
                top = p * (1 - d)
                for m in range(top - 5, top + 1):
                    checks.append((f"N={N} d={d} p={p} m={m}", st.wedge_h0_formula(N, d, p, m) == 0))
    _finish(9, checks)


def test_wedge_formula_strict_range_and_endpoint():
    # companion to criterion 9: zero strictly below p(1-d); C(N,p) at the endpoint
    for N in range(3, 7):
        for d in range(2, 6):
            for p in range(1, N - 1):
                top = p * (1 - d)
                assert all(st.wedge_h0_formula(N, d, p, m) == 0 for m in range(top - 5, top))
                assert st.wedge_h0_formula(N, d, p, top) == comb(N, p)


if __name__ == "__main__":
    import conftest

    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(conftest.CRITERIA):
        ok, detail = conftest.CRITERIA[n]
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
