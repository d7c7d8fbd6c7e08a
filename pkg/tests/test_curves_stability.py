import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from netlog import curves as cv
from netlog import modules as md
from netlog import pipeline as pl
from netlog import stability as st
from netlog.groebner import FreeModule
from netlog.hilbert import HilbertPolynomial
from netlog.poly import standard_ring

R4 = standard_ring(4)
QUAD = "x0*x3 - x1*x2"
FERMAT = "x0^3 + x1^3 + x2^3 + x3^3"


def hp(*top_down):
    return HilbertPolynomial(tuple(reversed(top_down)))


def pair(X, Y):
    return pl.CIPair.parse(R4, [X], [Y]).validate()


@pytest.fixture(scope="module")
def tangent_net():
    return pl.net_log_tangent(pair(QUAD, "x3"))


@pytest.fixture(scope="module")
def split_sum():
    return md.direct_sum(st.line_bundle_on_quadric(R4, 1, 0), st.line_bundle_on_quadric(R4, 0, 1))


# ------------------------------------------------------------------ curves

def test_curve_validation():
    with pytest.raises(cv.CurveError):
        cv.RationalCurve.parse("bad", ["s", "s^2", "t", "t"])
    with pytest.raises(cv.CurveError):
        cv.RationalCurve.parse("common-zero", ["s", "s", "0", "0"])
    L = cv.fermat_lines_over_Q()[2]  # not on the quadric
    with pytest.raises(cv.CurveError):
        cv.pullback(pl.net_log_tangent(pair(QUAD, "x3")), L)


def test_free_pullback():
    L = cv.fermat_lines_over_Q()[0]
    M = md.free_module(FreeModule.from_twists(R4, [1, 1, 1]), (R4.parse(FERMAT),), True)
    assert cv.restrict_split(M, L).degrees == (1, 1, 1)


@pytest.mark.parametrize("a, b", [(1, 0), (0, 1), (2, -1), (0, 0)])
def test_line_bundles_on_rulings(a, b):
    A, B = cv.quadric_rulings()
    L = st.line_bundle_on_quadric(R4, a, b)
    assert L.hilbert_polynomial() == st.quadric_line_hp(a, b)
    assert cv.restrict_split(L, A).degrees == (b,)
    assert cv.restrict_split(L, B).degrees == (a,)


def test_bidegrees(tangent_net, split_sum):
    assert cv.bidegree_c1(tangent_net) == (1, 1)
    assert cv.bidegree_c1(split_sum) == (1, 1)
    trivial = md.free_module(FreeModule(R4, (0, 0)), (R4.parse(QUAD),), True)
    assert cv.bidegree_c1(trivial) == (0, 0)


def test_ruling_through_vertex_has_torsion(tangent_net):
    cat = cv.load_catalog()
    for name in ("A0", "B0"):
        Mc = cv.pullback(tangent_net, cat[name])
        # length-one torsion at the vertex, torsion-free part O + O
        assert md.torsion_submodule(Mc).hilbert_polynomial() == hp(1)
        assert cv.splitting_type(Mc).degrees == (0, 0)


def test_degree_conservation():
    p = pair(FERMAT, "x3")
    E = pl.reflexive_log_tangent(p)
    for L in cv.fermat_lines_over_Q():
        Mc = cv.pullback(E, L)
        assert cv.degree_from_hilbert(Mc, 2) == cv.splitting_type(Mc).total


def test_omega_line():
    p = pair(FERMAT, "x3")
    E = pl.reflexive_log_tangent(p)
    Lw = cv.fermat_line_omega()
    assert Lw.lies_on(p.X)
    assert cv.restrict_split(E, Lw).degrees == (1, -1)


def test_catalog_roundtrip(tmp_path):
    cat = cv.load_catalog()
    assert {"L01_23", "Lw01_23", "A[1:1]", "B[1:1]"} <= set(cat)
    back = cv.RationalCurve.from_json(cat["Lw01_23"].to_json())
    assert back.params == cat["Lw01_23"].params
    bad = tmp_path / "bad.json"
    bad.write_text('{"curves": [{"name": "x"}]}')
    with pytest.raises(cv.CurveError):
        cv.load_catalog(bad)


# ------------------------------------------------------------------ Gieseker scan

def test_tangent_scan(tangent_net):
    v = st.gieseker_scan_quadric(tangent_net)
    assert v.verdict == "stable-certified-on-window"
    for cls in ((1, 0), (0, 1)):
        c = v.cell(*cls)
        assert c.min_Z == 1 and c.P_F == hp(1, 3, 1) and c.outcome == "pass"
    assert all(c.outcome != "fail" for c in v.cells)


def test_split_sum_destabilized(split_sum):
    assert split_sum.hilbert_polynomial() == hp(2, 6, 4)
    v = st.gieseker_scan_quadric(split_sum)
    assert v.verdict == "destabilized"
    assert (v.witness.a, v.witness.b) == (1, 0)
    assert v.witness.P_F == hp(1, 3, 2)
    assert st.verify_witness(split_sum, v.witness)


def test_small_window_inconclusive(tangent_net):
    v = st.gieseker_scan_quadric(tangent_net, window=(0, 0))
    assert v.verdict == "inconclusive"


# ------------------------------------------------------------------ cubic side

def test_mu_evidence():
    p = pair(FERMAT, "x3")
    E = pl.reflexive_log_tangent(p)
    res = st.mu_evidence_cubic(E, cv.fermat_lines_over_Q(), p.Y)
    assert [r.splitting.degrees for r in res["lines"]] == [(1, -1)] * 3
    assert not any(r.flag for r in res["lines"]) and not res["global_flag"]
    F = R4.parse(FERMAT)
    trivial = md.free_module(FreeModule(R4, (0, 0)), (F,), True)
    res = st.mu_evidence_cubic(trivial, cv.fermat_lines_over_Q())
    assert res["global_flag"] and all(r.splitting.degrees == (0, 0) for r in res["lines"])


def test_log_character():
    p = pair(FERMAT, "x3")
    sd = pl.surface_data(p)
    r = st.log_character_test(pl.net_log_tangent(p), sd)
    assert r.value and r.h0_E1 == 3 and r.globally_generated
    F = R4.parse(FERMAT)
    other = st.twisted_line_sum(R4, F, (R4.parse("x0 + x1"), R4.parse("x2 + x3")))
    r = st.log_character_test(other, sd)
    assert not r.value and r.h0_E1 == 5


def test_wedge_formula_values():
    assert st.wedge_h0_formula(4, 3, 1, 0) == 59
    with pytest.raises(st.StabilityError):
        st.wedge_h0_formula(4, 3, 3, 0)


@settings(max_examples=30)
@given(hs.integers(3, 6), hs.integers(2, 5), hs.data())
def test_wedge_formula_vanishes_strictly_below(N, d, data):
    p = data.draw(hs.integers(1, N - 2))
    m = data.draw(hs.integers(p * (1 - d) - 20, p * (1 - d) - 1))
    assert st.wedge_h0_formula(N, d, p, m) == 0


def test_recover_cubic():
    F = R4.parse(FERMAT)
    rec = st.recover_cubic_from_gradient(*st.gradient_triple(F))
    assert rec.cubic == R4.parse("x0^3 + x1^3 + x2^3") and rec.family_dim == 1
    assert st.in_family(F, rec)
    bad = st.recover_cubic_from_gradient(R4.parse("x1^2"), R4.parse("x0^2"), R4.zero())
    assert bad.cubic is None


@settings(max_examples=20, deadline=None)
@given(hs.integers(0, 10**6))
def test_recover_random_cubics(seed):
    from netlog.exactness import random_form

    F = random_form(R4, 3, random.Random(seed))
    rec = st.recover_cubic_from_gradient(*st.gradient_triple(F))
    assert st.in_family(F, rec)
