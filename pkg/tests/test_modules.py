from fractions import Fraction

import pytest

from netlog import modules as md
from netlog import pipeline as pl
from netlog.groebner import FreeModule, GradedMap
from netlog.hilbert import HilbertPolynomial
from netlog.poly import standard_ring

R4 = standard_ring(4)
QUAD = "x0*x3 - x1*x2"


def hp(*top_down):
    return HilbertPolynomial(tuple(reversed(top_down)))


def free(twists, ideal=(), ring=R4):
    return md.free_module(FreeModule.from_twists(ring, twists), ideal, bool(ideal))


@pytest.fixture(scope="module")
def quadric():
    p = pl.CIPair.parse(R4, [QUAD], ["x3"])
    p.validate()
    return p


def test_hilbert_of_polynomial_ring():
    M = free([0])
    assert M.hilbert_polynomial() == HilbertPolynomial.from_binomial_sum([(1, 3, 3)])
    assert md.h0(M, 2) == 10


def test_hilbert_of_eight_points():
    x = R4.gens
    M = md.free_module(FreeModule(R4, (0,)), (x[0] ** 2, x[1] ** 2, x[2] ** 2))
    assert M.hilbert_polynomial() == hp(8)


def test_restrict_free_stays_free():
    F = R4.parse("x0^3 + x1^3 + x2^3 + x3^3")
    M = md.restrict(free([1] * 4), (F,), integral=True)
    assert M.hilbert_polynomial() == md.free_module(FreeModule.from_twists(R4, [1] * 4), (F,), True).hilbert_polynomial()
    assert md.is_locally_free(M, 4).locally_free


def point_module(ideal, integral=False):
    """O_p for p = [1:0:0:0] as a cokernel."""
    x0, x1, x2, x3 = R4.gens
    F = FreeModule(R4, (0,))
    phi = GradedMap(FreeModule(R4, (1, 1, 1)), F, [[x1, x2, x3]])
    return md.cokernel(phi, ideal, integral)


def test_tor_skyscraper_at_point():
    x0, x1, x2, x3 = R4.gens
    Op = point_module(())
    T1 = md.tor(Op, (R4.parse(QUAD),), 1)
    assert T1.hilbert_polynomial() == hp(1)
    T0 = md.tor(Op, (R4.parse(QUAD),), 0)
    assert T0.hilbert_polynomial() == md.restrict(Op, (R4.parse(QUAD),)).hilbert_polynomial()
    assert md.tor(free([2]), (R4.parse(QUAD),), 1).is_zero()


def test_dual_of_free_and_torsion():
    D = md.hom_dual(free([3]))
    assert D.target.twists == (-3,)
    assert md.hom_dual(point_module((R4.parse(QUAD),), True)).is_zero()


def test_quadric_duals_and_torsion(quadric):
    net = pl.net_log_tangent(quadric)
    assert net.hilbert_polynomial() == hp(2, 6, 3)
    assert md.double_dual(net).hilbert_polynomial() == hp(2, 6, 4)
    # O(-1,0) + O(0,-1): chi = t(t+1) + (t+1)t
    assert md.hom_dual(net).hilbert_polynomial() == hp(2, 2, 0)
    assert md.torsion_submodule(net).is_zero()


def test_torsion_free_quotient_of_restricted_kernel(quadric):
    from netlog.exactness import restricted_kernel

    M = restricted_kernel(quadric)
    tf = md.torsion_free_quotient(M)
    assert tf.hilbert_polynomial() == hp(2, 6, 3)
    assert md.torsion_submodule(tf).is_zero()


def test_local_freeness(quadric):
    assert md.is_locally_free(free([0, 1]), 2).locally_free
    lf = md.is_locally_free(pl.net_log_tangent(quadric), 2)
    assert not lf.locally_free
    assert lf.singular_hp == hp(1)


def test_chern_reports():
    cubic = md.SurfaceData(hp(Fraction(3, 2), Fraction(3, 2), 1), -1)
    rep = md.chern_report(hp(3, 3, -7), cubic, c1_sq=0)
    assert (rep.rank, rep.c1_dot_H, rep.c2, rep.expected_moduli_dim) == (2, 0, 9, 33)
    quad = md.SurfaceData(hp(1, 2, 1), -2)
    rep = md.chern_report(hp(2, 6, 3), quad, c1_sq=2)
    assert (rep.rank, rep.c1_dot_H, rep.c2) == (2, 2, 2)
    rep = md.chern_report(cubic.hp, cubic, c1_sq=0)
    assert (rep.rank, rep.c1_dot_H, rep.c2) == (1, 0, 0)
    with pytest.raises(md.ChernInconsistency):
        md.chern_report(hp(1, 0, 0), cubic)


def test_euler_characteristic_and_h0_saturation(quadric):
    net = pl.net_log_tangent(quadric)
    tab = md.sheaf_cohomology(net, range(3), range(-2, 4))
    hd = net.hilbert((-2, 3))
    for t in range(-2, 4):
        assert sum((-1) ** i * tab.values[(i, t)] for i in range(3)) == hd.polynomial(t)
        assert md.h0(net, t) >= net.hf(t)
        if t >= hd.agreement:
            assert md.h0(net, t) == net.hf(t)


def test_nodal_section_defect_is_one():
    q = R4.parse("-x0^2 + 2*x0*x1 - 2*x1^2 - 2*x1*x2 + x2^2 + x0*x3 + x1*x3 + x2*x3 - x3^2")
    F = R4.parse("x1^2*x2 - x0^2*(x0 + x2)") + R4.gen(3) * q
    p = pl.CIPair(R4, (F,), (R4.gen(3),))
    p.validate()
    net, refl = pl.net_log_tangent(p), pl.reflexive_log_tangent(p)
    assert refl.hilbert_polynomial() - net.hilbert_polynomial() == hp(1)


def test_module_json_roundtrip(quadric):
    net = pl.net_log_tangent(quadric)
    back = md.PresentedModule.from_json(net.to_json())
    assert back.dumps() == net.dumps()
    assert back.hilbert((-2, 4)).table == net.hilbert((-2, 4)).table


def test_direct_sum_additive():
    A, B = free([1]), free([-2])
    S = md.direct_sum(A, B)
    for t in range(-3, 4):
        assert S.hf(t) == A.hf(t) + B.hf(t)
