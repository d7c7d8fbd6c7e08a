import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from netlog import linalg
from netlog import oracle
from netlog.groebner import (
    CapExceeded, FreeModule, GradedMap, NotGroebner, SubmoduleBasis, colon, groebner, ideal,
    is_groebner_basis, kernel_of_map, same_submodule, saturate, syzygies,
)
from netlog.poly import standard_ring

R2, R3, R4 = standard_ring(2), standard_ring(3), standard_ring(4)


def I(ring, *texts):
    return ideal(ring, [ring.parse(t) for t in texts])


def test_kernel_quadric_jacobian():
    x0, x1, x2, x3 = R4.gens
    src = FreeModule.from_twists(R4, [1] * 4)
    tgt = FreeModule.from_twists(R4, [2, 1])
    phi = GradedMap(src, tgt, [[x3, -x2, -x1, x0], [R4.zero()] * 3 + [R4.one()]])
    K = kernel_of_map(phi)
    for v in K.gens:
        assert all(p.is_zero() for p in phi.apply(v))
    want = SubmoduleBasis(src, [(x2, x3, R4.zero(), R4.zero()), (x1, R4.zero(), x3, R4.zero()),
                                (R4.zero(), x1, -x2, R4.zero())])
    assert same_submodule(groebner(K), groebner(want))


def test_kernel_identity_and_koszul():
    F = FreeModule(R2, (0, 0))
    one, zero = R2.one(), R2.zero()
    assert kernel_of_map(GradedMap(F, F, [[one, zero], [zero, one]])).nonzero_gens() == ()
    x0, x1 = R2.gens
    phi = GradedMap(FreeModule.from_twists(R2, [1, 1]), FreeModule.from_twists(R2, [2]), [[x0, x1]])
    K = kernel_of_map(phi)
    assert same_submodule(groebner(K), groebner(SubmoduleBasis(phi.source, [(x1, -x0)])))


def test_colon_examples():
    assert same_submodule(colon(I(R2, "x0*x1"), R2.parse("x0")), I(R2, "x1"))
    assert same_submodule(colon(I(R2, "x0^2"), R2.parse("x0")), I(R2, "x0"))
    with pytest.raises(ValueError):
        colon(I(R2, "x0"), R2.zero())


def test_saturation_examples():
    M = I(R2, "x0^2", "x0*x1")
    S = saturate(M, list(R2.gens))
    assert same_submodule(S, I(R2, "x0"))
    assert same_submodule(saturate(S, list(R2.gens)), S)
    P = I(R3, "x0", "x1")
    assert same_submodule(saturate(P, list(R3.gens)), P)
    assert same_submodule(saturate(M, [R2.one()]), M)


def test_syzygies_koszul():
    G = I(R3, "x0", "x1", "x2")
    Z = syzygies(G)
    assert len(Z.nonzero_gens()) == 3
    assert syzygies(I(R3, "x0^2 + x1*x2")).nonzero_gens() == ()
    with pytest.raises(NotGroebner):
        syzygies(SubmoduleBasis(FreeModule(R3, (0,)), [(R3.gen(0),)]))


def test_syzygies_cubic_jacobian_against_oracle():
    f = R3.parse("x0^3 + x1^3 + x2^3 - 3*x0*x1*x2")
    G = ideal(R3, [f.derivative(i) for i in range(3)])
    Z = syzygies(G)
    src = Z.free
    elems = [v[0] for v in G.basis_vectors()]
    for v in Z.gens:
        assert sum((a * b for a, b in zip(v, elems)), R3.zero()).is_zero()
    # syzygy module dimension per degree = nullity of the Macaulay matrix of the basis
    ZG = groebner(Z)
    dims = oracle._gb_quotient_dims(ZG, 8)
    for d in range(9):
        nullity = linalg.kernel_dimension([(e,) for e in elems], src.degrees, (0,), d, 3)
        assert linalg.free_dimension(src.degrees, d, 3) - dims[d] == nullity


def test_degree_cap_is_loud():
    with pytest.raises(CapExceeded):
        groebner(SubmoduleBasis(FreeModule(R3, (0,)), [(R3.parse("x0^3 - x1^2*x2"),), (R3.parse("x0*x1 - x2^2"),)]),
                 degree_cap=2)


# -------------------------------------------------------------- properties

@hs.composite
def small_ideal(draw):
    seed = draw(hs.integers(0, 10**6))
    rng = random.Random(seed)
    n = draw(hs.integers(2, 3))
    ring = standard_ring(n)
    gens = [oracle.random_form(ring, rng.randint(1, 3), rng) for _ in range(rng.randint(1, 3))]
    gens = [g for g in gens if not g.is_zero()] or [ring.gen(0)]
    return ring, gens, rng


@settings(max_examples=25, deadline=None)
@given(small_ideal())
def test_buchberger_criterion_and_nf(data):
    ring, gens, rng = data
    G = ideal(ring, gens)
    assert is_groebner_basis(G)
    for _ in range(3):
        v = (oracle.random_form(ring, rng.randint(0, 4), rng),)
        nf = G.normal_form(v)
        assert G.normal_form(nf) == nf
        assert G.contains(tuple(a - b for a, b in zip(v, nf)))


@settings(max_examples=25, deadline=None)
@given(small_ideal())
def test_membership_against_macaulay(data):
    ring, gens, rng = data
    case = oracle.OracleCase("h", ring.nvars, (0,), [(g,) for g in gens])
    oracle.check_submodule(case, rng, D=5, probes=2)
    assert case.ok, case.mismatches


@settings(max_examples=20, deadline=None)
@given(small_ideal())
def test_kernel_against_macaulay(data):
    ring, gens, rng = data
    case = oracle.OracleCase("k", ring.nvars, (0,), [(g,) for g in gens])
    oracle.check_kernel(case, (0,), D=6)
    assert case.ok, case.mismatches


@settings(max_examples=15, deadline=None)
@given(small_ideal())
def test_saturation_idempotent(data):
    ring, gens, _ = data
    G = ideal(ring, gens)
    S = saturate(G, list(ring.gens))
    assert same_submodule(saturate(S, list(ring.gens)), S)
    for g in G.gens:
        assert S.contains(g)
