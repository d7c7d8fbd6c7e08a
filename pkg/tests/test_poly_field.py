import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from netlog.field import QQ, FieldSpec, ReducibleMinpolyError, cyclotomic3
from netlog.poly import PolyError, PolyRing, gradient, standard_ring

R = standard_ring(3)

coeff = hs.integers(-5, 5)
expo = hs.tuples(hs.integers(0, 3), hs.integers(0, 3), hs.integers(0, 3))
polys = hs.dictionaries(expo, coeff, max_size=5).map(
    lambda d: sum((R.monomial(e, c) for e, c in d.items()), R.zero()))


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == R.zero()


@given(polys)
def test_parse_roundtrip(f):
    assert R.parse(str(f)) == f


@given(polys, polys)
def test_leibniz(f, g):
    for i in range(3):
        assert (f * g).derivative(i) == f.derivative(i) * g + f * g.derivative(i)


def test_parse_forms():
    f = R.parse("x0^2*x1 - 3/2*x2^3 + x0*x1*x2")
    assert f.is_homogeneous() and f.degree() == 3
    assert R.parse("(x0 + x1)^2") == R.parse("x0^2 + 2*x0*x1 + x1^2")


@pytest.mark.parametrize("bad", ["x0 +", "y1", "x0^-1", "2..3"])
def test_parse_errors(bad):
    with pytest.raises(PolyError):
        R.parse(bad)


def test_euler_identity():
    f = R.parse("x0^3 + 2*x0*x1*x2 - x2^3")
    lhs = sum((x * g for x, g in zip(R.gens, gradient(f))), R.zero())
    assert lhs == f * 3


def test_cyclotomic_arithmetic():
    K = cyclotomic3()
    w = K.gen()
    assert w * w + w + K.one() == K.zero()
    assert w * w * w == K.one()
    assert (K.one() / w) * w == K.one()
    T = PolyRing(("s", "t"), K)
    s, t = T.gens
    f = s * w - t
    assert T.parse(str(f)) == f


def test_reducible_minpoly_rejected():
    with pytest.raises(ReducibleMinpolyError):
        FieldSpec("simple-extension", (-1, 0, 1)).check_irreducible()  # w^2 - 1


def test_field_json_roundtrip():
    K = cyclotomic3()
    assert FieldSpec.from_json(K.to_json()) == K
    assert FieldSpec.from_json(None) == QQ
