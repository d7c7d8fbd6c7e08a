from math import comb

from hypothesis import given, settings
from hypothesis import strategies as hs

from netlog.hilbert import (
    HilbertPolynomial, agreement_index, hilbert_data, ideal_numerator, series_coefficient,
    series_to_polynomial,
)
from netlog.linalg import monomials

monos = hs.lists(hs.tuples(hs.integers(0, 3), hs.integers(0, 3), hs.integers(0, 3)), min_size=1, max_size=5)


def _outside(gens, d):
    return sum(1 for m in monomials(3, d)
               if not any(all(a >= b for a, b in zip(m, g)) for g in gens))


@settings(max_examples=60)
@given(monos)
def test_monomial_hilbert_function(gens):
    gens = [g for g in gens if any(g)] or [(1, 0, 0)]
    num = dict(enumerate(ideal_numerator(gens, 3)))
    for d in range(10):
        assert series_coefficient(num, 3, d) == _outside(gens, d)
    hp = series_to_polynomial(num, 3)
    t0 = agreement_index(num, 3)
    for d in range(max(t0, 0), t0 + 6):
        assert hp(d) == _outside(gens, d)


def test_polynomial_ring_series():
    hp = series_to_polynomial({0: 1}, 4)
    assert hp == HilbertPolynomial.from_binomial_sum([(1, 3, 3)])
    assert all(hp(t) == comb(t + 3, 3) for t in range(6))


def test_window_warning():
    num = {0: 1, 6: -1}  # k[x,y]/(f) with deg f = 6 has agreement index 5
    hd = hilbert_data(num, 2, window=(0, 3))
    assert hd.agreement == 5 and hd.warning
    assert not hilbert_data(num, 2, window=(0, 8)).warning


def test_polynomial_printing_and_arithmetic():
    p = HilbertPolynomial((3, 6, 2))
    assert str(p) == "2t^2 + 6t + 3"
    assert (p - p).is_zero()
    assert p.scale(2)(1) == 22
