import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polys, prime_and_polys, primes
from hypercf.errors import DomainError
from hypercf.modular_poly import (
    NEG_INF, DensePoly, XPoly, convolve, dilate, divrem, frac, inv, is_power_of,
    is_prime, pow_mod_p, series_inverse,
)


def P(c, p):
    return DensePoly(c, p)


def test_divrem_examples():
    q, r = divrem(DensePoly.monomial(1, 5, 5), P([1, 0, 3, 0, 1], 5))
    assert q == P([0, 1], 5) and r == P([0, 4, 0, 2], 5)
    q, r = divrem(DensePoly.monomial(1, 7, 7), P([1, 0, 5, 0, 1], 7))
    assert q == P([0, 2, 0, 1], 7) and r == P([0, 5, 0, 3], 7)


def test_frobenius_on_polys():
    f = P([3, 2], 5)
    assert f ** 5 == P([3, 0, 0, 0, 0, 2], 5)
    assert pow_mod_p(f, 5) == f ** 5


def test_zero_degree_and_repr():
    z = DensePoly.zero(7)
    assert z.degree == NEG_INF and z.is_zero()
    assert repr(P([0, 4, 0, 2], 5)) == "2T^3 + 4T"


def test_from_text_rejects_out_of_range():
    with pytest.raises(DomainError):
        DensePoly.from_text([0, 5], 5)


def test_inverse_and_frac():
    assert inv(3, 7) == 5
    assert frac(32, 9, 5) == 3
    assert frac(32, 9, 7) == 2
    with pytest.raises(DomainError):
        inv(0, 5)


def test_primes_and_powers():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_power_of(25, 5) and is_power_of(1, 5) and not is_power_of(10, 5)


def test_division_by_zero():
    with pytest.raises(DomainError):
        divrem(P([1], 5), DensePoly.zero(5))


def test_big_convolution_matches_object_path():
    rs = np.random.default_rng(0)
    p = 23
    a = rs.integers(0, p, 5000)
    b = rs.integers(0, p, 4000)
    ref = np.convolve(a.astype(object), b.astype(object)) % p
    assert np.array_equal(convolve(a, b, p), ref.astype(np.int64))


@given(prime_and_polys(3))
@settings(max_examples=300)
def test_ring_axioms(t):
    p, f, g, h = t
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == DensePoly.zero(p)


@given(prime_and_polys(2))
@settings(max_examples=300)
def test_degree_of_product(t):
    p, f, g = t
    if f.is_zero() or g.is_zero():
        assert (f * g).is_zero()
    else:
        assert (f * g).degree == f.degree + g.degree


@given(st.data())
@settings(max_examples=300)
def test_divrem_identity(data):
    p = data.draw(primes)
    num = data.draw(polys(p, max_deg=12))
    den = data.draw(polys(p, max_deg=6, nonzero=True))
    q, r = divrem(num, den)
    assert q * den + r == num
    assert r.is_zero() or r.degree < den.degree


@given(st.data())
@settings(max_examples=200)
def test_series_inverse(data):
    p = data.draw(primes)
    n = data.draw(st.integers(1, 40))
    u = np.array([data.draw(st.integers(1, p - 1))]
                 + data.draw(st.lists(st.integers(0, p - 1), min_size=n - 1, max_size=n - 1)),
                 dtype=np.int64)
    w = series_inverse(u, n, p)
    prod = convolve(u, w, p, n)
    assert prod[0] == 1 and not prod[1:].any()


@given(st.data())
@settings(max_examples=200)
def test_dilation_is_frobenius(data):
    p = data.draw(primes)
    f = data.draw(polys(p, max_deg=5))
    assert dilate(f, p) == f ** p


def test_xpoly_division():
    p = 7
    T = DensePoly.t(p)
    one = DensePoly.const(1, p)
    f = XPoly({2: one, 0: -T}, p)
    g = XPoly({1: one, 0: T}, p)
    prod = f * g
    q, r = prod.divrem_monic(g)
    assert q == f and r.is_zero()
    assert prod.derivative() == XPoly({2: DensePoly.const(3, p), 1: T * 2, 0: -T}, p)
