from __future__ import annotations

from fractions import Fraction
from math import comb, factorial as ifact

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mvlaguerre._backend import Q
from mvlaguerre.scalar import (
    RatPoly,
    binomial,
    factorial,
    hermite,
    hypergeometric_terminating,
    laguerre,
    laguerre_derivative_check,
    laguerre_inversion_sum,
    laguerre_parameter_shift,
    pochhammer,
)

from .strategies import nus, rationals

degrees = st.integers(0, 8)


def _laguerre_oracle(n, a):
    """Explicit sum with Fraction arithmetic, independent of the package."""
    a = Fraction(a)
    out = []
    for k in range(n + 1):
        num = Fraction(1)
        for i in range(n - k):
            num *= a + k + 1 + i
        out.append(Fraction((-1) ** k) * num / (ifact(n - k) * ifact(k)))
    return out


@given(degrees, nus)
def test_laguerre_matches_explicit_sum(n, a):
    assert [Fraction(int(c.numerator), int(c.denominator)) for c in laguerre(n, a).coeffs] == _laguerre_oracle(n, a)


@given(st.integers(1, 8), nus)
def test_laguerre_three_term_recurrence(n, a):
    x = RatPoly.x()
    lhs = laguerre(n + 1, a) * (n + 1)
    rhs = (RatPoly.constant(2 * n + 1 + a) - x) * laguerre(n, a) - laguerre(n - 1, a) * (n + a)
    assert lhs == rhs


@given(st.integers(1, 8), nus)
def test_laguerre_derivative(n, a):
    assert laguerre_derivative_check(n, a)


@given(degrees, nus, rationals)
def test_laguerre_parameter_shift(n, a, l):
    coeffs = laguerre_parameter_shift(n, a, l)
    assert len(coeffs) == n + 1 and coeffs[-1] == 1


@pytest.mark.parametrize("a", [Q(0), Q(1), Q(3, 2), Q(-1, 3)])
def test_inversion_sum(a):
    for i in range(7):
        for j in range(i + 1):
            assert laguerre_inversion_sum(i, j, a) == RatPoly.constant(1 if i == j else 0)


def test_inversion_sum_needs_ordered_indices():
    with pytest.raises(ValueError):
        laguerre_inversion_sum(1, 2, 0)


def test_hermite_small_degrees():
    assert hermite(0) == RatPoly.constant(1)
    assert hermite(3) == RatPoly((0, -12, 0, 8))
    assert hermite(4) == RatPoly((12, 0, -48, 0, 16))


@given(st.integers(1, 10))
def test_hermite_derivative(n):
    assert hermite(n).derivative() == hermite(n - 1) * (2 * n)


@given(st.integers(0, 8), rationals, nus)
def test_chu_vandermonde_sum(n, b, c):
    # 2F1(-n, b; c; 1) = (c-b)_n / (c)_n
    assert hypergeometric_terminating([-n, b], [c], 1) == pochhammer(c - b, n) / pochhammer(c, n)


def test_hypergeometric_must_terminate():
    with pytest.raises(ValueError):
        hypergeometric_terminating([Q(1, 2)], [Q(1)], 1)


@given(rationals, st.integers(0, 6))
def test_pochhammer_and_binomial(x, k):
    assert pochhammer(x, k + 1) == pochhammer(x, k) * (x + k)
    assert binomial(x, k) * factorial(k) == pochhammer(x - k + 1, k)


@given(st.integers(0, 12), st.integers(0, 12))
def test_binomial_integers(n, k):
    assert binomial(n, k) == (comb(n, k) if k <= n else 0)


@given(st.lists(rationals, max_size=5), st.lists(rationals, max_size=5), rationals)
def test_ratpoly_ring_and_evaluation(a, b, x):
    p, q = RatPoly(a), RatPoly(b)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - p).degree < 0 or p - p == RatPoly()
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()
