"""Exact q-series arithmetic: frozen values, algebraic identities, inversion."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbrion.errors import InvalidInputError

from qbrion.qalg import (
    QPolynomial,
    TruncatedQSeries,
    euler_inverse,
    gaussian_binomial,
    inverse_reversed_pochhammer,
    pochhammer_finite,
    pochhammer_infinite_inverse,
    q_factorial,
    q_integer,
    q_multinomial,
    q_pochhammer,
)


def poly(*coeffs):
    return QPolynomial(list(coeffs))


# ---------------------------------------------------------------- basics


def test_q_integer_small():
    with pytest.raises(InvalidInputError):
        q_integer(0)
    assert q_integer(1) == poly(1)
    assert q_integer(2) == poly(1, 1)
    assert q_integer(5) == poly(1, 1, 1, 1, 1)


def test_q_factorial():
    assert q_factorial(0) == poly(1)
    assert q_factorial(3) == poly(1, 2, 2, 1)
    # [n]_q! evaluated at q=1 is n!
    for n in range(8):
        assert q_factorial(n).evaluate(1) == math.factorial(n)


def test_gaussian_binomial_frozen():
    assert gaussian_binomial(4, 2) == poly(1, 1, 2, 1, 1)
    assert gaussian_binomial(3, 0) == poly(1)
    assert gaussian_binomial(3, 5) == poly()


@given(st.integers(0, 9), st.integers(0, 9))
def test_gaussian_binomial_symmetry_and_q1(n, k):
    assert gaussian_binomial(n, k) == gaussian_binomial(n, n - k) if k <= n else True
    value = gaussian_binomial(n, k).evaluate(1)
    assert value == (math.comb(n, k) if k <= n else 0)


def test_q_multinomial_frozen():
    assert q_multinomial(3, (1, 1, 1)) == poly(1, 2, 2, 1)
    assert q_multinomial(2, (1, 1)) == poly(1, 1)
    assert q_multinomial(6, (2, 2, 1, 0, 0, 1)).evaluate(1) == 180


@given(st.lists(st.integers(0, 4), min_size=1, max_size=5))
def test_q_multinomial_specializations(parts):
    m = sum(parts)
    value = q_multinomial(m, parts)
    # q=1 gives the ordinary multinomial coefficient, q=0 gives 1
    expected = math.factorial(m)
    for p in parts:
        expected //= math.factorial(p)
    assert value.evaluate(1) == expected
    assert value.coefficient(0) == 1


def test_q_pochhammer_frozen():
    assert q_pochhammer(0) == poly(1)
    assert q_pochhammer(1) == poly(1, -1)
    assert q_pochhammer(2) == poly(1, -1, -1, 1)


# ---------------------------------------------------------------- Pochhammer


def test_pochhammer_finite_frozen():
    # (c;q)_2 = (1-c)(1-cq)
    s = pochhammer_finite(Fraction(1, 2), 2, 4)
    assert s.coefficient(0) == Fraction(1, 2)
    assert s.coefficient(1) == Fraction(-1, 4)
    assert s.coefficient(2) == 0


@given(
    st.fractions(min_value=-3, max_value=3, max_denominator=7),
    st.integers(0, 5),
    st.integers(0, 5),
)
@settings(max_examples=60)
def test_pochhammer_product_identity(c, d, e):
    # (c;q)_d (c q^d;q)_e = (c;q)_{d+e}
    order = 10
    head = pochhammer_finite(c, d, order)
    # build (c q^d; q)_e directly from the definition
    prod = TruncatedQSeries.one(order)
    for i in range(e):
        factor = TruncatedQSeries.constant(1, order) - TruncatedQSeries.constant(
            c, order
        ).shift_pow_q(d + i)
        prod = prod * factor
    assert head * prod == pochhammer_finite(c, d + e, order)


def test_pochhammer_infinite_inverse_frozen():
    s = pochhammer_infinite_inverse(Fraction(1, 2), 2)
    assert s.coefficient(0) == 2
    assert s.coefficient(1) == 1
    assert s.coefficient(2) == Fraction(3, 2)


def test_pochhammer_infinite_inverse_times_product_is_one():
    order = 8
    c = Fraction(2, 3)
    inv = pochhammer_infinite_inverse(c, order)
    # (c;q)_{order+1} agrees with (c;q)_infinity mod q^{order+1}
    assert inv * pochhammer_finite(c, order + 1, order) == TruncatedQSeries.one(order)


def brute_force_partitions(j):
    """Number of integer partitions of j, by direct recursion."""

    def count(n, largest):
        if n == 0:
            return 1
        return sum(count(n - part, part) for part in range(min(n, largest), 0, -1))

    return count(j, j)


def test_euler_inverse_frozen_and_partition_oracle():
    s = euler_inverse(10)
    assert [s.coefficient(j) for j in range(6)] == [1, 1, 2, 3, 5, 7]
    for j in range(11):
        assert s.coefficient(j) == brute_force_partitions(j)
    # weakly increasing
    for j in range(10):
        assert s.coefficient(j + 1) >= s.coefficient(j)


def test_euler_inverse_inverts_the_euler_product():
    order = 12
    prod = TruncatedQSeries.one(order)
    for i in range(1, order + 1):
        prod = prod * (
            TruncatedQSeries.one(order) - TruncatedQSeries.one(order).shift_pow_q(i)
        )
    assert euler_inverse(order) * prod == TruncatedQSeries.one(order)


# ------------------------------------------------- reversed Pochhammer


def test_inverse_reversed_pochhammer_spec_values():
    sign, cpow, shift, series = inverse_reversed_pochhammer(1, 1, 3)
    assert (sign, cpow, shift) == (-1, -1, 1)
    assert series == TruncatedQSeries(3, [1, 1, 1, 1])

    sign, cpow, shift, series = inverse_reversed_pochhammer(1, 0, 3)
    assert (sign, cpow, shift) == (1, 0, 0)
    assert series == TruncatedQSeries.one(3)

    sign, cpow, shift, series = inverse_reversed_pochhammer(Fraction(2), 1, 2)
    assert (sign, cpow, shift) == (-1, -1, 1)
    assert series == TruncatedQSeries(2, [1, Fraction(1, 2), Fraction(1, 4)])


def test_reversal_identity():
    # 1/(q^-1;q^-1)_d = (-1)^d q^{d(d+1)/2} / (q;q)_d, checked through the
    # returned factorization for d <= 8
    order = 20
    for d in range(9):
        sign, cpow, shift, series = inverse_reversed_pochhammer(1, d, order)
        assert sign == (-1) ** d
        assert cpow == -d
        assert shift == d * (d + 1) // 2
        assert series == q_pochhammer(d).to_series(order).inverse()


# ---------------------------------------------------------------- series ring


@given(
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=9), min_size=1, max_size=6)
)
@settings(max_examples=80)
def test_series_inversion(coeffs):
    if coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    order = len(coeffs) + 3
    s = TruncatedQSeries(order, coeffs)
    assert s * s.inverse() == TruncatedQSeries.one(order)


@given(
    st.lists(st.integers(-9, 9), min_size=0, max_size=5),
    st.lists(st.integers(-9, 9), min_size=0, max_size=5),
)
@settings(max_examples=60)
def test_polynomial_ring_laws(a, b):
    pa, pb = QPolynomial(a), QPolynomial(b)
    assert pa + pb == pb + pa
    assert pa * pb == pb * pa
    assert (pa - pb) + pb == pa
    q0 = Fraction(3, 7)
    assert (pa * pb).evaluate(q0) == pa.evaluate(q0) * pb.evaluate(q0)


def test_truncation_propagates_minimum_order():
    a = TruncatedQSeries(5, [1, 0, 0, 0, 0, 1])
    b = TruncatedQSeries(3, [1])
    assert (a * b).order == 3
    assert (a + b).order == 3


def test_shift_pow_q():
    s = TruncatedQSeries(4, [1, 2])
    t = s.shift_pow_q(2)
    assert [t.coefficient(j) for j in range(5)] == [0, 0, 1, 2, 0]
