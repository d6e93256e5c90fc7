from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

ORDER = 6

coefficients = st.lists(
    st.fractions(min_value=-9, max_value=9, max_denominator=7),
    min_size=ORDER + 1,
    max_size=ORDER + 1,
)


@given(coefficients, coefficients, coefficients)
@settings(max_examples=50, deadline=None)
def test_ring_axioms(a, b, c):
    from rubber_system.api.series import TruncatedSeries

    a, b, c = (TruncatedSeries(v, ORDER) for v in (a, b, c))
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == TruncatedSeries.zero(ORDER)
    assert a * TruncatedSeries.one(ORDER) == a


@given(coefficients, st.lists(st.integers(-5, 5), min_size=1, max_size=8))
@settings(max_examples=50, deadline=None)
def test_compose_agrees_with_substitution(f, g):
    from rubber_system.api.oracle import naive_compose
    from rubber_system.api.series import TruncatedSeries, compose

    inner = TruncatedSeries([0] + f[1:], ORDER)
    assert compose(g, inner) == naive_compose(g, inner)


def test_construction_and_indexing():
    from rubber_system.api.series import TruncatedSeries
    from rubber_system.misc.exceptions import SeriesError

    a = TruncatedSeries([1, 2, 3, 4, 5], 2)
    assert a.order == 2
    assert list(a) == [1, 2, 3]
    assert len(TruncatedSeries([1], 4)) == 5
    assert a[2] == 3
    assert isinstance(a[0], Fraction)
    with pytest.raises(SeriesError):
        a[3]
    with pytest.raises(IndexError):
        a[-1]
    assert TruncatedSeries([0, 0, 2], 3).valuation() == 2
    assert TruncatedSeries.zero(3).valuation() == 4
    assert TruncatedSeries.variable(3) == TruncatedSeries([0, 1], 3)


def test_mixed_orders_truncate_to_the_smaller():
    from rubber_system.api.series import TruncatedSeries, add, mul

    a = TruncatedSeries([1, 1, 1, 1], 3)
    b = TruncatedSeries([1, 1], 1)
    assert add(a, b) == TruncatedSeries([2, 2], 1)
    assert mul(a, b).order == 1


def test_scalar_operators():
    from rubber_system.api.series import TruncatedSeries

    a = TruncatedSeries([1, 2], 2)
    assert 2 * a == TruncatedSeries([2, 4], 2)
    assert a / 2 == TruncatedSeries([Fraction(1, 2), 1], 2)
    assert 1 - a == TruncatedSeries([0, -2], 2)
    assert a + 1 == TruncatedSeries([2, 2], 2)
    assert a**2 == TruncatedSeries([1, 4, 4], 2)


def test_reciprocal_and_exp():
    from rubber_system.api.series import (
        TruncatedSeries,
        exp,
        log1p,
        mul,
        reciprocal,
    )
    from rubber_system.misc.exceptions import SeriesError

    one_plus_t = TruncatedSeries([1, 1], 8)
    inverse = reciprocal(one_plus_t)
    assert list(inverse) == [(-1) ** k for k in range(9)]
    assert mul(inverse, one_plus_t) == TruncatedSeries.one(8)
    assert exp(log1p(8)) == one_plus_t
    with pytest.raises(SeriesError):
        reciprocal(TruncatedSeries([0, 1], 3))
    with pytest.raises(SeriesError):
        exp(TruncatedSeries([1, 1], 3))


def test_derivative_and_truncate():
    from rubber_system.api.series import TruncatedSeries, derivative, truncate
    from rubber_system.misc.exceptions import SeriesError

    cube = TruncatedSeries([0, 0, 0, 1], 5)
    assert derivative(cube) == TruncatedSeries([0, 0, 3], 4)
    assert derivative(cube, 3) == TruncatedSeries([6], 2)
    assert derivative(cube, 0) is cube
    with pytest.raises(SeriesError):
        derivative(cube, 6)
    assert truncate(cube, 2) == TruncatedSeries.zero(2)
    with pytest.raises(SeriesError):
        truncate(cube, 7)


def test_partitions():
    from rubber_system.api.series import partitions_of_length

    assert list(partitions_of_length(5, 3)) == [(3, 1, 1), (2, 2, 1)]
    assert list(partitions_of_length(4, 2)) == [(3, 1), (2, 2)]
    assert list(partitions_of_length(3, 4)) == []
    assert list(partitions_of_length(0, 0)) == [()]


def test_bell_polynomials():
    from rubber_system.api.oracle import set_partitions_count
    from rubber_system.api.series import TruncatedSeries, bell, bell_scalar
    from rubber_system.misc.exceptions import SeriesError

    assert bell_scalar(0, 0, []) == 1
    assert bell_scalar(5, 2, [1] * 5) == 15
    assert bell_scalar(5, 3, [1] * 5) == 25
    for m in range(1, 8):
        for j in range(1, m + 1):
            assert bell_scalar(m, j, [1] * m) == set_partitions_count(m, j)
    # B_{3,2}(x_1, x_2) = 3 x_1 x_2
    assert bell_scalar(3, 2, [2, 5]) == 30
    x1 = TruncatedSeries([0, 1], 4)
    x2 = TruncatedSeries([1, 1], 4)
    assert bell(3, 2, [x1, x2]) == TruncatedSeries([0, 3, 3], 4)
    with pytest.raises(SeriesError):
        bell_scalar(2, 3, [1, 1])
    with pytest.raises(SeriesError):
        bell(4, 1, [x1, x2])


def test_compose():
    from rubber_system.api.series import TruncatedSeries, compose
    from rubber_system.misc.exceptions import SeriesError

    f = TruncatedSeries([0, 1, 1], 5)
    # f + f^2
    assert compose([0, 1, 1], f) == TruncatedSeries([0, 1, 2, 2, 1], 5)
    assert compose(TruncatedSeries([3], 5), f) == TruncatedSeries([3], 5)
    with pytest.raises(SeriesError):
        compose([0, 1], TruncatedSeries([1, 1], 3))


def test_closed_form_derivatives():
    from rubber_system.api.recursion import nu1, nu1_derivative
    from rubber_system.api.series import log1p, nu1_derivative_closed_form

    order = 10
    assert nu1_derivative_closed_form(0, order) == nu1(order)
    assert nu1_derivative_closed_form(1, order) == log1p(order)
    for j in range(9):
        assert nu1_derivative(j, order) == nu1_derivative_closed_form(j, order)
    assert list(nu1_derivative_closed_form(4, 2)) == [2, -6, 12]
    assert list(nu1_derivative_closed_form(5, 2)) == [-6, 24, -60]
    assert list(nu1(4)) == [0, 0, Fraction(1, 2), Fraction(-1, 6), Fraction(1, 12)]
