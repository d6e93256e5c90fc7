import pytest
from hypothesis import given
from hypothesis import strategies as st

coefficients = st.lists(st.integers(min_value=-50, max_value=50), max_size=6)


def test_construction():
    from rubber_system.model.gclass import ONE, ZERO, GClass, L

    assert GClass([1, 2, 0, 0]).coefficients == (1, 2)
    assert GClass().is_zero()
    assert ZERO.degree == -1
    assert (L - 2).coefficients == (-2, 1)
    assert ONE == 1
    assert GClass.from_roots([2, 3]) == GClass([6, -5, 1])
    assert hash(GClass([1, 1])) == hash(GClass([1, 1, 0]))
    assert list(GClass([4, 5])) == [4, 5]


def test_arithmetic():
    from rubber_system.model.gclass import GClass, L

    torus = L - 1
    assert torus**0 == 1
    assert torus**2 == GClass([1, -2, 1])
    assert (L + 1) * (L - 1) == L**2 - 1
    assert 2 - L == GClass([2, -1])
    assert 3 * L == GClass([0, 3])
    assert sum([L, L, 1], GClass()) == GClass([1, 2])
    with pytest.raises(ValueError):
        L ** -1


def test_evaluate_and_str():
    from rubber_system.model.gclass import GClass

    poly = GClass([1, 5, 1])
    assert poly.evaluate(1) == 7
    assert poly.evaluate(0) == 1
    assert poly.evaluate(2) == 15
    assert str(poly) == "L^2 + 5*L + 1"
    assert str(GClass([-2, 1])) == "L - 2"
    assert str(GClass([0, -1])) == "-L"
    assert str(GClass()) == "0"
    assert repr(poly) == "GClass([1, 5, 1])"
    assert poly.to_dict() == [1, 5, 1]


@given(coefficients, coefficients, st.integers(min_value=-3, max_value=3))
def test_evaluation_is_a_ring_map(a, b, value):
    from rubber_system.model.gclass import GClass

    p, q = GClass(a), GClass(b)
    assert (p + q).evaluate(value) == p.evaluate(value) + q.evaluate(value)
    assert (p * q).evaluate(value) == p.evaluate(value) * q.evaluate(value)
    assert (p - q) + q == p
