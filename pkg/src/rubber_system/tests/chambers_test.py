from fractions import Fraction

import pytest


def test_validate():
    from rubber_system.api.chambers import validate
    from rubber_system.api.strata import RamificationDatum

    datum = validate("3,1,-2,-2")
    assert datum == RamificationDatum((3, 1, -2, -2))
    assert validate([3, 1, -2, -2]) == datum
    assert validate(datum) == datum
    assert datum.n == 4
    assert datum[1] == 3
    assert datum.positive == frozenset({1, 2})
    assert datum.negative == frozenset({3, 4})
    assert str(datum) == "3,1,-2,-2"


def test_validate_errors():
    from rubber_system.api.chambers import validate
    from rubber_system.misc.exceptions import (
        BoundExceededError,
        NonZeroTotalError,
        ValidationError,
        VanishingSubsetError,
        ZeroEntryError,
    )

    with pytest.raises(VanishingSubsetError) as error:
        validate((1, -1, 2, -2))
    assert error.value.witness == (1, 2)
    assert error.value.details() == {"witness": [1, 2]}
    assert error.value.code == "vanishing_subset"
    with pytest.raises(ZeroEntryError) as error:
        validate("3,0,-3")
    assert error.value.index == 2
    with pytest.raises(NonZeroTotalError) as error:
        validate((1, 2, 3))
    assert error.value.details() == {"total": 6}
    with pytest.raises(ValidationError):
        validate((1, -1))
    with pytest.raises(ValidationError):
        validate("a,b,c")
    with pytest.raises(BoundExceededError):
        validate((16,) + (-1,) * 16)


def test_canonical_subsets_and_walls():
    from rubber_system.api.chambers import canonical_subsets, wall_spec
    from rubber_system.misc.exceptions import ValidationError

    assert canonical_subsets(3) == ((1,), (1, 2), (1, 3))
    assert len(canonical_subsets(6)) == 2**5 - 1
    assert wall_spec("3,4", 4) == (1, 2)
    assert wall_spec([1, 3], 4) == (1, 3)
    with pytest.raises(ValidationError):
        wall_spec("1,2,3,4", 4)
    with pytest.raises(ValidationError):
        wall_spec("5", 4)


def test_signature():
    from rubber_system.api.chambers import signature

    sig = signature((3, -1, -1, -1))
    assert sig.signs == (1,) * 7
    assert sig.sign([2]) == -1
    assert sig.sign([1, 2]) == 1
    assert sig.to_dict()[0] == {"subset": [1], "sign": "+"}
    other = signature((1, 3, -2, -2))
    assert other.sign([1, 3]) == -1
    assert other.sign([2, 4]) == 1


def test_same_chamber():
    from rubber_system.api.chambers import differing_walls, same_chamber
    from rubber_system.misc.exceptions import DimensionMismatchError

    assert same_chamber((3, -1, -2), (3, -2, -1))
    assert same_chamber((3, 1, -2, -2), (6, 2, -4, -4))
    assert not same_chamber((3, 1, -2, -2), (1, 3, -2, -2))
    assert differing_walls((3, 1, -2, -2), (1, 3, -2, -2)) == [(1, 3), (1, 4)]
    assert differing_walls((3, 1, -2, -2), (3, 1, -2, -2)) == []
    with pytest.raises(DimensionMismatchError):
        same_chamber((2, -1, -1), (3, -1, -1, -1))
    with pytest.raises(DimensionMismatchError):
        differing_walls((2, -1, -1), (3, -1, -1, -1))


def test_random_datum(rng):
    from rubber_system.api.chambers import random_datum, validate

    for n in (3, 5, 7):
        datum = random_datum(n, rng)
        assert datum.n == n
        assert validate(datum.x) == datum


def test_sample_same_chamber(rng):
    from rubber_system.api.chambers import same_chamber, sample_same_chamber

    base = (3, 1, -2, -2)
    samples = sample_same_chamber(base, 3, rng)
    assert len(samples) == 3
    assert len({s.x for s in samples}) == 3
    for sample in samples:
        assert same_chamber(sample, base)
        assert sample.x != base


def test_sample_same_chamber_budget(test_config, rng):
    import mock

    from rubber_system.api.chambers import sample_same_chamber
    from rubber_system.misc import logger

    test_config.override(wall_search_budget=2)
    with mock.patch.object(logger, "warning") as warning:
        assert len(sample_same_chamber((2, -1, -1), 5, rng)) <= 2
    warning.assert_called_once()


def test_sample_across_wall(rng):
    from rubber_system.api.chambers import differing_walls, sample_across_wall

    pair = sample_across_wall("1,3", (3, 1, -2, -2), rng)
    assert pair is not None
    x, y = pair
    assert differing_walls(x, y) == [(1, 3)]
    assert x.weight([1, 3]) * y.weight([1, 3]) < 0


def test_wallcross():
    from rubber_system.api.chambers import wallcross
    from rubber_system.api.strata import total_class

    x, y = (3, 1, -2, -2), (1, 3, -2, -2)
    result = wallcross(x, y)
    assert result.walls == [(1, 3), (1, 4)]
    assert result.difference == total_class(x) - total_class(y)
    assert result.contributing_trees == 2
    assert result.euler == result.difference.evaluate(1)
    record = result.to_dict()
    assert record["x"] == list(x)
    assert record["walls"] == [[1, 3], [1, 4]]

    same = wallcross(x, (6, 2, -4, -4))
    assert same.difference.is_zero()
    assert same.contributing_trees == 0
    assert same.walls == []


def test_wallcross_across_sampled_wall(rng):
    from rubber_system.api.chambers import sample_across_wall, wallcross

    pair = sample_across_wall("1,2", (4, -1, -1, -1, -1), rng)
    assert pair is not None
    result = wallcross(*pair)
    assert result.walls == [(1, 2)]
    # only the trees with a {1,2} split contribute
    assert result.contributing_trees == 4


@pytest.mark.parametrize("n, wall", [(4, "1,2"), (5, "2"), (5, "1,2"), (6, "1,2,3")])
def test_split_product(n, wall):
    from rubber_system.api.chambers import split_product_check

    assert split_product_check(n, wall)


def test_ratio_trend():
    from rubber_system.api.chambers import ratio_trend
    from rubber_system.api.recursion import chi_table

    ratios = ratio_trend(8)
    assert ratios[:3] == [Fraction(1), Fraction(1), Fraction(7, 10)]
    assert all(a > b for a, b in zip(ratios[1:], ratios[2:]))
    table = chi_table(10, 12)
    assert ratio_trend(8, table=table) == ratios


@pytest.mark.slow
def test_ratio_trend_full_range():
    from rubber_system.api.chambers import ratio_trend

    ratios = ratio_trend(19)
    assert len(ratios) == 18
    assert all(a > b for a, b in zip(ratios[1:], ratios[2:]))
