from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpart.partitions import (
    FrobeniusCoords,
    Partition,
    PartitionConstraints,
    classify,
    conjugate,
    content_pochhammer,
    dim_symmetric_group,
    enumerate_partitions,
    fatten,
    frobenius,
    hook_lengths,
    is_even,
    is_fat,
    partitions_of,
    schur_at_pinfty,
    split_fat,
)

from oracles import brute_partitions, content_product, hook_dimension

partitions_st = st.lists(st.integers(1, 7), max_size=7).map(lambda xs: Partition(tuple(sorted(xs, reverse=True))))


def test_parse_and_format():
    assert Partition.parse("2,2,1") == Partition((2, 2, 1))
    assert Partition.parse("-") == Partition(())
    assert Partition.parse("") == Partition(())
    assert str(Partition((3, 1))) == "3,1"
    assert str(Partition(())) == "-"
    assert Partition((2, 1, 0, 0)).parts == (2, 1)
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition.parse("2,x")


def test_cells_and_contents():
    lam = Partition((2, 1))
    assert list(lam.cells()) == [(1, 1), (1, 2), (2, 1)]
    assert lam.contents() == [0, 1, -1]
    assert lam[5] == 0


@pytest.mark.parametrize("n", range(0, 13))
def test_enumeration_matches_brute_force(n):
    assert [p.parts for p in partitions_of(n)] == brute_partitions(n)


def test_enumeration_order_and_bounds():
    got = [str(p) for p in enumerate_partitions(PartitionConstraints((4, 4)))]
    assert got == ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]
    c = PartitionConstraints((0, 8), max_length=3, max_part=2)
    for lam in enumerate_partitions(c):
        assert lam.length <= 3 and lam[0] <= 2
    with pytest.raises(ValueError):
        enumerate_partitions(PartitionConstraints((0, 41)))
    with pytest.raises(ValueError):
        PartitionConstraints((0, 3), class_filter="odd")


@pytest.mark.parametrize("cls,pred", [
    ("fat", lambda p: classify(p)["is_fat"]),
    ("even-parts", lambda p: classify(p)["is_even_parts"]),
    ("strict", lambda p: classify(p)["is_strict"]),
])
def test_class_filters_match_predicates(cls, pred):
    for length, width in [(None, None), (4, None), (None, 3), (3, 4)]:
        got = enumerate_partitions(PartitionConstraints((0, 12), length, width, cls))
        want = [p for p in enumerate_partitions(PartitionConstraints((0, 12), length, width)) if pred(p)]
        assert sorted(got, key=lambda p: (p.weight, p.parts)) == sorted(want, key=lambda p: (p.weight, p.parts))


def test_fat_small_cases():
    assert is_fat(Partition((1, 1)))
    assert is_fat(Partition((2, 2, 1, 1)))
    assert not is_fat(Partition((2, 1)))
    assert not is_fat(Partition((1, 1, 1)))
    assert is_fat(Partition(()))
    assert fatten(Partition((2, 1))) == Partition((2, 2, 1, 1))
    assert split_fat(Partition((3, 3, 1, 1))) == Partition((3, 1))
    with pytest.raises(ValueError):
        split_fat(Partition((2, 1)))


@given(partitions_st)
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).weight == lam.weight


@given(partitions_st)
def test_fat_iff_conjugate_even(lam):
    assert is_fat(lam) == is_even(conjugate(lam))


@given(partitions_st)
def test_frobenius_roundtrip(lam):
    f = frobenius(lam)
    assert f.to_partition() == lam
    assert sum(f.arms) + sum(f.legs) + len(f.arms) == lam.weight


def test_frobenius_validation():
    assert frobenius(Partition((3, 1))) == FrobeniusCoords((2,), (1,))
    with pytest.raises(ValueError):
        FrobeniusCoords((1, 1), (0, 0))


@given(partitions_st, st.fractions(min_value=-9, max_value=9, max_denominator=7))
@settings(max_examples=60)
def test_content_pochhammer_matches_oracle(lam, a):
    assert content_pochhammer(a, lam) == content_product(a, lam.parts)


def test_content_pochhammer_vanishing():
    # a positive integer a kills every partition longer than a
    assert content_pochhammer(2, Partition((1, 1, 1))) == 0
    assert content_pochhammer(2, Partition((5, 2))) != 0
    assert content_pochhammer(-2, Partition((3,))) == 0


@pytest.mark.parametrize("n", range(0, 10))
def test_dimension_formulas(n):
    total = 0
    for lam in partitions_of(n):
        d = dim_symmetric_group(lam)
        assert d == hook_dimension(lam.parts) if lam.parts else d == 1
        total += d * d
    assert total == factorial(n)


def test_hook_lengths_and_pinfty():
    assert sorted(hook_lengths(Partition((2, 1)))) == [1, 1, 3]
    assert schur_at_pinfty(Partition((1, 1))) == Fraction(1, 2)
    assert schur_at_pinfty(Partition((2, 2))) == Fraction(1, 12)
    assert schur_at_pinfty(Partition(())) == 1
