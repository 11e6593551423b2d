from math import factorial, prod

import pytest
from hypothesis import given, settings, strategies as st

from wgcalc.exactnum import MPoly
from wgcalc.partitions import (all_partitions, all_tableaux, b_content, boxes, conjugate,
                               content_sum, contents_multiset, dominance_less, dominates,
                               hook_length_count, hook_products, multiplicities, partition,
                               standard_tableaux, z_lambda)

b = MPoly.var("b")

sizes = st.integers(min_value=1, max_value=8)


@st.composite
def partitions_of_some_size(draw):
    return draw(st.sampled_from(all_partitions(draw(sizes))))


def test_partition_counts():
    assert [len(all_partitions(k)) for k in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]


def test_partition_normalizes():
    assert partition([1, 3, 2]) == (3, 2, 1)
    assert partition([2, 0, 1]) == (2, 1)
    with pytest.raises(ValueError):
        partition([2, -1])


@given(partitions_of_some_size())
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


@given(partitions_of_some_size())
def test_dominance_reverses_under_conjugation(lam):
    for mu in all_partitions(sum(lam)):
        if dominates(lam, mu):
            assert dominates(conjugate(mu), conjugate(lam))


def test_dominance_is_partial():
    assert not dominates((3, 1, 1, 1), (2, 2, 2)) and not dominates((2, 2, 2), (3, 1, 1, 1))
    assert dominance_less((2, 1), (3,))


def test_b_contents():
    assert b_content(1, 1) == MPoly()
    assert b_content(1, 5) == 4 * b + 4
    assert b_content(4, 1) == MPoly.constant(-3)


def test_contents_of_two_rows():
    assert sorted(map(str, contents_multiset((2,)))) == ["0", "b + 1"]
    assert content_sum((1, 1)) == MPoly.constant(-1)


def test_hooks_small():
    assert hook_products((1,)) == (MPoly.constant(1), b + 1)
    hook, hook_dual = hook_products((2,))
    assert hook == b + 2
    assert hook_dual == (2 * b + 2) * (b + 1)


@given(partitions_of_some_size())
def test_hooks_at_zero_give_classical_hook_product(lam):
    hook, hook_dual = hook_products(lam)
    classical = factorial(sum(lam)) // hook_length_count(lam)
    assert hook.evaluate({"b": 0}).constant_value() == classical
    assert hook_dual.evaluate({"b": 0}).constant_value() == classical


def test_tableaux_counts():
    assert len(standard_tableaux((1, 1, 1))) == 1
    assert len(standard_tableaux((2, 1))) == 2
    assert len(all_tableaux(3)) == 4
    assert [len(all_tableaux(k)) for k in range(1, 6)] == [1, 2, 4, 10, 26]


@given(partitions_of_some_size())
@settings(max_examples=30)
def test_tableaux_are_standard_and_counted_by_hooks(lam):
    tabs = standard_tableaux(lam)
    assert all(T.is_standard() and T.shape == lam for T in tabs)
    assert len(tabs) == hook_length_count(lam)


def test_remove_largest():
    T = standard_tableaux((2, 1))[0]
    assert len(T.remove_largest()) == 2
    assert T.remove_largest().is_standard()


def test_z_lambda():
    assert z_lambda((1, 1)) == 2
    assert z_lambda((2,)) == 2
    assert z_lambda((3, 1, 1)) == 6


@given(partitions_of_some_size())
def test_class_sizes_sum_to_factorial(lam):
    k = sum(lam)
    assert sum(factorial(k) // z_lambda(mu) for mu in all_partitions(k)) == factorial(k)
    assert z_lambda(lam) == prod(p ** m * factorial(m) for p, m in multiplicities(lam).items())


def test_boxes():
    assert list(boxes((2, 1))) == [(1, 1), (1, 2), (2, 1)]
