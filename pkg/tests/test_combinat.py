from collections import Counter
from itertools import permutations
from math import factorial, prod

import pytest
from hypothesis import given, strategies as st

from jetcalc.combinat import (
    Partition, SchurWeight, UndefinedFunctorError, conjugate, count_standard_tableaux, enumerate_gt_patterns,
    is_semistandard, is_yamanouchi, lr_coefficient, lr_tableaux, partitions_of, row_word, schur_rank,
    weight_multiset,
)

partitions = st.lists(st.integers(0, 6), max_size=4).map(lambda xs: Partition(sorted(xs, reverse=True)))


def hook_count(p: Partition) -> int:
    conj = conjugate(p)
    hooks = prod(p[i] - j + conj[j] - i - 1 for i in range(len(p)) for j in range(p[i]))
    return factorial(p.size) // hooks


def brute_standard(p: Partition) -> int:
    # fillings of the diagram by 1..n increasing along rows and columns
    cells = [(i, j) for i in range(len(p)) for j in range(p[i])]
    count = 0
    for perm in permutations(range(1, len(cells) + 1)):
        t = dict(zip(cells, perm))
        if all(t.get((i, j + 1), 99) > v and t.get((i + 1, j), 99) > v for (i, j), v in t.items()):
            count += 1
    return count


def test_partition_normalizes_and_validates():
    assert Partition((3, 1, 0, 0)).parts == (3, 1)
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))


def test_schur_weight_normalize():
    assert SchurWeight((2, 0, -1)).normalize() == (Partition((3, 1)), -1)
    assert SchurWeight((1, 1, 1)).normalize() == (Partition(), 1)


@given(partitions.filter(lambda p: 0 < p.size))
def test_standard_tableaux_formula_matches_hook_length(p):
    assert count_standard_tableaux(p) == hook_count(p)


@pytest.mark.parametrize("p", [(1,), (2, 1), (3, 2), (2, 2, 1), (3, 1, 1)])
def test_standard_tableaux_brute_force(p):
    assert count_standard_tableaux(p) == brute_standard(Partition(p))


def test_yamanouchi():
    assert is_yamanouchi([1, 2, 1])
    assert is_yamanouchi([2, 1, 1])
    assert not is_yamanouchi([1, 2])
    assert not is_yamanouchi([1, 1, 3, 2])


def test_lr_tableaux_are_valid():
    outer, inner, content = Partition((4, 3, 2)), Partition((2, 1)), Partition((3, 2, 1))
    found = list(lr_tableaux(outer, inner, content))
    assert len(found) == lr_coefficient(inner, content, outer) == 2
    for t in found:
        assert is_semistandard(t)
        assert is_yamanouchi(row_word(t))
        assert Counter(t.values()) == Counter({1: 3, 2: 2, 3: 1})


def test_lr_known_values():
    assert lr_coefficient((1, 1), (1,), (2, 1)) == 1
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert lr_coefficient((2, 1), (1,), (4,)) == 0


@given(partitions, partitions)
def test_lr_symmetry(lam, mu):
    for nu in partitions_of(lam.size + mu.size, max_len=4):
        assert lr_coefficient(lam, mu, nu) == lr_coefficient(mu, lam, nu)


def test_schur_rank():
    assert schur_rank((2, 1, 0), 3) == 8
    assert schur_rank((1, 1, 0, 0), 4) == 6
    assert schur_rank((1, 0, 0, 0, 0), 5) == 5
    assert schur_rank((0, 1), 5) == 0
    assert schur_rank((1, 1, 1), 3) == 1
    with pytest.raises(UndefinedFunctorError):
        schur_rank((1, 1, 1, 1), 3)


@given(partitions, st.integers(1, 4))
def test_schur_rank_equals_gt_count(p, r):
    if len(p) > r:
        return
    assert schur_rank(p, r) == sum(enumerate_gt_patterns(p, r).values())


@given(partitions, st.integers(1, 4))
def test_gt_weights_symmetric_and_sized(p, r):
    if len(p) > r:
        return
    w = enumerate_gt_patterns(p, r)
    assert all(sum(mu) == p.size for mu in w)
    for mu, c in w.items():
        assert w[tuple(reversed(mu))] == c


def test_weight_multiset_det_twist():
    w = weight_multiset((1, 1, 1), 3)
    assert w == Counter({(1, 1, 1): 1})
    w = weight_multiset((0, -1, -1), 3)
    assert sorted(w) == [(-1, -1, 0), (-1, 0, -1), (0, -1, -1)]
    with pytest.raises(UndefinedFunctorError):
        weight_multiset((1, 0, -1), 4)


def test_partitions_of_order():
    assert [p.parts for p in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(list(partitions_of(6, max_len=3))) == 7


@given(st.lists(st.integers(0, 12), max_size=8).map(lambda xs: Partition(sorted(xs, reverse=True))))
def test_conjugate_involution(p):
    assert conjugate(conjugate(p)) == p


@pytest.mark.parametrize("n", range(1, 9))
def test_standard_tableaux_all_small_shapes(n):
    total = 0
    for p in partitions_of(n):
        v = count_standard_tableaux(p)
        assert v == hook_count(p)
        if n <= 6:
            assert v == brute_standard(p)
        total += v * v
    assert total == factorial(n)


@pytest.mark.parametrize("rank", [2, 3, 4])
@pytest.mark.parametrize("n", range(1, 7))
def test_tensor_power_decomposition(rank, n):
    total = sum(count_standard_tableaux(p) * schur_rank(p, rank) for p in partitions_of(n, max_len=rank))
    assert total == rank ** n


def test_det_twist_keeps_rank():
    assert schur_rank((3, 1, -2), 3) == schur_rank((5, 3, 0), 3)
    assert schur_rank((1, 1), 3) == 3
