from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from jetcalc.combinat import Partition, lr_coefficient
from jetcalc.poly import Poly
from jetcalc.symfunc import (
    elementary, is_symmetric, monomial_to_elementary, schur_polynomial, schur_polynomial_gt, schur_product_expand,
    symmetric_to_elementary, variables,
)

partitions = st.lists(st.integers(0, 4), max_size=3).map(lambda xs: Partition(sorted(xs, reverse=True)))


@given(partitions)
def test_bialternant_equals_gt(p):
    assert schur_polynomial(p, 3) == schur_polynomial_gt(p, 3)


def test_schur_polynomial_small():
    x1, x2 = Poly.var("x1"), Poly.var("x2")
    assert schur_polynomial((1, 1), 2) == x1 * x2
    assert schur_polynomial((2,), 2) == x1 ** 2 + x1 * x2 + x2 ** 2


@given(partitions)
def test_schur_polynomials_are_symmetric(p):
    s = schur_polynomial(p, 3)
    for perm in permutations(range(3)):
        assert is_symmetric(s, variables(3), perm)


def test_product_expansion_matches_direct_product():
    r = 4
    p, q = Partition((2, 1)), Partition((1, 1))
    lhs = schur_polynomial(p, r) * schur_polynomial(q, r)
    rhs = Poly.const(0)
    for nu, c in schur_product_expand(p, q, r).items():
        rhs = rhs + schur_polynomial(nu, r) * c
    assert lhs == rhs


def test_product_expansion_requires_room():
    with pytest.raises(ValueError):
        schur_product_expand((1, 1), (1, 1), 3)
    trunc = schur_product_expand((1, 1), (1, 1), 3, allow_truncation=True)
    assert Partition((1, 1, 1, 1)) not in trunc
    assert trunc[Partition((2, 1, 1))] == 1


def test_lr_against_product_small():
    for nu, c in schur_product_expand((2, 1), (2, 1), 6).items():
        assert lr_coefficient((2, 1), (2, 1), nu) == c


@given(st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_monomial_to_elementary_roundtrip(beta):
    beta = tuple(sorted(beta, reverse=True))
    names = ("a1", "a2", "a3")
    expr = monomial_to_elementary(beta, 3)
    back = expr.subs({f"e{k}": elementary(k, names) for k in (1, 2, 3)})
    orbit = {e for e in permutations(beta)}
    assert back == Poly(names, {e: 1 for e in orbit})


def test_symmetric_to_elementary_rejects_asymmetric():
    from jetcalc.symfunc import InternalConsistencyError
    with pytest.raises(InternalConsistencyError):
        symmetric_to_elementary(Poly.var("a1"), ("a1", "a2"))
