"""Schur polynomials, Schur-basis expansion of products, and formal characters."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .combinat import Partition, as_partition, enumerate_gt_patterns, partitions_of, weight_multiset
from .poly import Poly


class InternalConsistencyError(ArithmeticError):
    """Two independent constructions that must agree did not."""


class RingMismatchError(ValueError):
    pass


def variables(r: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, r + 1))


def _permutation_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def alternant(exponents: Sequence[int], names: Sequence[str]) -> Poly:
    """``det[x_i ** exponents[j]]``."""
    r = len(names)
    terms: dict[tuple[int, ...], Fraction] = {}
    for perm in permutations(range(r)):
        e = [0] * r
        for j, i in enumerate(perm):
            e[i] = exponents[j]
        terms[tuple(e)] = terms.get(tuple(e), 0) + _permutation_sign(perm)
    return Poly(tuple(names), terms)


def schur_polynomial_bialternant(p: Partition | Sequence[int], r: int) -> Poly:
    """``a_{p+delta} / a_delta``; the Vandermonde is divided out one linear factor at a time."""
    p = as_partition(p)
    names = variables(r)
    rho = p.padded(r)
    num = alternant([rho[j] + r - 1 - j for j in range(r)], names)
    try:
        for i in range(r):
            for j in range(i + 1, r):
                num = num.div_linear(names[i], names[j])
    except ArithmeticError as exc:
        raise InternalConsistencyError(f"alternant quotient for {p} is not exact") from exc
    return num.lift(names)


def schur_polynomial_gt(p: Partition | Sequence[int], r: int) -> Poly:
    """Sum of ``x**mu`` over Gelfand-Tsetlin weights, with multiplicity."""
    return Poly(variables(r), dict(enumerate_gt_patterns(p, r)))


def schur_polynomial(p: Partition | Sequence[int], r: int, *, verify: bool = False) -> Poly:
    s = schur_polynomial_bialternant(p, r)
    if verify and s != schur_polynomial_gt(p, r):
        raise InternalConsistencyError(f"bialternant and GT constructions differ for {p}, r={r}")
    return s


def is_symmetric(f: Poly, names: Sequence[str], perm: Sequence[int]) -> bool:
    mapping = {names[i]: names[perm[i]] for i in range(len(names))}
    return f.rename(mapping) == f


def schur_product_expand(p, q, r: int, *, allow_truncation: bool = False) -> dict[Partition, int]:
    """Coefficients of ``s_p * s_q`` in the Schur basis of ``r`` variables.

    The product is peeled from the top: the lexicographically largest monomial
    of a symmetric polynomial is dominant, its coefficient is the coefficient
    of that Schur function, and its Schur polynomial is subtracted.  Only the
    coefficients at dominant exponents are ever needed, so the Kostka numbers
    stand in for the subtracted Schur polynomials.

    With fewer than ``len(p) + len(q)`` variables the expansion loses every
    ``s_nu`` with more than ``r`` rows; that truncation must be requested.
    """
    p, q = as_partition(p), as_partition(q)
    if len(p) + len(q) > r and not allow_truncation:
        raise ValueError(f"{r} variables cannot hold s_{p} * s_{q}; need {len(p) + len(q)}")
    if len(p) > r or len(q) > r:
        return {}
    wp = enumerate_gt_patterns(p, r)
    wq = enumerate_gt_patterns(q, r)
    n = p.size + q.size
    targets = list(partitions_of(n, max_len=r))  # reverse lexicographic: largest first
    product = {}
    for nu in targets:
        key = nu.padded(r)
        product[nu] = sum(mult * wq.get(tuple(k - a for k, a in zip(key, alpha)), 0)
                          for alpha, mult in wp.items())
    result: dict[Partition, int] = {}
    for idx, nu in enumerate(targets):
        c = product[nu]
        if c < 0:
            raise InternalConsistencyError(f"negative Schur coefficient at {nu}")
        if c:
            result[nu] = c
            kostka = enumerate_gt_patterns(nu, r)
            for later in targets[idx + 1:]:
                product[later] -= c * kostka.get(later.padded(r), 0)
    return result


@lru_cache(maxsize=None)
def monomial_to_elementary(beta: tuple[int, ...], r: int) -> Poly:
    """Monomial symmetric function ``m_beta(a_1..a_r)`` as a polynomial in ``e1..er``."""
    names = tuple(f"a{i}" for i in range(1, r + 1))
    padded = beta + (0,) * (r - len(beta))
    orbit = set(permutations(padded))
    m = Poly(names, {e: 1 for e in orbit})
    return symmetric_to_elementary(m, names)


def elementary(k: int, names: Sequence[str]) -> Poly:
    from itertools import combinations
    r = len(names)
    terms = {}
    for combo in combinations(range(r), k):
        e = [0] * r
        for i in combo:
            e[i] = 1
        terms[tuple(e)] = 1
    return Poly(tuple(names), terms)


def symmetric_to_elementary(f: Poly, names: Sequence[str]) -> Poly:
    """Rewrite a polynomial symmetric in ``names`` in ``e1..er``.

    Coefficients may involve other generators.  Raises
    ``InternalConsistencyError`` if ``f`` is not symmetric.
    """
    names = tuple(names)
    r = len(names)
    es = [elementary(k, names) for k in range(1, r + 1)]
    egens = [Poly.var(f"e{k}") for k in range(1, r + 1)]
    groups = f.split(names)
    result = Poly.const(0)
    while groups:
        beta = max(groups)
        coeff = groups[beta]
        if any(x < y for x, y in zip(beta, beta[1:])):
            raise InternalConsistencyError(f"polynomial is not symmetric in {names}")
        powers = [beta[i] - (beta[i + 1] if i + 1 < r else 0) for i in range(r)]
        sub = Poly.const(1)
        term = Poly.const(1)
        for k, pw in enumerate(powers):
            if pw:
                sub = sub * es[k] ** pw
                term = term * egens[k] ** pw
        result = result + coeff * term
        for e, c in sub.split(names).items():
            # c is a rational constant
            cur = groups.get(e, Poly.const(0)) - coeff * c
            if cur.is_zero():
                groups.pop(e, None)
            else:
                groups[e] = cur
    return result


def formal_character(p, line_classes: Sequence):
    """``sum_mu mult(mu) * exp(mu . classes)`` over the weights of ``Gamma^p``.

    ``line_classes`` are first Chern classes (:class:`jetcalc.chow.ChowClass`)
    in one Chow ring.  For a direct sum of line bundles this is the Chern
    character of the Schur functor applied to it.
    """
    if not line_classes:
        raise ValueError("need at least one line class")
    ring = line_classes[0].variety
    if any(c.variety != ring for c in line_classes):
        raise RingMismatchError("line classes live in different Chow rings")
    weights: Counter = weight_multiset(p, len(line_classes))
    total = None
    for mu, mult in sorted(weights.items()):
        c = line_classes[0] * mu[0]
        for k in range(1, len(mu)):
            c = c + line_classes[k] * mu[k]
        term = c.exp() * mult
        total = term if total is None else total + term
    return total
