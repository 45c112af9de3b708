"""Graded pieces of the order 2 and 3 jet bundles and their Euler characteristics.

For order 3 on a threefold the pieces are ``(gamma, lambda)`` with
``lambda_1 + 2 lambda_2 + 3 lambda_3 = m - gamma`` and
``lambda_i - lambda_j >= gamma``.  Writing

    lambda_3 = c,  lambda_2 = c + gamma + b,  lambda_1 = c + 2 gamma + b + a

turns the index set into the lattice points of ``5 gamma + 3 b + 6 c + a = m``
with all coordinates non-negative, so every sum of a polynomial in
``lambda`` over the pieces is a quasi-polynomial in ``m`` (period dividing 30).

Since ``chi(Gamma^lambda)`` is a polynomial of degree 6 in ``lambda``, the sum
over the pieces only needs the power sums ``sum lambda^alpha`` for
``|alpha| <= 6``.  Those are computed with numpy in int64, in chunks small
enough that no partial sum can overflow, and finished in Python integers.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Callable, Iterator, Sequence

import numpy as np

from .cache import DiskCache
from .chow import (
    LAMBDA, Atom, Schur, VarietySpec, euler_characteristic, flag_chi_closed_form,
)
from .combinat import Partition, schur_rank
from .poly import Poly

M = Poly.var("m")
MAX_DEGREE = 6
INT64_MAX = np.iinfo(np.int64).max


class FitError(RuntimeError):
    """No period up to the search limit reproduces the held-out values."""


# --------------------------------------------------------------------------
# decompositions


@dataclass(frozen=True)
class JetDecomposition:
    order: int
    m: int
    pieces: tuple[tuple[int, Partition], ...]

    def __len__(self) -> int:
        return len(self.pieces)

    def __iter__(self) -> Iterator[tuple[int, Partition]]:
        return iter(self.pieces)

    def partitions(self) -> list[Partition]:
        return [lam for _, lam in self.pieces]


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")


def decompose_gr3(m: int) -> JetDecomposition:
    """Pieces of order 3, ``gamma`` ascending, then ``lambda`` in decreasing lexicographic order."""
    _check_m(m)
    pieces = []
    for gamma in range(m // 5 + 1):
        n = m - gamma
        found = []
        for l3 in range(n // 6 + 1):
            for l2 in range(l3 + gamma, (n - 3 * l3) // 2 + 1):
                l1 = n - 2 * l2 - 3 * l3
                if l1 - l2 >= gamma and l2 - l3 >= gamma:
                    found.append((l1, l2, l3))
        for lam in sorted(found, reverse=True):
            pieces.append((gamma, Partition(lam)))
    return JetDecomposition(3, m, tuple(pieces))


def decompose_gr2(m: int) -> JetDecomposition:
    """Pieces ``(lambda_1, lambda_2, 0)`` with ``lambda_1 + 2 lambda_2 = m``."""
    _check_m(m)
    pieces = []
    for l2 in range(m // 3 + 1):
        pieces.append((0, Partition((m - 2 * l2, l2))))
    return JetDecomposition(2, m, tuple(pieces))


def decompose(order: int, m: int) -> JetDecomposition:
    if order == 3:
        return decompose_gr3(m)
    if order == 2:
        return decompose_gr2(m)
    raise ValueError(f"order must be 2 or 3, got {order!r}")


# --------------------------------------------------------------------------
# power sums over the pieces


@lru_cache(maxsize=None)
def monomials(max_degree: int = MAX_DEGREE) -> tuple[tuple[int, int, int], ...]:
    return tuple(a for a in product(range(max_degree + 1), repeat=3) if sum(a) <= max_degree)


def piece_arrays(order: int, m: int, min_gamma: int = 0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(lambda_1, lambda_2, lambda_3)`` of every piece as int64 arrays."""
    _check_m(m)
    if order == 2:
        l2 = np.arange(m // 3 + 1, dtype=np.int64)
        return m - 2 * l2, l2, np.zeros_like(l2)
    if order != 3:
        raise ValueError(f"order must be 2 or 3, got {order!r}")
    g, b, c = np.meshgrid(
        np.arange(min_gamma, m // 5 + 1, dtype=np.int64),
        np.arange(m // 3 + 1, dtype=np.int64),
        np.arange(m // 6 + 1, dtype=np.int64),
        indexing="ij",
    )
    a = m - 5 * g - 3 * b - 6 * c
    keep = a >= 0
    g, b, c, a = g[keep], b[keep], c[keep], a[keep]
    return c + 2 * g + b + a, c + g + b, c


def _exact_sum(values: np.ndarray, bound: int) -> int:
    """Sum of non-negative int64 values each at most ``bound``, without overflow."""
    if values.size == 0:
        return 0
    chunk = max(1, INT64_MAX // max(bound, 1))
    if values.size <= chunk:
        return int(values.sum())
    pad = (-values.size) % chunk
    if pad:
        values = np.concatenate([values, np.zeros(pad, dtype=np.int64)])
    partial = values.reshape(-1, chunk).sum(axis=1)
    return sum(int(x) for x in partial)


def _moments_uncached(order: int, m: int, min_gamma: int, max_degree: int) -> tuple[int, ...]:
    l1, l2, l3 = piece_arrays(order, m, min_gamma)
    top = int(l1.max()) if l1.size else 0
    if top ** max_degree > INT64_MAX:
        raise OverflowError(f"m={m} is too large for int64 power sums of degree {max_degree}")
    pw = [[np.ones_like(x)] for x in (l1, l2, l3)]
    for k in range(1, max_degree + 1):
        for lst, x in zip(pw, (l1, l2, l3)):
            lst.append(lst[-1] * x)
    out = []
    for i, j, k in monomials(max_degree):
        vals = pw[0][i] * pw[1][j] * pw[2][k]
        # lambda_1 is the largest part, so every value is at most top**(i+j+k)
        out.append(_exact_sum(vals, top ** (i + j + k)))
    return tuple(out)


_MEMO: dict[tuple, tuple[int, ...]] = {}
_disk: DiskCache | None = None


def set_cache_dir(path: str | os.PathLike | None) -> None:
    """Persist power sums under ``path``; ``None`` switches the disk cache off."""
    global _disk
    _disk = DiskCache(path) if path is not None else None


def clear_memo() -> None:
    """Forget power sums held in memory (the disk cache is untouched)."""
    _MEMO.clear()


def _moment_key(order: int, m: int, min_gamma: int, max_degree: int) -> str:
    return f"moments:order={order},m={m},min_gamma={min_gamma},deg={max_degree}"


def lambda_moments(order: int, m: int, min_gamma: int = 0, max_degree: int = MAX_DEGREE) -> dict[tuple[int, int, int], int]:
    """``sum over pieces of lambda^alpha`` for every ``|alpha| <= max_degree``."""
    key = (order, m, min_gamma, max_degree)
    vals = _MEMO.get(key)
    if vals is None:
        skey = _moment_key(*key)
        stored = _disk.get(skey) if _disk is not None else None
        if stored is not None:
            vals = tuple(int(x) for x in stored)
        else:
            vals = _moments_uncached(order, m, min_gamma, max_degree)
            if _disk is not None:
                _disk.put(skey, [str(x) for x in vals])
        _MEMO[key] = vals
    return dict(zip(monomials(max_degree), vals))


def _moments_job(args):
    return args, _moments_uncached(*args)


def prefetch_moments(order: int, ms: Sequence[int], min_gamma: int = 0, max_degree: int = MAX_DEGREE, jobs: int = 1) -> None:
    """Fill the cache for several ``m`` at once, optionally in worker processes."""
    todo = []
    for m in ms:
        key = (order, m, min_gamma, max_degree)
        if key in _MEMO:
            continue
        stored = _disk.get(_moment_key(*key)) if _disk is not None else None
        if stored is not None:
            _MEMO[key] = tuple(int(x) for x in stored)
        else:
            todo.append(key)
    if not todo:
        return
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_moments_job, todo, chunksize=4))
    else:
        results = [_moments_job(k) for k in todo]
    for key, vals in results:
        _MEMO[key] = vals
        if _disk is not None:
            _disk.put(_moment_key(*key), [str(x) for x in vals])


def sum_over_pieces(f: Poly, order: int, m: int, min_gamma: int = 0) -> Poly:
    """``sum over pieces of f(lambda)`` for ``f`` polynomial in ``l1, l2, l3`` (other variables kept)."""
    parts = f.split(LAMBDA)
    if parts and max(sum(a) for a in parts) > MAX_DEGREE:
        raise ValueError(f"polynomial has lambda-degree above {MAX_DEGREE}")
    mom = lambda_moments(order, m, min_gamma)
    total = Poly.const(0)
    for alpha, coeff in parts.items():
        s = mom[alpha]
        if s:
            total = total + coeff * s
    return total


# --------------------------------------------------------------------------
# Euler characteristics


def jet_atom(v: VarietySpec) -> Atom:
    if v.kind == "log":
        return Atom.LOG_COTANGENT
    if v.kind == "X" and v.dim == 3:
        return Atom.COTANGENT
    raise ValueError(f"jet sums are implemented for threefolds in P^4 and log pairs on P^3, not {v}")


def chi_jets(v: VarietySpec, order: int, m: int, engine: str = "closed") -> Poly:
    """Euler characteristic of the order 2 or 3 jet bundle, via its graded pieces.

    ``engine="closed"`` sums the closed form over power sums; ``"weights"``
    sums the weight-enumeration Euler characteristic piece by piece.
    """
    _check_m(m)
    atom = jet_atom(v)
    if engine == "closed":
        return sum_over_pieces(flag_chi_closed_form(v, (0, 0, 0), atom), order, m)
    if engine == "weights":
        total = Poly.const(0)
        for _, lam in decompose(order, m):
            total = total + euler_characteristic(v, Schur(lam.padded(3), atom))
        return total
    raise ValueError(f"unknown engine {engine!r}")


def rank_jets(order: int, m: int) -> int:
    """Total rank of the graded pieces in dimension 3."""
    return sum(schur_rank(lam.padded(3), 3) for _, lam in decompose(order, m))


# --------------------------------------------------------------------------
# quasi-polynomials


@dataclass(frozen=True)
class QuasiPolynomial:
    """One polynomial in ``m`` per residue class; ``polys[r]`` is used when ``m % period == r``."""

    period: int
    polys: tuple[Poly, ...]

    def __post_init__(self) -> None:
        if self.period < 1 or len(self.polys) != self.period:
            raise ValueError("need exactly one polynomial per residue class")

    def __call__(self, m: int) -> Poly:
        return self.polys[m % self.period].subs({"m": m})

    @property
    def degree(self) -> int:
        return max(p.degree("m") for p in self.polys)

    def coefficient(self, k: int) -> Poly:
        """Coefficient of ``m^k``; raises if it depends on the residue class."""
        coeffs = {p.coeff("m", k) for p in self.polys}
        if len(coeffs) != 1:
            raise FitError(f"coefficient of m^{k} depends on the residue class")
        return coeffs.pop()

    def is_polynomial(self) -> bool:
        return len(set(self.polys)) == 1


def _binomial_poly(x: Poly, j: int) -> Poly:
    out = Poly.const(1)
    for i in range(j):
        out = out * (x - i) * Fraction(1, i + 1)
    return out


def interpolate_progression(values: Sequence[Poly], start: int, step: int) -> Poly:
    """Polynomial in ``m`` through ``(start + k*step, values[k])`` (Newton forward differences)."""
    diffs = [Poly.coerce(v) for v in values]
    k = (M - start) * Fraction(1, step)
    result = Poly.const(0)
    for j in range(len(diffs)):
        if not diffs[0].is_zero():
            result = result + diffs[0] * _binomial_poly(k, j)
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    return result


def fit_quasi_polynomial(
    f: Callable[[int], Poly],
    degree: int,
    max_period: int = 60,
    holdout: int = 3,
    prefetch: Callable[[Sequence[int]], None] | None = None,
) -> QuasiPolynomial:
    """Smallest period ``P <= max_period`` whose per-residue fits of degree ``degree``
    reproduce ``holdout`` further values in every class.

    Samples ``m >= 1``; residue 0 starts at ``m = P``.
    """
    need = degree + 1 + holdout
    for period in range(1, max_period + 1):
        if prefetch is not None:
            prefetch(range(1, period * need + 1))
        polys = []
        ok = True
        for r in range(period):
            start = r if r else period
            ms = [start + k * period for k in range(need)]
            vals = [Poly.coerce(f(m)) for m in ms]
            p = interpolate_progression(vals[: degree + 1], start, period)
            if any(p.subs({"m": m}) != v for m, v in zip(ms[degree + 1:], vals[degree + 1:])):
                ok = False
                break
            polys.append(p)
        if ok:
            return QuasiPolynomial(period, tuple(polys))
    raise FitError(f"no period <= {max_period} fits degree {degree} with {holdout} held-out points")


DEFAULT_DEGREE = {2: 7, 3: 9}


def fit_leading(v: VarietySpec, order: int, degree: int | None = None, jobs: int = 1) -> tuple[QuasiPolynomial, Poly]:
    """Fit ``chi_jets`` as a quasi-polynomial in ``m``; return it and its ``m^degree`` coefficient."""
    degree = DEFAULT_DEGREE[order] if degree is None else degree
    qp = fit_quasi_polynomial(
        lambda m: chi_jets(v, order, m),
        degree,
        prefetch=lambda ms: prefetch_moments(order, ms, jobs=jobs),
    )
    return qp, qp.coefficient(degree)


def fit_piece_sum(f: Poly, order: int, degree: int, min_gamma: int = 0, jobs: int = 1) -> QuasiPolynomial:
    """Quasi-polynomial of ``m -> sum over pieces of f(lambda)``."""
    return fit_quasi_polynomial(
        lambda m: sum_over_pieces(f, order, m, min_gamma),
        degree,
        prefetch=lambda ms: prefetch_moments(order, ms, min_gamma, jobs=jobs),
    )


# --------------------------------------------------------------------------
# leading terms by integration over the simplex


_SIMPLEX = {
    # coordinates, weights of the constraint sum w.x <= 1, and lambda in them
    3: (("g", "b", "c"), (5, 3, 6)),
    2: (("b",), (3,)),
}


def _lambda_forms(order: int) -> tuple[Poly, Poly, Poly]:
    if order == 3:
        g, b, c = Poly.var("g"), Poly.var("b"), Poly.var("c")
        a = 1 - 5 * g - 3 * b - 6 * c
        return c + 2 * g + b + a, c + g + b, c
    b = Poly.var("b")
    return 1 - 2 * b, b, Poly.const(0)


def simplex_integral(f: Poly, order: int) -> Poly:
    """``integral of f(lambda(x)) dx`` over the scaled index simplex (``m = 1``)."""
    names, weights = _SIMPLEX[order]
    forms = dict(zip(LAMBDA, _lambda_forms(order)))
    g = f.subs(forms)
    n = len(names)
    total = Poly.const(0)
    for alpha, coeff in g.split(names).items():
        num = 1
        den = factorial(sum(alpha) + n)
        for a, w in zip(alpha, weights):
            num *= factorial(a)
            den *= w ** (a + 1)
        total = total + coeff * Fraction(num, den)
    return total


def leading_by_integration(f: Poly, order: int) -> Poly:
    """Coefficient of ``m^(deg f + dim)`` in ``sum over pieces of f``, from the top homogeneous part of ``f``."""
    top = f.degree(LAMBDA)
    return simplex_integral(f.homogeneous_part(LAMBDA, top), order)


def chi_leading_exact(v: VarietySpec, order: int) -> Poly:
    return leading_by_integration(flag_chi_closed_form(v, (0, 0, 0), jet_atom(v)), order)


__all__ = [
    "DEFAULT_DEGREE", "FitError", "clear_memo", "JetDecomposition", "QuasiPolynomial", "chi_jets", "chi_leading_exact",
    "decompose", "decompose_gr2", "decompose_gr3", "fit_leading", "fit_piece_sum", "fit_quasi_polynomial",
    "interpolate_progression", "lambda_moments", "leading_by_integration", "monomials", "piece_arrays",
    "prefetch_moments", "rank_jets", "set_cache_dir", "simplex_integral", "sum_over_pieces",
]
