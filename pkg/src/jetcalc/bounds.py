"""Upper bounds for h^2 of the order 3 jet bundle and the resulting degree thresholds.

All thresholds here are *persistent*: the smallest integer ``d0`` such that
the polynomial is positive at every integer ``d >= d0``.  The polynomials
involved have small spurious positive windows (the Euler quartic is already
positive at ``d = 3``), so the first sign change alone is not meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

import numpy as np

from .chow import (
    LAMBDA, Atom, ChowClass, HypersurfaceIn, LogPair, VarietySpec, chern_total, flag_chi_closed_form,
    flag_positivity_condition,
)
from .combinat import Partition, as_partition
from .jets import decompose_gr3, fit_leading, fit_piece_sum, piece_arrays, sum_over_pieces
from .poly import Poly

D = Poly.var("d")
EULER_QUARTIC = Poly.var("d") * (389 * D ** 3 - 20739 * D ** 2 + 185559 * D - 358873)
PUBLISHED_C = Fraction(49403, 2520000000)


class PreconditionError(ValueError):
    pass


# --------------------------------------------------------------------------
# g and the per-partition bound


def g_weight(lam: Partition | Sequence[int]) -> Fraction:
    """``3|lambda|^3/2 * prod_{i<j} (lambda_i - lambda_j)``."""
    p = as_partition(lam)
    if len(p) > 3:
        raise ValueError("g is defined for at most 3 parts")
    x = p.padded(3)
    return Fraction(3 * p.size ** 3, 2) * prod(x[i] - x[j] for i in range(3) for j in range(i + 1, 3))


def g_poly() -> Poly:
    l1, l2, l3 = (Poly.var(n) for n in LAMBDA)
    size = l1 + l2 + l3
    return size ** 3 * Fraction(3, 2) * (l1 - l2) * (l1 - l3) * (l2 - l3)


def leading_factor(d: Poly | int, log: bool) -> Poly:
    d = Poly.coerce(d)
    return d + 14 if log else d * (d + 13)


@dataclass(frozen=True)
class BoundReport:
    """``bound = leading_part + remainder``; both symbolic in ``l1, l2, l3``.

    ``value`` is the bound at ``lam`` when a partition was given.
    """

    lam: Partition | None
    d: int | None
    log: bool
    bound: Poly
    leading_part: Poly
    remainder: Poly
    value: Poly | None = None

    @property
    def remainder_degree(self) -> int:
        return self.remainder.degree(LAMBDA) if not self.remainder.is_zero() else -1

    def leading_matches_g(self) -> bool:
        """Whether the degree 6 part equals ``g(lambda)`` times the published factor in ``d``."""
        d = D if self.d is None else self.d
        return self.leading_part == g_poly() * leading_factor(d, self.log)


def _bound_variety(d: int | None, log: bool) -> VarietySpec:
    return LogPair(d) if log else HypersurfaceIn(4, d)


def second_difference(d: int | None, log: bool) -> Poly:
    """``chi(9|l|) - 2 chi(6|l|) + chi(3|l|)`` of ``Gamma^l`` twisted by ``O(k|l|)``, symbolic in ``l``."""
    v = _bound_variety(d, log)
    chi = lambda k: flag_chi_closed_form(v, (k, k, k))  # noqa: E731
    return chi(9) - chi(6) * 2 + chi(3)


def h2_partition_bound(lam: Partition | Sequence[int] | None, d: int | None, log: bool = False) -> BoundReport:
    """Upper bound for ``h^2(Gamma^lam)`` from the second difference of twisted Euler characteristics.

    ``lam=None`` keeps the partition symbolic.  With a numeric partition and
    degree, the positivity hypothesis behind the bound is enforced.
    """
    p = None
    if lam is not None:
        p = as_partition(lam)
        x = p.padded(3)
        if not (x[0] > x[1] > x[2]):
            raise PreconditionError(f"{p} is not strictly decreasing")
        if d is not None and not flag_positivity_condition(p, d, log):
            need = "|lambda| > 3d+2" if log else "|lambda| > 4(d-5)+18"
            raise PreconditionError(f"bound needs {need}; got |lambda|={p.size}, d={d}")
    bound = second_difference(d, log)
    top = bound.homogeneous_part(LAMBDA, 6)
    report = BoundReport(p, d, log, bound, top, bound - top)
    if p is not None:
        value = bound.subs(dict(zip(LAMBDA, p.padded(3))))
        report = BoundReport(p, d, log, bound, top, bound - top, value)
    return report


# --------------------------------------------------------------------------
# sums of g over the jet pieces


def sum_g(m: int, method: str = "moments", min_gamma: int = 0) -> Fraction:
    """``sum g(lambda)`` over the order 3 pieces of weight ``m``.

    ``method="float"`` returns a float64 approximation usable beyond the
    exact int64 range (``m`` in the thousands).
    """
    if method == "float":
        l1, l2, l3 = (a.astype(np.float64) for a in piece_arrays(3, m, min_gamma))
        size = l1 + l2 + l3
        return float(np.sum(1.5 * size ** 3 * (l1 - l2) * (l1 - l3) * (l2 - l3)))
    if method == "direct":
        return sum((g_weight(lam) for gamma, lam in decompose_gr3(m) if gamma >= min_gamma), Fraction(0))
    if method == "moments":
        return sum_over_pieces(g_poly(), 3, m, min_gamma).constant()
    raise ValueError(f"unknown method {method!r}")


def fit_sum_g(min_gamma: int = 0, jobs: int = 1):
    return fit_piece_sum(g_poly(), 3, 9, min_gamma, jobs=jobs)


def constant_C(jobs: int = 1) -> Fraction:
    """Coefficient of ``m^9`` in the fitted ``sum_g``."""
    return fit_sum_g(jobs=jobs).coefficient(9).constant()


# --------------------------------------------------------------------------
# thresholds


def _cauchy_bound(p: Poly, var: str = "d") -> int:
    coeffs = [c.constant() for c in p.coefficients(var)]
    lead = coeffs[-1]
    return int(1 + max(abs(c / lead) for c in coeffs[:-1])) + 1 if len(coeffs) > 1 else 1


def persistent_threshold(p: Poly, lower: int = 1, var: str = "d") -> int:
    """Smallest integer ``d0 >= lower`` with ``p(d) > 0`` for every integer ``d >= d0``."""
    if p.is_zero() or p.coefficients(var)[-1].constant() <= 0:
        raise ValueError("polynomial is not eventually positive")
    top = max(_cauchy_bound(p, var), lower)
    d0 = top
    # every real root lies below the Cauchy bound, so p > 0 from there on
    while d0 - 1 >= lower and p.evaluate({var: d0 - 1}) > 0:
        d0 -= 1
    return d0


def threshold_euler_quartic() -> int:
    return persistent_threshold(EULER_QUARTIC, lower=2)


@dataclass(frozen=True)
class ThresholdReport:
    log: bool
    delta: Poly
    verified_from: int
    verified_to: int
    verified: bool
    minimal_found: int
    leading_positive: bool


def delta_polynomial(leading: Poly, c: Fraction, log: bool) -> Poly:
    """Lower bound for the ``m^9`` coefficient of ``h^0``: ``chi`` minus the ``h^2`` bound."""
    return leading - leading_factor(D, log) * c


def threshold_order3(log: bool, *, leading: Poly | None = None, c: Fraction | None = None,
                     upper: int = 500, jobs: int = 1) -> ThresholdReport:
    """Check ``Delta(d) > 0`` on ``[92 or 97, upper]`` and report the persistent threshold."""
    start = 92 if log else 97
    if leading is None:
        leading = fit_leading(LogPair() if log else HypersurfaceIn(4), 3, jobs=jobs)[1]
    if c is None:
        c = constant_C(jobs=jobs)
    delta = delta_polynomial(leading, c, log)
    verified = all(delta.evaluate({"d": d}) > 0 for d in range(start, upper + 1))
    lead_pos = delta.coefficients("d")[-1].constant() > 0
    return ThresholdReport(log, delta, start, upper, verified, persistent_threshold(delta, lower=2), lead_pos)


def surface_2jet_bound(d: int | None = None) -> tuple[Poly, int]:
    """``13 c1^2 - 9 c2`` of a surface of degree ``d`` in P^3 and its persistent positivity threshold."""
    v = HypersurfaceIn(3)
    c = chern_total(v, Atom.TANGENT)
    c1 = ChowClass(v, [0, c.component(1)])
    c2 = ChowClass(v, [0, 0, c.component(2)])
    coeff = (c1 * c1 * 13 - c2 * 9).integrate()
    threshold = persistent_threshold(coeff, lower=1)
    if d is not None:
        coeff = coeff.subs({"d": d})
    return coeff, threshold
