"""Vanishing predicates and Schur-complex resolutions.

Every predicate returns ``True`` when vanishing is guaranteed by a known
sufficient condition and ``False`` when it is unknown.  ``False`` is never a
claim that the group is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .chow import (
    LAMBDA, Atom, BundleExpr, HypersurfaceIn, LineBundle, ProjectiveSpace, Schur, Twist, VarietySpec,
    euler_characteristic, flag_chi_closed_form, rank,
)
from .combinat import Partition, SchurWeight, as_partition, as_weight, conjugate, lr_coefficient, schur_rank
from .poly import Poly


@dataclass(frozen=True)
class ResolutionTerm:
    """``index`` is the homological degree; the resolved bundle sits at ``-1``."""

    index: int
    bundle: BundleExpr
    multiplicity: int


def _check_b(b1: int, b2: int) -> None:
    if not (b1 >= b2 >= 1):
        raise ValueError(f"need b1 >= b2 >= 1, got ({b1}, {b2})")


def _vertical_strip_removals(mu: Partition, j: int) -> list[tuple[Partition, int]]:
    """Shapes ``rho`` with ``c^mu_{rho,(1^j)} != 0`` and the coefficient."""
    out = []
    col = Partition((1,) * j)
    for drop in _subsets(len(mu), j):
        parts = list(mu.parts)
        for i in drop:
            parts[i] -= 1
        if any(a < b for a, b in zip(parts, parts[1:])) or any(p < 0 for p in parts):
            continue
        rho = Partition(parts)
        c = lr_coefficient(rho, col, mu)
        if c:
            out.append((rho, c))
    return out


def _subsets(n: int, k: int):
    from itertools import combinations
    return combinations(range(n), k)


def resolution_hypersurface(b1: int, b2: int) -> list[ResolutionTerm]:
    """Resolution of ``Gamma^(b1,b2,0) Omega_X`` by twisted Schur powers of ``Omega_P4|X``.

    From the conormal sequence ``0 -> O(-d) -> Omega_P4|X -> Omega_X -> 0``:
    the term of degree ``j`` is ``sum_rho c^mu_{rho,(1^j)} Gamma^rho Omega_P4|X (x) O(-j d)``.
    Shapes that are not partitions are left out.
    """
    _check_b(b1, b2)
    mu = Partition((b1, b2))
    terms = [ResolutionTerm(-1, Schur((b1, b2, 0), Atom.COTANGENT), 1)]
    for j in range(len(mu) + 1):
        for rho, c in _vertical_strip_removals(mu, j):
            expr: BundleExpr = Schur(rho.padded(4), Atom.AMBIENT_COTANGENT)
            if j:
                expr = Twist(expr, 0, -j)
            terms.append(ResolutionTerm(j, expr, c))
    return terms


def s(x: int, y: int) -> int:
    """Rank of ``Gamma^(x,y)`` of a rank 5 bundle; zero when ``(x, y)`` is not a partition."""
    if x < y or y < 0:
        return 0
    return schur_rank((x, y, 0, 0, 0), 5)


def resolution_euler(b1: int, b2: int) -> list[ResolutionTerm]:
    """Line-bundle resolution of ``Gamma^(b1,b2,0,0) T_P4`` from the Euler sequence."""
    _check_b(b1, b2)
    terms = [ResolutionTerm(-1, Schur((b1, b2, 0, 0), Atom.TANGENT), 1)]
    shapes = {0: [(b1, b2)], 1: [(b1 - 1, b2), (b1, b2 - 1)], 2: [(b1 - 1, b2 - 1)]}
    for j, rhos in shapes.items():
        mult = sum(s(x, y) for x, y in rhos)
        if mult:
            terms.append(ResolutionTerm(j, LineBundle(b1 + b2 - j), mult))
    return terms


def _signed(index: int) -> int:
    return 1 if (index + 1) % 2 == 0 else -1


def alternating_chi(v: VarietySpec, terms: Sequence[ResolutionTerm]) -> Poly:
    """``sum (-1)^(j+1) mult * chi`` over the terms; zero for an exact complex."""
    total = Poly.const(0)
    for t in terms:
        total = total + euler_characteristic(v, t.bundle) * (t.multiplicity * _signed(t.index))
    return total


def alternating_rank(v: VarietySpec, terms: Sequence[ResolutionTerm]) -> int:
    return sum(rank(v, t.bundle) * t.multiplicity * _signed(t.index) for t in terms)


def resolution_variety(which: str, degree: int | None = None) -> VarietySpec:
    return HypersurfaceIn(4, degree) if which == "hypersurface" else ProjectiveSpace(4)


# --------------------------------------------------------------------------
# predicates


def vanish_ambient(q: int, b1: int, b2: int, l: int, d: int) -> bool:
    """``H^q(X, Gamma^(b1,b2,0,0) Omega_P4|X (x) O(l)) = 0`` guaranteed."""
    _check_b(b1, b2)
    if q == 0:
        return l - b1 - b2 < 0
    if q == 1:
        return l - b1 - b2 + 1 < 0
    if q == 2:
        return l - b1 - b2 + 2 < 0
    if q == 3:
        return b1 + b2 - l + (d - 5) < 0
    raise ValueError(f"q must be in 0..3, got {q}")


def vanish_h0_hypersurface(b1: int, b2: int, l: int, d: int) -> bool:
    """``H^0(X, Gamma^(b1,b2,0) Omega_X (x) O(l)) = 0`` guaranteed for ``d >= 2``."""
    _check_b(b1, b2)
    if d < 2:
        raise ValueError("the hypersurface must have degree >= 2")
    return l - b1 - b2 < 0


def vanish_sym(m: int) -> bool:
    """``H^0(X, S^m Omega_X) = 0`` for a hypersurface in P^4 and ``m >= 1``."""
    return m >= 1


def vanish_hq_positive(a: SchurWeight | Sequence[int], d: int, variant: str = "standard") -> bool:
    """``H^q(X, Gamma^a Omega_X) = 0`` for all ``q >= 1`` guaranteed.

    ``variant="standard"``: ``a3(d-1) > 2(a1+a2) + 3(d-1)``;
    ``variant="bruckmann"``: ``a3(d-1) > 2(a1+a2) + 3d - 8``.
    """
    a1, a2, a3 = as_weight(a).entries
    lhs = a3 * (d - 1)
    if variant == "standard":
        return lhs > 2 * (a1 + a2) + 3 * (d - 1)
    if variant == "bruckmann":
        return lhs > 2 * (a1 + a2) + 3 * d - 8
    raise ValueError(f"unknown variant {variant!r}")


def vanish_bruckmann_rackwitz(t: Partition | Sequence[int], n: int, p: int) -> bool:
    """``H^0(X, Gamma^T Omega_X) = 0`` for a complete intersection ``X`` of dimension ``p`` in P^n.

    True iff the first ``n - p`` column lengths of ``T`` sum to less than ``p``.
    """
    cols = conjugate(as_partition(t)).parts
    return sum(cols[: n - p]) < p


def vanish_t10(a: SchurWeight | Sequence[int], k: int) -> bool:
    """``H^0(X, Gamma^a T_X (x) O(-k)) = 0`` guaranteed on a hypersurface of general type."""
    size = sum(as_weight(a).entries)
    return (k >= 0 and size > 0) or (k > 0 and size >= 0)


def vanish_h3_symmetric(m: int) -> bool:
    """``H^3(X, S^m Omega_X) = 0`` via duality and the weight ``(m-2,-2,-2)`` (size ``m - 6``)."""
    return vanish_t10(SchurWeight((m - 2, -2, -2)), 0)


def chi_equals_h0(lam: SchurWeight | Sequence[int], d: int) -> Poly | None:
    """``chi`` of ``Gamma^lam Omega_X``, which is then ``h^0``, when higher cohomology vanishes."""
    w = as_weight(lam)
    if len(w.entries) != 3:
        raise ValueError("weight must have length 3")
    if not vanish_hq_positive(w, d, "standard"):
        return None
    return euler_characteristic(HypersurfaceIn(4, d), Schur(w, Atom.COTANGENT))


def jets2_vanish(m: int, d: int = 2) -> bool:
    """Every graded piece of the order 2 jet bundle has no sections."""
    from .jets import decompose_gr2

    for _, lam in decompose_gr2(m):
        l1, l2 = lam[0], lam[1]
        ok = vanish_sym(l1) if l2 == 0 else vanish_h0_hypersurface(l1, l2, 0, d)
        if not ok:
            return False
    return True


def chi_symmetric_power(v: VarietySpec | None = None) -> Poly:
    """``chi(S^m Omega_X)`` as a polynomial in ``m`` and ``d``."""
    v = HypersurfaceIn(4) if v is None else v
    return flag_chi_closed_form(v).subs({LAMBDA[0]: Poly.var("m"), LAMBDA[1]: 0, LAMBDA[2]: 0})


def h2_symmetric_leading() -> Poly:
    """Coefficient of ``m^5`` in ``chi(S^m Omega_X)``, which is ``h^2`` for ``m > 6``."""
    return chi_symmetric_power().coeff("m", 5)
