"""Chow rings of P^n, hypersurfaces and log pairs; Chern and Todd classes; Euler characteristics.

Everything lives in ``Q[d][h]/(h^{dim+1})`` where ``d`` is the (possibly
symbolic) degree of the hypersurface.  Two Euler-characteristic engines are
provided and are meant to check each other:

* :func:`euler_characteristic` enumerates the weights of each Schur functor
  and feeds their moment sums through Hirzebruch-Riemann-Roch;
* :func:`flag_chi_closed_form` works on the full flag bundle of a rank 3
  bundle, pushes ``ch(L^lambda) td(T_rel)`` forward with divided differences
  and keeps ``lambda`` symbolic.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterable, Sequence, Union

from .combinat import Partition, SchurWeight, UndefinedFunctorError, as_weight, weight_multiset
from .poly import Poly
from .symfunc import InternalConsistencyError, monomial_to_elementary, symmetric_to_elementary

D = Poly.var("d")
LAMBDA = ("l1", "l2", "l3")
ROOTS = ("a1", "a2", "a3")


class AtomMismatchError(ValueError):
    """The requested bundle does not exist on the variety."""


# --------------------------------------------------------------------------
# varieties


@dataclass(frozen=True)
class VarietySpec:
    """``kind`` is ``"P"`` (projective space), ``"X"`` (hypersurface) or ``"log"``.

    ``degree`` is ``None`` for a symbolic degree ``d``.  A log pair is
    ``(P^3, X_d)`` and its sheaves live on ``P^3``.
    """

    kind: str
    n: int
    degree: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("P", "X", "log"):
            raise ValueError(f"unknown variety kind {self.kind!r}")
        if self.kind == "log" and self.n != 3:
            raise ValueError("log pairs are supported on P^3 only")
        if self.kind != "P" and self.n not in (3, 4):
            raise ValueError("ambient dimension must be 3 or 4")
        if self.kind == "P" and self.n < 1:
            raise ValueError("projective space dimension must be positive")
        if self.degree is not None and self.degree < 1:
            raise ValueError("degree must be >= 1")

    @property
    def dim(self) -> int:
        return self.n - 1 if self.kind == "X" else self.n

    @property
    def degree_poly(self) -> Poly:
        return D if self.degree is None else Poly.const(self.degree)

    @property
    def top_degree(self) -> Poly:
        """``integral(h^dim)``."""
        return self.degree_poly if self.kind == "X" else Poly.const(1)

    def canonical(self) -> str:
        deg = "d" if self.degree is None else str(self.degree)
        if self.kind == "P":
            return f"P{self.n}"
        if self.kind == "X":
            return f"hypersurface:n={self.n},d={deg}"
        return f"logpair:n={self.n},d={deg}"

    def __str__(self) -> str:
        return self.canonical()

    def with_degree(self, degree: int | None) -> VarietySpec:
        return VarietySpec(self.kind, self.n, degree)


def ProjectiveSpace(n: int) -> VarietySpec:
    return VarietySpec("P", n)


def HypersurfaceIn(n: int, degree: int | None = None) -> VarietySpec:
    return VarietySpec("X", n, degree)


def LogPair(degree: int | None = None, n: int = 3) -> VarietySpec:
    return VarietySpec("log", n, degree)


# --------------------------------------------------------------------------
# Chow classes


class ChowClass:
    """Polynomial in ``h`` truncated above the dimension of ``variety``.

    ``coeffs[k]`` is the coefficient of ``h^k``, a :class:`Poly` in ``d``
    (and in any other parameters such as ``l1, l2, l3``).
    """

    __slots__ = ("variety", "coeffs")

    def __init__(self, variety: VarietySpec, coeffs: Iterable[Poly | int | Fraction]):
        coeffs = [Poly.coerce(c) for c in coeffs]
        n = variety.dim + 1
        coeffs = (coeffs + [Poly.const(0)] * n)[:n]
        self.variety = variety
        self.coeffs: tuple[Poly, ...] = tuple(coeffs)

    @classmethod
    def one(cls, v: VarietySpec) -> ChowClass:
        return cls(v, [1])

    @classmethod
    def hyperplane(cls, v: VarietySpec) -> ChowClass:
        return cls(v, [0, 1])

    def _check(self, other: ChowClass) -> None:
        if other.variety != self.variety:
            raise ValueError(f"classes on {self.variety} and {other.variety} cannot be combined")

    def __add__(self, other: ChowClass) -> ChowClass:
        self._check(other)
        return ChowClass(self.variety, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: ChowClass) -> ChowClass:
        self._check(other)
        return ChowClass(self.variety, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> ChowClass:
        return ChowClass(self.variety, [-a for a in self.coeffs])

    def __mul__(self, other: ChowClass | Poly | int | Fraction) -> ChowClass:
        if not isinstance(other, ChowClass):
            return ChowClass(self.variety, [a * other for a in self.coeffs])
        self._check(other)
        n = len(self.coeffs)
        out = [Poly.const(0)] * n
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return ChowClass(self.variety, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> ChowClass:
        result = ChowClass.one(self.variety)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.variety == other.variety and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self) -> str:
        parts = [f"({c})*h^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return f"ChowClass[{self.variety}](" + (" + ".join(parts) or "0") + ")"

    def component(self, k: int) -> Poly:
        return self.coeffs[k] if k < len(self.coeffs) else Poly.const(0)

    def exp(self) -> ChowClass:
        """Truncated exponential; the degree-0 part must vanish."""
        if not self.coeffs[0].is_zero():
            raise ValueError("exp needs a class without constant term")
        result = ChowClass.one(self.variety)
        term = ChowClass.one(self.variety)
        for k in range(1, len(self.coeffs)):
            term = term * self * Fraction(1, k)
            result = result + term
        return result

    def inverse(self) -> ChowClass:
        """Multiplicative inverse of a class with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("only classes with constant term 1 are inverted")
        nil = self - ChowClass.one(self.variety)
        result = ChowClass.one(self.variety)
        term = ChowClass.one(self.variety)
        for _ in range(1, len(self.coeffs)):
            term = term * (-nil)
            result = result + term
        return result

    def integrate(self) -> Poly:
        return self.coeffs[-1] * self.variety.top_degree


def _linear(v: VarietySpec, a: int | Poly) -> ChowClass:
    """``1 + a h``."""
    return ChowClass(v, [1, a])


def line_class(v: VarietySpec, t: int = 0, dmult: int = 0) -> ChowClass:
    """``c_1(O(t + dmult*d))``."""
    return ChowClass(v, [0, Poly.const(t) + v.degree_poly * dmult])


# --------------------------------------------------------------------------
# bundle expressions


class Atom(Enum):
    COTANGENT = "cotangent"
    TANGENT = "tangent"
    AMBIENT_COTANGENT = "ambient-cotangent"
    AMBIENT_TANGENT = "ambient-tangent"
    LOG_COTANGENT = "log-cotangent"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Dual:
    atom: Atom

    def __str__(self) -> str:
        return f"dual({self.atom})"


@dataclass(frozen=True)
class LineBundle:
    """``O(t + dmult*d)``."""

    t: int = 0
    dmult: int = 0

    def __str__(self) -> str:
        return f"O({_twist_text(self.t, self.dmult)})"


@dataclass(frozen=True)
class Schur:
    weight: SchurWeight
    atom: Atom | Dual

    def __init__(self, weight, atom: Atom | Dual):
        object.__setattr__(self, "weight", as_weight(weight))
        object.__setattr__(self, "atom", atom)

    def __str__(self) -> str:
        return f"schur({','.join(map(str, self.weight.entries))}):{self.atom}"


@dataclass(frozen=True)
class Twist:
    expr: "BundleExpr"
    t: int = 0
    dmult: int = 0

    def __str__(self) -> str:
        return f"{self.expr} (x) O({_twist_text(self.t, self.dmult)})"


@dataclass(frozen=True)
class Sum:
    terms: tuple["BundleExpr", ...]

    def __init__(self, terms: Iterable["BundleExpr"]):
        object.__setattr__(self, "terms", tuple(terms))

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self.terms)


BundleExpr = Union[Atom, Dual, LineBundle, Schur, Twist, Sum]


def _twist_text(t: int, dmult: int) -> str:
    if not dmult:
        return str(t)
    dpart = "d" if dmult == 1 else "-d" if dmult == -1 else f"{dmult}d"
    if not t:
        return dpart
    return f"{dpart}{t:+d}"


def canonical(expr: BundleExpr) -> str:
    """Deterministic serialization; sums are order independent."""
    if isinstance(expr, Atom):
        return f"atom:{expr.value}"
    if isinstance(expr, Dual):
        return f"dual:{expr.atom.value}"
    if isinstance(expr, LineBundle):
        return f"O[{expr.t},{expr.dmult}]"
    if isinstance(expr, Schur):
        atom = canonical(expr.atom)
        return f"schur[{','.join(map(str, expr.weight.entries))}]({atom})"
    if isinstance(expr, Twist):
        return f"twist[{expr.t},{expr.dmult}]({canonical(expr.expr)})"
    if isinstance(expr, Sum):
        return "sum[" + ";".join(sorted(canonical(t) for t in expr.terms)) + "]"
    raise TypeError(f"not a bundle expression: {expr!r}")


def cache_key(v: VarietySpec, expr: BundleExpr) -> str:
    return f"{v.canonical()}|{canonical(expr)}"


# --------------------------------------------------------------------------
# Chern classes


def atom_rank(v: VarietySpec, atom: Atom | Dual) -> int:
    base = atom.atom if isinstance(atom, Dual) else atom
    if base in (Atom.COTANGENT, Atom.TANGENT):
        return v.dim
    if base in (Atom.AMBIENT_COTANGENT, Atom.AMBIENT_TANGENT):
        if v.kind != "X":
            raise AtomMismatchError(f"{base} only exists on hypersurfaces, not on {v}")
        return v.n
    if base is Atom.LOG_COTANGENT:
        if v.kind != "log":
            raise AtomMismatchError(f"{base} only exists on log pairs, not on {v}")
        return v.n
    raise AtomMismatchError(f"unknown atom {atom!r}")


def _dual_class(c: ChowClass) -> ChowClass:
    return ChowClass(c.variety, [x if k % 2 == 0 else -x for k, x in enumerate(c.coeffs)])


@lru_cache(maxsize=None)
def chern_total(v: VarietySpec, atom: Atom | Dual) -> ChowClass:
    """Total Chern class, from the Euler, normal bundle and residue sequences."""
    if isinstance(atom, Dual):
        return _dual_class(chern_total(v, atom.atom))
    atom_rank(v, atom)
    h_plus = _linear(v, 1) ** (v.n + 1)     # c(O(1)^{n+1})
    if atom is Atom.TANGENT:
        if v.kind == "X":
            return h_plus * _linear(v, v.degree_poly).inverse()
        return h_plus
    if atom is Atom.AMBIENT_TANGENT:
        return h_plus
    if atom is Atom.COTANGENT:
        return _dual_class(chern_total(v, Atom.TANGENT))
    if atom is Atom.AMBIENT_COTANGENT:
        return _dual_class(h_plus)
    # 0 -> Omega -> Omega(log X) -> O_X -> 0 and c(O_X) = 1/(1 - d h)
    return _dual_class(h_plus) * _linear(v, -v.degree_poly).inverse()


def tangent_class(v: VarietySpec) -> ChowClass:
    """Total Chern class of the tangent bundle of the variety carrying the sheaves."""
    return chern_total(v, Atom.TANGENT)


@lru_cache(maxsize=None)
def todd_class(v: VarietySpec) -> ChowClass:
    c = tangent_class(v)
    one = ChowClass.one(v)

    def part(k: int) -> ChowClass:
        return ChowClass(v, [0] * k + [c.component(k)])

    c1, c2, c3, c4 = part(1), part(2), part(3), part(4)
    td = one + c1 * Fraction(1, 2) + (c1 * c1 + c2) * Fraction(1, 12) + c1 * c2 * Fraction(1, 24)
    td = td + (-(c1 ** 4) + c1 * c1 * c2 * 4 + c2 * c2 * 3 + c1 * c3 - c4) * Fraction(1, 720)
    if v.dim > 4:
        raise NotImplementedError("Todd classes are implemented up to dimension 4")
    return td


def _elementary_substitution(expr: Poly, classes: Sequence[ChowClass], v: VarietySpec) -> ChowClass:
    """Substitute ``e_k -> classes[k-1]`` in a polynomial in ``e1..er``."""
    names = tuple(f"e{k}" for k in range(1, len(classes) + 1))
    total = ChowClass(v, [])
    power_cache: dict[tuple[int, int], ChowClass] = {}
    for exps, coeff in expr.split(names).items():
        cls = ChowClass.one(v)
        for k, p in enumerate(exps):
            if p:
                key = (k, p)
                if key not in power_cache:
                    power_cache[key] = classes[k] ** p
                cls = cls * power_cache[key]
        total = total + cls * coeff
    return total


def chern_components(v: VarietySpec, atom: Atom | Dual) -> list[ChowClass]:
    c = chern_total(v, atom)
    r = atom_rank(v, atom)
    return [ChowClass(v, [0] * k + [c.component(k)]) for k in range(1, r + 1)]


def _schur_character(v: VarietySpec, weight: SchurWeight, atom: Atom | Dual) -> ChowClass:
    r = atom_rank(v, atom)
    if len(weight.entries) > r:
        raise UndefinedFunctorError(f"weight {weight} is longer than the rank {r} of {atom}")
    weights: Counter = weight_multiset(weight.padded(r), r)
    top = v.dim
    # moments sum_mu mult * mu^alpha, grouped by the sorted exponent alpha
    moments: dict[tuple[int, ...], Fraction] = {}
    for beta in _partitions_up_to(top, r):
        padded = beta + (0,) * (r - len(beta))
        total = 0
        for mu, mult in weights.items():
            term = mult
            for x, k in zip(mu, padded):
                if k:
                    term *= x ** k
            total += term
        denom = 1
        for k in beta:
            denom *= factorial(k)
        moments[beta] = Fraction(total, denom)
    # ch = sum_beta (moment_beta / beta!) m_beta(a), m_beta rewritten in e's
    sym = Poly.const(0)
    for beta, coeff in moments.items():
        if coeff:
            sym = sym + monomial_to_elementary(beta, r) * coeff
    return _elementary_substitution(sym, chern_components(v, atom), v)


@lru_cache(maxsize=None)
def _partitions_up_to(n: int, max_len: int) -> tuple[tuple[int, ...], ...]:
    out = [()]

    def rec(rem: int, cap: int, acc: tuple[int, ...]) -> None:
        for first in range(min(rem, cap), 0, -1):
            nxt = acc + (first,)
            if len(nxt) <= max_len:
                out.append(nxt)
                rec(rem - first, first, nxt)

    rec(n, n, ())
    return tuple(out)


def chern_character(v: VarietySpec, expr: BundleExpr) -> ChowClass:
    """Chern character by weight enumeration (moment sums of the weights)."""
    if isinstance(expr, (Atom, Dual)):
        r = atom_rank(v, expr)
        return _schur_character(v, SchurWeight((1,) + (0,) * (r - 1)), expr)
    if isinstance(expr, LineBundle):
        return line_class(v, expr.t, expr.dmult).exp()
    if isinstance(expr, Schur):
        return _schur_character(v, expr.weight, expr.atom)
    if isinstance(expr, Twist):
        return chern_character(v, expr.expr) * line_class(v, expr.t, expr.dmult).exp()
    if isinstance(expr, Sum):
        total = ChowClass(v, [])
        for t in expr.terms:
            total = total + chern_character(v, t)
        return total
    raise TypeError(f"not a bundle expression: {expr!r}")


class ChiCache:
    """Memo of Euler characteristics keyed by canonical serialization.

    Reads are lock free; writes are serialized and never replace an entry.
    """

    def __init__(self) -> None:
        self._data: dict[str, Poly] = {}
        self._lock = threading.Lock()

    def get(self, key: str) -> Poly | None:
        return self._data.get(key)

    def put(self, key: str, value: Poly) -> Poly:
        with self._lock:
            return self._data.setdefault(key, value)

    def __len__(self) -> int:
        return len(self._data)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


CHI_CACHE = ChiCache()


def euler_characteristic(v: VarietySpec, expr: BundleExpr, *, cache: ChiCache | None = CHI_CACHE) -> Poly:
    """``integral(ch(expr) * td)`` as a polynomial in ``d``."""
    key = cache_key(v, expr)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    value = (chern_character(v, expr) * todd_class(v)).integrate()
    return value if cache is None else cache.put(key, value)


def rank(v: VarietySpec, expr: BundleExpr) -> int:
    """Rank of a bundle expression (degree-0 part of its Chern character)."""
    return int(chern_character(v, expr).component(0).constant())


# --------------------------------------------------------------------------
# closed form on the flag bundle of a rank 3 bundle


def divided_difference(f: Poly, i: int, names: Sequence[str] = ROOTS) -> Poly:
    """``(f - s_i f) / (a_i - a_{i+1})`` (``i`` is 1-based)."""
    x, y = names[i - 1], names[i]
    swapped = f.rename({x: y, y: x})
    return (f - swapped).div_linear(x, y)


def flag_pushforward(f: Poly) -> Poly:
    """Push forward from the full flag bundle of a rank 3 bundle; ``a1^2 a2 -> 1``."""
    return divided_difference(divided_difference(divided_difference(f, 1), 2), 1)


def _todd_series(x: Poly, var_names: Sequence[str], max_degree: int) -> Poly:
    """``x / (1 - exp(-x))`` truncated in the given variables."""
    # Bernoulli expansion with B_1 = +1/2
    bern = _bernoulli_plus(max_degree)
    total = Poly.const(0)
    xp = Poly.const(1)
    for k in range(max_degree + 1):
        if bern[k]:
            total = total + xp * (bern[k] / factorial(k))
        xp = (xp * x).truncate(var_names, max_degree)
    return total


@lru_cache(maxsize=None)
def _bernoulli_plus(n: int) -> tuple[Fraction, ...]:
    b = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(Fraction(factorial(m + 1), factorial(k) * factorial(m + 1 - k)) * b[k] for k in range(m))
        b.append(-s / (m + 1))
    if n >= 1:
        b[1] = Fraction(1, 2)
    return tuple(b)


@lru_cache(maxsize=None)
def relative_todd(base_dim: int) -> Poly:
    """``prod_{i<j} td(a_i - a_j)`` truncated at total degree ``base_dim + 3``."""
    top = base_dim + 3
    a = [Poly.var(n) for n in ROOTS]
    td = Poly.const(1)
    for i in range(3):
        for j in range(i + 1, 3):
            td = (td * _todd_series(a[i] - a[j], ROOTS, top)).truncate(ROOTS, top)
    return td


@lru_cache(maxsize=None)
def _pushforward_monomial(beta: tuple[int, int, int]) -> Poly:
    mono = Poly(ROOTS, {beta: 1})
    return symmetric_to_elementary(flag_pushforward(mono), ROOTS)


@lru_cache(maxsize=None)
def flag_character(base_dim: int = 3) -> Poly:
    """``pi_*(exp(l . a) * td(T_rel))`` as a polynomial in ``l1..l3`` and ``e1..e3``.

    Terms above degree ``base_dim`` in the Chern classes are dropped.  At
    ``e = 0`` it is the Weyl dimension polynomial.
    """
    top = base_dim + 3
    td = relative_todd(base_dim)
    lam = [Poly.var(n) for n in LAMBDA]
    td_terms = td.split(ROOTS)
    # coefficient of a^beta in exp(l.a): l^beta / beta!
    result = Poly.const(0)
    for beta in product(range(top + 1), repeat=3):
        if sum(beta) > top or sum(beta) < 3:
            continue
        coeff = Poly.const(0)
        for gamma, t in td_terms.items():
            rest = tuple(b - g for b, g in zip(beta, gamma))
            if min(rest) < 0:
                continue
            mono = Poly.const(1)
            for x, k in zip(lam, rest):
                if k:
                    mono = mono * x ** k
            coeff = coeff + t * mono * Fraction(1, factorial(rest[0]) * factorial(rest[1]) * factorial(rest[2]))
        if coeff.is_zero():
            continue
        pushed = _pushforward_monomial(beta)
        if not pushed.is_zero():
            result = result + coeff * pushed
    return result


def _rank3_atom(v: VarietySpec) -> Atom:
    if v.kind == "log":
        return Atom.LOG_COTANGENT
    if v.dim != 3:
        raise AtomMismatchError(f"{v} carries no rank 3 cotangent bundle")
    return Atom.COTANGENT


@lru_cache(maxsize=None)
def flag_chi_closed_form(v: VarietySpec, twist: tuple = (0, 0, 0), atom: Atom | Dual | None = None) -> Poly:
    """``chi(Gamma^(l1,l2,l3) E (x) O(t))`` with ``t = twist . (l1,l2,l3)``, symbolic in ``l`` and ``d``.

    ``E`` defaults to the rank 3 cotangent-type bundle of ``v`` (``Omega_X`` on a
    hypersurface in P^4, ``Omega(log X)`` on a log pair).
    """
    atom = _rank3_atom(v) if atom is None else atom
    if atom_rank(v, atom) != 3:
        raise AtomMismatchError(f"{atom} does not have rank 3 on {v}")
    char = flag_character(v.dim)
    ch = _elementary_substitution(char, chern_components(v, atom), v)
    t = sum((Poly.var(n) * Fraction(c) for n, c in zip(LAMBDA, twist)), Poly.const(0))
    if not t.is_zero():
        ch = ch * ChowClass(v, [0, t]).exp()
    return (ch * todd_class(v)).integrate()


def flag_chi_at(v: VarietySpec, lam: Sequence[int], twist: tuple = (0, 0, 0)) -> Poly:
    """Closed form evaluated at a numeric ``lambda``."""
    return flag_chi_closed_form(v, tuple(twist)).subs(dict(zip(LAMBDA, lam)))


def flag_positivity_condition(lam: Partition | Sequence[int], d: int, log: bool) -> bool:
    """``|lambda| > 4(d-5)+18`` (compact) or ``|lambda| > 3d+2`` (log)."""
    size = sum(lam.parts if isinstance(lam, Partition) else lam)
    bound = 3 * d + 2 if log else 4 * (d - 5) + 18
    return size > bound


def weyl_dimension(lam: Sequence[int]) -> Fraction:
    r = len(lam)
    value = Fraction(1)
    for i in range(r):
        for j in range(i + 1, r):
            value *= Fraction(lam[i] - lam[j] + j - i, j - i)
    return value


__all__ = [
    "Atom", "AtomMismatchError", "BundleExpr", "ChiCache", "ChowClass", "Dual", "HypersurfaceIn",
    "InternalConsistencyError", "LineBundle", "LogPair", "ProjectiveSpace", "Schur", "Sum", "Twist",
    "VarietySpec", "atom_rank", "cache_key", "canonical", "chern_character", "chern_total",
    "euler_characteristic", "flag_character", "flag_chi_at", "flag_chi_closed_form",
    "flag_positivity_condition", "flag_pushforward", "line_class", "rank", "todd_class", "weyl_dimension",
]
