"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is a mapping from exponent tuples to :class:`fractions.Fraction`
over an ordered tuple of named generators.  Binary operations between
polynomials over different generators first lift both operands to the union
of their generators, so ``Poly.var("d") * Poly.var("h")`` just works.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]
Exponent = tuple[int, ...]

# Generators that show up throughout the package are kept in a fixed order so
# that printed forms and serialized keys never depend on construction history.
_PRIORITY = ("d", "m", "l1", "l2", "l3", "t", "h", "a1", "a2", "a3", "a4",
             "e1", "e2", "e3", "e4")


def _gen_key(name: str) -> tuple[int, str, int]:
    try:
        return (_PRIORITY.index(name), "", 0)
    except ValueError:
        m = re.fullmatch(r"(.*?)(\d+)", name)
        if m:
            return (len(_PRIORITY), m.group(1), int(m.group(2)))
        return (len(_PRIORITY), name, -1)


def sort_gens(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=_gen_key))


class Poly:
    """Polynomial in named generators with ``Fraction`` coefficients.

    Instances are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, gens: Iterable[str] = (), terms: Mapping[Exponent, Scalar] | None = None):
        self.gens: tuple[str, ...] = tuple(gens)
        clean: dict[Exponent, Fraction] = {}
        if terms:
            n = len(self.gens)
            for exp, c in terms.items():
                if c:
                    if len(exp) != n:
                        raise ValueError(f"exponent {exp} does not match generators {self.gens}")
                    clean[tuple(exp)] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls((), {(): c})

    @classmethod
    def var(cls, name: str) -> Poly:
        return cls((name,), {(1,): 1})

    @classmethod
    def coerce(cls, x: Poly | Scalar) -> Poly:
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
            return cls.const(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to Poly")

    @classmethod
    def _raw(cls, gens: tuple[str, ...], terms: dict[Exponent, Fraction]) -> Poly:
        obj = cls.__new__(cls)
        obj.gens = gens
        obj.terms = terms
        obj._hash = None
        return obj

    # -- generator bookkeeping -------------------------------------------
    def lift(self, gens: tuple[str, ...]) -> Poly:
        """Re-express over ``gens`` (a superset of the generators in use)."""
        if gens == self.gens:
            return self
        pos = {g: i for i, g in enumerate(gens)}
        idx = []
        for g, e in zip(self.gens, zip(*self.terms) if self.terms else [()] * len(self.gens)):
            if g not in pos:
                if any(e):
                    raise ValueError(f"generator {g!r} is used but missing from {gens}")
                idx.append(None)
            else:
                idx.append(pos[g])
        n = len(gens)
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            new = [0] * n
            for i, k in zip(idx, exp):
                if i is not None:
                    new[i] = k
            out[tuple(new)] = c
        return Poly._raw(gens, out)

    def used_gens(self) -> tuple[str, ...]:
        used = set()
        for exp in self.terms:
            for g, k in zip(self.gens, exp):
                if k:
                    used.add(g)
        return sort_gens(used)

    def compact(self) -> Poly:
        """Drop generators that do not occur."""
        return self.lift(self.used_gens())

    def _aligned(self, other: Poly) -> tuple[tuple[str, ...], Poly, Poly]:
        if self.gens == other.gens:
            return self.gens, self, other
        gens = sort_gens(self.gens + other.gens)
        return gens, self.lift(gens), other.lift(gens)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Poly | Scalar) -> Poly:
        other = Poly.coerce(other)
        gens, a, b = self._aligned(other)
        out = dict(a.terms)
        for exp, c in b.terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return Poly._raw(gens, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Poly | Scalar) -> Poly:
        return self + (-Poly.coerce(other))

    def __rsub__(self, other: Poly | Scalar) -> Poly:
        return Poly.coerce(other) + (-self)

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if not isinstance(other, Poly):
            c = Fraction(other)
            if not c:
                return Poly._raw(self.gens, {})
            return Poly._raw(self.gens, {e: v * c for e, v in self.terms.items()})
        gens, a, b = self._aligned(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(gens, out)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> Poly:
        if isinstance(other, Poly):
            if not other.is_constant():
                raise TypeError("only division by scalars is supported; see div_linear")
            other = other.constant()
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison and hashing ------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.gens == other.gens:
            return self.terms == other.terms
        return (self - other).is_zero()

    def __hash__(self) -> int:
        if self._hash is None:
            p = self.compact()
            self._hash = hash((p.gens, frozenset(p.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant(self) -> Fraction:
        """The constant term (raises if the polynomial is not constant)."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.gens), Fraction(0))

    def _index(self, var: str) -> int | None:
        try:
            return self.gens.index(var)
        except ValueError:
            return None

    def degree(self, var: str | Iterable[str] | None = None) -> int:
        """Degree in ``var`` (a name or a group of names); total degree by default.

        The zero polynomial has degree -1.
        """
        if not self.terms:
            return -1
        if var is None:
            idx = list(range(len(self.gens)))
        else:
            names = [var] if isinstance(var, str) else list(var)
            idx = [i for i, g in enumerate(self.gens) if g in names]
        return max(sum(e[i] for i in idx) for e in self.terms)

    def coeff(self, var: str, k: int) -> Poly:
        """Coefficient of ``var**k`` as a polynomial in the remaining generators."""
        i = self._index(var)
        gens = tuple(g for g in self.gens if g != var)
        if i is None:
            return self.lift(gens) if k == 0 else Poly._raw(gens, {})
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + e[i + 1:]] = c
        return Poly._raw(gens, out)

    def coefficients(self, var: str) -> list[Poly]:
        """Coefficients of ``var**0 .. var**deg``."""
        return [self.coeff(var, k) for k in range(max(self.degree(var), 0) + 1)]

    def split(self, variables: Iterable[str]) -> dict[Exponent, Poly]:
        """Group by the exponents of ``variables``; values live in the other generators."""
        variables = tuple(variables)
        pos = [self._index(v) for v in variables]
        rest = tuple(i for i, g in enumerate(self.gens) if g not in variables)
        rest_gens = tuple(self.gens[i] for i in rest)
        groups: dict[Exponent, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] if i is not None else 0 for i in pos)
            groups.setdefault(key, {})[tuple(e[i] for i in rest)] = c
        return {k: Poly._raw(rest_gens, v) for k, v in groups.items()}

    def homogeneous_part(self, variables: Iterable[str], k: int) -> Poly:
        """Terms whose total degree in ``variables`` equals ``k``."""
        idx = [i for i, g in enumerate(self.gens) if g in set(variables)]
        return Poly._raw(self.gens, {e: c for e, c in self.terms.items()
                                     if sum(e[i] for i in idx) == k})

    def truncate(self, variables: Iterable[str], max_degree: int) -> Poly:
        """Drop terms of total degree in ``variables`` above ``max_degree``."""
        idx = [i for i, g in enumerate(self.gens) if g in set(variables)]
        return Poly._raw(self.gens, {e: c for e, c in self.terms.items()
                                     if sum(e[i] for i in idx) <= max_degree})

    # -- substitution -----------------------------------------------------
    def subs(self, values: Mapping[str, Poly | Scalar]) -> Poly:
        """Simultaneous substitution of generators by polynomials or scalars."""
        targets = {g: v for g, v in values.items() if g in self.gens}
        if not targets:
            return self
        scalar_only = all(not isinstance(v, Poly) for v in targets.values())
        keep = tuple(g for g in self.gens if g not in targets)
        keep_idx = [i for i, g in enumerate(self.gens) if g not in targets]
        sub_idx = [(i, targets[g]) for i, g in enumerate(self.gens) if g in targets]
        if scalar_only:
            out: dict[Exponent, Fraction] = {}
            pw: dict[tuple[int, int], Fraction] = {}
            for e, c in self.terms.items():
                v = c
                for i, x in sub_idx:
                    k = e[i]
                    if k:
                        key = (i, k)
                        if key not in pw:
                            pw[key] = Fraction(x) ** k
                        v *= pw[key]
                if v:
                    ne = tuple(e[i] for i in keep_idx)
                    s = out.get(ne, 0) + v
                    if s:
                        out[ne] = s
                    else:
                        out.pop(ne, None)
            return Poly._raw(keep, out)
        powers: dict[tuple[int, int], Poly] = {}

        def power(i: int, x: Poly | Scalar, k: int) -> Poly:
            key = (i, k)
            if key not in powers:
                powers[key] = Poly.coerce(x) ** k
            return powers[key]

        total = Poly._raw(keep, {})
        # group terms by the substituted exponents to limit polynomial products
        groups: dict[Exponent, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i, _ in sub_idx)
            groups.setdefault(key, {})[tuple(e[i] for i in keep_idx)] = c
        for key, rest in groups.items():
            factor = Poly.const(1)
            for (i, x), k in zip(sub_idx, key):
                if k:
                    factor = factor * power(i, x, k)
            total = total + Poly._raw(keep, rest) * factor
        return total

    def __call__(self, **values: Poly | Scalar) -> Poly:
        return self.subs(values)

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        """Full numeric evaluation; every used generator must be given."""
        return self.subs(values).constant()

    def rename(self, mapping: Mapping[str, str]) -> Poly:
        """Rename generators (a permutation of names is allowed)."""
        new = tuple(mapping.get(g, g) for g in self.gens)
        if len(set(new)) != len(new):
            raise ValueError("renaming would merge generators")
        order = sort_gens(new)
        return Poly._raw(new, self.terms).lift(order)

    def div_linear(self, x: str, y: str) -> Poly:
        """Exact quotient by ``x - y``.

        Raises ``ArithmeticError`` if ``x - y`` does not divide the polynomial.
        """
        gens = sort_gens(self.gens + (x, y))
        p = self.lift(gens)
        ix, iy = gens.index(x), gens.index(y)
        out: dict[Exponent, Fraction] = {}
        remainder: dict[Exponent, Fraction] = {}
        for e, c in p.terms.items():
            k = e[ix]
            # x^k r = (x - y) * sum_{i<k} x^(k-1-i) y^i r + y^k r
            for i in range(k):
                ne = list(e)
                ne[ix] = k - 1 - i
                ne[iy] = e[iy] + i
                ne = tuple(ne)
                v = out.get(ne, 0) + c
                if v:
                    out[ne] = v
                else:
                    out.pop(ne, None)
            re = list(e)
            re[ix] = 0
            re[iy] = e[iy] + k
            re = tuple(re)
            v = remainder.get(re, 0) + c
            if v:
                remainder[re] = v
            else:
                remainder.pop(re, None)
        if remainder:
            raise ArithmeticError(f"{x} - {y} does not divide the polynomial")
        return Poly._raw(gens, out)

    # -- rendering --------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms by descending total degree, then descending lexicographic exponent."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(g if k == 1 else f"{g}^{k}" for g, k in zip(self.gens, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self})"

    def to_json(self) -> dict:
        """``{"gens": [...], "terms": [{"exponents", "num", "den"}, ...]}`` with canonical order."""
        p = self.compact()
        return {
            "gens": list(p.gens),
            "terms": [
                {"exponents": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in p.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Poly:
        gens = tuple(data["gens"])
        terms = {tuple(t["exponents"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]}
        return cls(gens, terms)


def poly_from_coefficients(var: str, coeffs: Iterable[Poly | Scalar]) -> Poly:
    """``sum(coeffs[k] * var**k)``."""
    x = Poly.var(var)
    total = Poly.const(0)
    xp = Poly.const(1)
    for c in coeffs:
        total = total + Poly.coerce(c) * xp
        xp = xp * x
    return total


def as_fraction(x: Poly | Scalar) -> Fraction:
    if isinstance(x, Poly):
        return x.constant()
    return Fraction(x)
