"""Partitions, tableaux, Littlewood-Richardson coefficients and Schur ranks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Sequence


class UndefinedFunctorError(ValueError):
    """A Schur weight has more nonzero rows than the bundle has rank."""


@dataclass(frozen=True, init=False)
class Partition:
    """Weakly decreasing tuple of non-negative integers, trailing zeros stripped."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not weakly decreasing")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i] if i < len(self.parts) else 0

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    @property
    def size(self) -> int:
        return sum(self.parts)

    def padded(self, r: int) -> tuple[int, ...]:
        if len(self.parts) > r:
            raise ValueError(f"{self} has more than {r} rows")
        return self.parts + (0,) * (r - len(self.parts))

    def contains(self, other: Partition) -> bool:
        return len(other) <= len(self) and all(other[i] <= self[i] for i in range(len(other)))


def as_partition(p: Partition | Iterable[int]) -> Partition:
    return p if isinstance(p, Partition) else Partition(p)


@dataclass(frozen=True, init=False)
class SchurWeight:
    """Weakly decreasing integer weight, possibly with negative entries.

    The stored entries are kept as given; :meth:`normalize` splits off the
    power of the determinant.
    """

    entries: tuple[int, ...]

    def __init__(self, entries: Iterable[int]):
        entries = tuple(int(a) for a in entries)
        if any(a < b for a, b in zip(entries, entries[1:])):
            raise ValueError(f"{entries} is not weakly decreasing")
        object.__setattr__(self, "entries", entries)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"

    def normalize(self) -> tuple[Partition, int]:
        """Return ``(partition, k)`` with ``entries == partition + k*(1,...,1)``."""
        if not self.entries:
            return Partition(), 0
        k = self.entries[-1]
        return Partition(a - k for a in self.entries), k

    def padded(self, r: int) -> SchurWeight:
        if r < len(self.entries):
            p, k = self.normalize()
            if len(p) > r or (k != 0 and r != len(self.entries)):
                raise UndefinedFunctorError(f"weight {self} needs rank >= {len(self.entries)}")
            return SchurWeight(self.entries[:r])
        if r > len(self.entries) and self.entries and self.entries[-1] < 0:
            raise UndefinedFunctorError(f"weight {self} with negative entries must have length {r}")
        return SchurWeight(self.entries + (0,) * (r - len(self.entries)))


def as_weight(w: SchurWeight | Partition | Iterable[int]) -> SchurWeight:
    if isinstance(w, SchurWeight):
        return w
    if isinstance(w, Partition):
        return SchurWeight(w.parts)
    return SchurWeight(w)


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition

    def __post_init__(self) -> None:
        if not self.outer.contains(self.inner):
            raise ValueError(f"{self.inner} is not contained in {self.outer}")

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(len(self.outer)) for j in range(self.inner[i], self.outer[i])]


def conjugate(p: Partition | Iterable[int]) -> Partition:
    """Column lengths of the Young diagram."""
    p = as_partition(p)
    if not p.parts:
        return Partition()
    return Partition(sum(1 for part in p.parts if part >= j) for j in range(1, p.parts[0] + 1))


def count_standard_tableaux(p: Partition | Iterable[int]) -> int:
    """Number of standard tableaux of shape ``p``.

    Uses the closed product over the ``d`` rows of ``p``::

        r!/d! * prod_i i!/(l_i + d - i)! * prod_{i<j} ((l_i - l_j)/(j - i) + 1)
    """
    p = as_partition(p)
    if not p.parts:
        raise ValueError("empty partition")
    rows, r = len(p), p.size
    value = Fraction(factorial(r), factorial(rows))
    for i, li in enumerate(p.parts, start=1):
        value *= Fraction(factorial(i), factorial(li + rows - i))
    for i in range(rows):
        for j in range(i + 1, rows):
            value *= Fraction(p.parts[i] - p.parts[j], j - i) + 1
    assert value.denominator == 1
    return int(value)


def is_yamanouchi(word: Sequence[int]) -> bool:
    """Every suffix has at least as many ``k`` as ``k+1``, for all ``k``."""
    counts: Counter[int] = Counter()
    for x in reversed(word):
        if x < 1:
            raise ValueError("letters must be positive")
        counts[x] += 1
        if x > 1 and counts[x] > counts[x - 1]:
            return False
    return True


def row_word(tableau: dict[tuple[int, int], int]) -> list[int]:
    """Row reading word: left to right within a row, rows from bottom to top."""
    rows = sorted({i for i, _ in tableau}, reverse=True)
    return [tableau[(i, j)] for i in rows for j in sorted(j for r, j in tableau if r == i)]


def is_semistandard(tableau: dict[tuple[int, int], int]) -> bool:
    for (i, j), v in tableau.items():
        right = tableau.get((i, j + 1))
        below = tableau.get((i + 1, j))
        if right is not None and right < v:
            return False
        if below is not None and below <= v:
            return False
    return True


def lr_tableaux(outer: Partition, inner: Partition, content: Partition) -> Iterator[dict[tuple[int, int], int]]:
    """Littlewood-Richardson skew tableaux of shape ``outer/inner`` with given content.

    Cells are filled in reverse reading order (top row first, right to left)
    so the row-strictness, column-strictness and lattice conditions can all
    be checked on partial fillings.
    """
    if not outer.contains(inner) or inner.size + content.size != outer.size:
        return
    order = [(i, j) for i in range(len(outer)) for j in reversed(range(inner[i], outer[i]))]
    limits = content.parts
    fill: dict[tuple[int, int], int] = {}
    counts = [0] * (len(limits) + 1)

    def rec(k: int) -> Iterator[dict[tuple[int, int], int]]:
        if k == len(order):
            yield dict(fill)
            return
        i, j = order[k]
        hi = len(limits)
        right = fill.get((i, j + 1))
        if right is not None:
            hi = min(hi, right)
        above = fill.get((i - 1, j))
        lo = 1 if above is None else above + 1
        # a letter v can sit in row i only if v <= i + 1
        hi = min(hi, i + 1)
        for v in range(lo, hi + 1):
            if counts[v] >= limits[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            fill[(i, j)] = v
            yield from rec(k + 1)
            del fill[(i, j)]
            counts[v] -= 1

    yield from rec(0)


@lru_cache(maxsize=None)
def _lr(lam: tuple[int, ...], mu: tuple[int, ...], nu: tuple[int, ...]) -> int:
    return sum(1 for _ in lr_tableaux(Partition(nu), Partition(lam), Partition(mu)))


def lr_coefficient(lam, mu, nu) -> int:
    """Multiplicity of ``nu`` in ``lam (x) mu``, counted by LR skew tableaux of shape ``nu/lam``."""
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    if lam.size + mu.size != nu.size or not nu.contains(lam):
        return 0
    return _lr(lam.parts, mu.parts, nu.parts)


def schur_rank(w: SchurWeight | Partition | Iterable[int], r: int) -> int:
    """Rank of the Schur functor of weight ``w`` applied to a rank ``r`` bundle.

    A weight that is not weakly decreasing gives the zero functor.
    """
    entries = tuple(w.entries if isinstance(w, SchurWeight) else w.parts if isinstance(w, Partition) else w)
    if any(a < b for a, b in zip(entries, entries[1:])):
        return 0
    while len(entries) > r and entries[-1] == 0:
        entries = entries[:-1]
    if len(entries) > r:
        raise UndefinedFunctorError(f"weight {entries} is undefined in rank {r}")
    if len(entries) < r:
        if entries and entries[-1] < 0:
            raise UndefinedFunctorError(f"weight {entries} with negative entries must have length {r}")
        entries = entries + (0,) * (r - len(entries))
    p, _ = SchurWeight(entries).normalize()
    rho = p.padded(r)
    num = prod(rho[i] - rho[j] + j - i for i in range(r) for j in range(i + 1, r))
    den = prod(j - i for i in range(r) for j in range(i + 1, r))
    assert num % den == 0
    return num // den


def interlacing_rows(row: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Rows ``y`` of length ``len(row)-1`` with ``row[i] >= y[i] >= row[i+1]``."""
    if len(row) <= 1:
        yield ()
        return

    def rec(i: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if i == len(row) - 1:
            yield acc
            return
        for v in range(row[i + 1], row[i] + 1):
            yield from rec(i + 1, acc + (v,))

    yield from rec(0, ())


@lru_cache(maxsize=4096)
def _gt_weights(row: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    if not row:
        return (((), 1),)
    total = sum(row)
    acc: Counter[tuple[int, ...]] = Counter()
    for below in interlacing_rows(row):
        last = total - sum(below)
        for w, mult in _gt_weights(below):
            acc[w + (last,)] += mult
    return tuple(sorted(acc.items()))


def enumerate_gt_patterns(p: Partition | Iterable[int], r: int) -> Counter[tuple[int, ...]]:
    """Weight multiset of the Schur functor ``p`` in rank ``r`` via Gelfand-Tsetlin patterns.

    The ``k``-th weight coordinate is the row sum of the length-``k`` row
    minus that of the row below it.
    """
    p = as_partition(p)
    return Counter(dict(_gt_weights(p.padded(r))))


def weight_multiset(w: SchurWeight | Partition | Iterable[int], r: int) -> Counter[tuple[int, ...]]:
    """Weights of ``Gamma^w`` in rank ``r``, with determinant twists applied."""
    w = as_weight(w)
    p, k = w.normalize()
    if len(p) > r:
        raise UndefinedFunctorError(f"weight {w} is undefined in rank {r}")
    if k and len(w.entries) != r:
        raise UndefinedFunctorError(f"weight {w} with determinant twist must have length {r}")
    base = enumerate_gt_patterns(p, r)
    if not k:
        return base
    return Counter({tuple(x + k for x in mu): c for mu, c in base.items()})


def partitions_of(n: int, max_len: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse lexicographic order."""
    max_part = n if max_part is None else max_part

    def rec(rem: int, cap: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield acc
            return
        if max_len is not None and len(acc) >= max_len:
            return
        for first in range(min(rem, cap), 0, -1):
            yield from rec(rem - first, first, acc + (first,))

    for parts in rec(n, max_part, ()):
        yield Partition(parts)
