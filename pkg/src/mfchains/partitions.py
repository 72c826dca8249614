"""Partitions, lattice points and the exact rational helpers used throughout.

Partitions are plain tuples of positive integers in weakly decreasing order
(trailing zeros stripped, so ``()`` is the zero partition).  Lattice points of
``N^n`` are tuples of fixed length ``n`` and keep their zeros.

Ordering convention everywhere: graded by weight, then decreasing
lexicographic order inside a grade.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Partition",
    "LatticePoint",
    "as_partition",
    "is_partition",
    "weight",
    "contains",
    "covers_up",
    "covers_down",
    "enumerate_partitions",
    "count_partitions",
    "compositions",
    "frequency",
    "distinct_permutations",
    "gbinom",
    "rising",
    "format_rational",
    "parse_rational",
    "encode_state",
    "decode_state",
]

Partition = tuple[int, ...]
LatticePoint = tuple[int, ...]


def is_partition(parts: Sequence[int]) -> bool:
    """True if `parts` is weakly decreasing and non-negative."""
    return all(p >= 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def as_partition(parts: Iterable[int] | int) -> Partition:
    """Canonical form of a partition: validated, trailing zeros stripped.

    A bare integer ``k`` is read as the one-row partition ``(k,)``.
    """
    if isinstance(parts, int):
        parts = (parts,)
    parts = tuple(int(p) for p in parts)
    if not is_partition(parts):
        raise ValueError(f"not a partition: {parts!r}")
    end = len(parts)
    while end and parts[end - 1] == 0:
        end -= 1
    return parts[:end]


def weight(state: Sequence[int]) -> int:
    return sum(state)


def contains(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """Young-diagram containment ``mu ⊆ lam`` (shorter sequences padded with zeros)."""
    if len(mu) > len(lam):
        if any(m > 0 for m in mu[len(lam):]):
            return False
        mu = mu[: len(lam)]
    return all(m <= l for m, l in zip(mu, lam))


def covers_up(lam: Sequence[int], max_rows: int) -> list[Partition]:
    """Partitions obtained from `lam` by adding one box, at most `max_rows` rows."""
    lam = as_partition(lam)
    if max_rows < 1:
        raise ValueError("max_rows must be positive")
    if len(lam) > max_rows:
        raise ValueError(f"partition {lam} has more than {max_rows} rows")
    out = []
    ext = lam + (0,)
    for i in range(min(len(ext), max_rows)):
        if i == 0 or ext[i - 1] > ext[i]:
            new = list(ext)
            new[i] += 1
            out.append(as_partition(new))
    out.sort(reverse=True)
    return out


def covers_down(lam: Sequence[int]) -> list[Partition]:
    """Partitions obtained from `lam` by removing one box."""
    lam = as_partition(lam)
    out = []
    for i in range(len(lam)):
        if i == len(lam) - 1 or lam[i] > lam[i + 1]:
            new = list(lam)
            new[i] -= 1
            out.append(as_partition(new))
    out.sort(reverse=True)
    return out


def _partitions(w: int, rows: int, largest: int) -> Iterator[Partition]:
    # decreasing lex order falls out of trying the largest first part first
    if w == 0:
        yield ()
        return
    if rows == 0:
        return
    for first in range(min(w, largest), 0, -1):
        if first * rows < w:
            break
        for rest in _partitions(w - first, rows - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate(w: int, rows: int) -> tuple[Partition, ...]:
    return tuple(_partitions(w, rows, w))


def enumerate_partitions(w: int, max_rows: int) -> list[Partition]:
    """All partitions of `w` with at most `max_rows` rows, decreasing lex order."""
    if w < 0:
        raise ValueError("weight must be non-negative")
    if max_rows < 1:
        raise ValueError("max_rows must be positive")
    return list(_enumerate(w, max_rows))


@lru_cache(maxsize=None)
def count_partitions(w: int, rows: int) -> int:
    """Number of partitions of `w` into at most `rows` parts.

    Uses p(w, k) = p(w, k-1) + p(w-k, k), independent of the enumerator.
    """
    if w == 0:
        return 1
    if w < 0 or rows == 0:
        return 0
    return count_partitions(w, rows - 1) + count_partitions(w - rows, rows)


def compositions(w: int, n: int) -> list[LatticePoint]:
    """Points of ``N^n`` with coordinate sum `w`, in decreasing lex order."""
    if n == 1:
        return [(w,)]
    out = []
    for first in range(w, -1, -1):
        out.extend((first,) + rest for rest in compositions(w - first, n - 1))
    return out


def frequency(lam: Sequence[int], n: int) -> dict[int, int]:
    """Frequency representation ``i -> #{j : lam_j = i}`` of `lam` padded to length n."""
    lam = as_partition(lam)
    if len(lam) > n:
        raise ValueError(f"partition {lam} is longer than n={n}")
    counts = {0: n - len(lam)}
    for p in lam:
        counts[p] = counts.get(p, 0) + 1
    return dict(sorted(counts.items()))


def distinct_permutations(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct permutations of a multiset, in decreasing lex order."""
    pool = sorted(items, reverse=True)
    n = len(pool)

    def rec(prefix: list[int], remaining: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        last = None
        for k, v in enumerate(remaining):
            if v == last:
                continue
            last = v
            prefix.append(v)
            yield from rec(prefix, remaining[:k] + remaining[k + 1:])
            prefix.pop()

    yield from rec([], pool)


def rising(a: Fraction | int, k: int) -> Fraction:
    """Rising factorial ``a (a+1) ... (a+k-1)``."""
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def gbinom(top: Fraction | int, k: int) -> Fraction | int:
    """Binomial coefficient with arbitrary (rational) upper index and integer `k`."""
    if k < 0:
        return 0
    if isinstance(top, int):
        return comb(top, k) if top >= 0 else Fraction(rising(top - k + 1, k), factorial(k))
    out = Fraction(1)
    for i in range(k):
        out *= top - i
    out /= factorial(k)
    return int(out) if out.denominator == 1 else out


def format_rational(x: Fraction | int) -> str:
    """``"p/q"`` encoding; the denominator is always written."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str | int | Fraction) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    s = s.strip()
    if not s:
        raise ValueError("empty rational")
    return Fraction(s)


def encode_state(state: Sequence[int]) -> list[int]:
    return [int(v) for v in state]


def decode_state(data: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(v) for v in data)
