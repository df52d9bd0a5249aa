"""Construction, ingestion and density measurement of integer sets.

Sets are immutable once built: a sorted, deduplicated tuple of nonnegative
arbitrary-precision integers plus a short label used in reports.
"""
from __future__ import annotations

import csv
import math
import warnings
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator

from .errors import EmptySetError, InvalidArgumentError, ParseError

# Relative slack for the floating-point density comparison; resolves in
# favor of `satisfied`.
DENSITY_SLACK = 1e-9


@dataclass(frozen=True)
class IntegerSet:
    """Sorted, deduplicated finite set of nonnegative integers."""

    elements: tuple[int, ...]
    label: str = "A"

    def __post_init__(self) -> None:
        prev = -1
        for e in self.elements:
            if e <= prev:
                raise InvalidArgumentError(
                    f"elements must be strictly increasing, got {e} after {prev}"
                )
            prev = e
        if self.elements and self.elements[0] < 0:
            raise InvalidArgumentError("negative integers are not supported")

    @classmethod
    def from_iterable(cls, values: Iterable[int], label: str = "A") -> "IntegerSet":
        """Sort and deduplicate arbitrary input values."""
        return cls(tuple(sorted(set(values))), label)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        i = bisect_left(self.elements, x)
        return i < len(self.elements) and self.elements[i] == x

    def count_upto(self, n: int) -> int:
        """#A ∩ [0, n], inclusive on both ends."""
        return bisect_right(self.elements, n)

    def restrict(self, lo: int, hi: int, label: str | None = None) -> "IntegerSet":
        """Elements in the half-open interval [lo, hi)."""
        i = bisect_left(self.elements, lo)
        j = bisect_left(self.elements, hi)
        return IntegerSet(
            self.elements[i:j],
            label if label is not None else f"{self.label}[{lo},{hi})",
        )

    def window(self, n: int) -> "IntegerSet":
        """The dyadic window A ∩ [2^n, 2^(n+1))."""
        return self.restrict(1 << n, 1 << (n + 1), f"{self.label}_w{n}")

    def max(self) -> int:
        if not self.elements:
            raise EmptySetError("empty set has no maximum")
        return self.elements[-1]


@dataclass(frozen=True)
class DensityProfile:
    """Result of comparing #A ∩ [0,n] against the power-log threshold n/(log n)^gamma."""

    n: int
    count: int
    gamma: float
    threshold: float
    satisfied: bool


@dataclass(frozen=True)
class LoadedSet:
    """A set read from disk, with how many duplicate tokens were dropped."""

    set: IntegerSet
    duplicates: int
    path: str = ""


def make_powers(t: int, limit: int, label: str | None = None) -> IntegerSet:
    """All perfect t-th powers n^t with n >= 1 and n^t <= limit."""
    if t < 2:
        raise InvalidArgumentError(f"power exponent must be >= 2, got {t}")
    if limit < 1:
        raise InvalidArgumentError(f"limit must be >= 1, got {limit}")
    out = []
    n = 1
    while True:
        v = n**t
        if v > limit:
            break
        out.append(v)
        n += 1
    return IntegerSet(tuple(out), label or f"powers:{t}")


_SEGMENT = 1 << 16


def make_primes(limit: int, label: str = "primes") -> IntegerSet:
    """All primes <= limit, by a segmented sieve."""
    if limit < 2:
        raise InvalidArgumentError(f"prime limit must be >= 2, got {limit}")
    root = math.isqrt(limit)
    base = bytearray([1]) * (root + 1)
    base[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(root) + 1):
        if base[p]:
            base[p * p :: p] = b"\x00" * len(base[p * p :: p])
    base_primes = [i for i in range(2, root + 1) if base[i]]

    primes: list[int] = []
    lo = 2
    while lo <= limit:
        hi = min(lo + _SEGMENT, limit + 1)
        seg = bytearray([1]) * (hi - lo)
        for p in base_primes:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start >= hi:
                continue
            seg[start - lo :: p] = b"\x00" * len(seg[start - lo :: p])
        if lo <= 1:
            seg[0 : 2 - lo] = b"\x00" * (2 - lo)
        primes.extend(i + lo for i, flag in enumerate(seg) if flag)
        lo = hi
    return IntegerSet(tuple(primes), label)


def load_set(
    path: str | Path,
    format: str = "newline-decimal",
    column: str | None = None,
    label: str | None = None,
) -> LoadedSet:
    """Read an integer set from disk.

    Formats: "newline-decimal" (one decimal integer per line, blank lines
    ignored) or "csv-column" (named column of a CSV file).
    """
    path = Path(path)
    tokens: list[tuple[int, str]] = []  # (line number, token)
    if format == "newline-decimal":
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                tok = line.strip()
                if tok:
                    tokens.append((lineno, tok))
    elif format == "csv-column":
        if column is None:
            raise InvalidArgumentError("csv-column format requires a column name")
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or column not in reader.fieldnames:
                raise ParseError(f"column {column!r} not found in {path}")
            for lineno, row in enumerate(reader, start=2):
                tok = (row.get(column) or "").strip()
                if tok:
                    tokens.append((lineno, tok))
    else:
        raise InvalidArgumentError(f"unknown format {format!r}")

    values: list[int] = []
    for lineno, tok in tokens:
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"{path}: line {lineno}: not an integer: {tok!r}") from None
        if v < 0:
            raise ParseError(f"{path}: line {lineno}: negative integer: {tok!r}")
        values.append(v)
    if not values:
        raise EmptySetError(f"{path}: no integers found")

    unique = sorted(set(values))
    return LoadedSet(
        set=IntegerSet(tuple(unique), label or path.stem),
        duplicates=len(values) - len(unique),
        path=str(path),
    )


def density_profile(A: IntegerSet, n: int, gamma: float) -> DensityProfile:
    """Exact count of A ∩ [0,n] against the floating threshold n/(log n)^gamma.

    The satisfied flag is diagnostic only; exact certificates never consume it.
    Natural log; rescaling gamma absorbs any base change.
    """
    if n < 2:
        raise InvalidArgumentError(f"density profile needs n >= 2, got {n}")
    if gamma <= 0:
        raise InvalidArgumentError(f"gamma must be positive, got {gamma}")
    count = A.count_upto(n)
    threshold = n / math.log(n) ** gamma
    satisfied = count >= threshold * (1.0 - DENSITY_SLACK)
    return DensityProfile(n=n, count=count, gamma=gamma, threshold=threshold, satisfied=satisfied)


def reciprocal_sum_partial(A: IntegerSet, upto: int) -> Fraction:
    """Exact rational sum of 1/a over a in A with 1 <= a <= upto."""
    if upto < 1:
        raise InvalidArgumentError(f"upto must be >= 1, got {upto}")
    if A.elements and A.elements[0] == 0:
        warnings.warn("0 is not summable; skipping it", stacklevel=2)
    total = Fraction(0)
    i = bisect_left(A.elements, 1)
    j = bisect_right(A.elements, upto)
    for a in A.elements[i:j]:
        total += Fraction(1, a)
    return total
