"""Arithmetic progressions and the exact approximation distance.

The acceptance predicate D <= gap^alpha is evaluated without floating
point: alpha is a rational p/q, so the test becomes D^q <= gap^p over
arbitrary-precision integers.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import EmptySetError, InvalidArgumentError
from .integer_sets import IntegerSet


@dataclass(frozen=True)
class ArithProgression:
    """The progression {start + j*gap : j = 0..length-1}."""

    start: int
    gap: int
    length: int

    def __post_init__(self) -> None:
        if self.start < 0:
            raise InvalidArgumentError(f"start must be nonnegative, got {self.start}")
        if self.gap < 1:
            raise InvalidArgumentError(f"gap must be positive, got {self.gap}")
        if self.length < 1:
            raise InvalidArgumentError(f"length must be >= 1, got {self.length}")

    def points(self) -> tuple[int, ...]:
        return tuple(self.start + j * self.gap for j in range(self.length))

    @property
    def last(self) -> int:
        return self.start + (self.length - 1) * self.gap


@dataclass(frozen=True)
class RationalExponent:
    """An exponent p/q in lowest terms, kept rational so verdicts stay exact."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise InvalidArgumentError(f"exponent must be positive, got {self.p}/{self.q}")
        if gcd(self.p, self.q) != 1:
            raise InvalidArgumentError(
                f"{self.p}/{self.q} is not in lowest terms; divide by gcd first"
            )

    @classmethod
    def parse(cls, text: str) -> "RationalExponent":
        """Parse 'p/q'. Decimal inputs are rejected with a rational suggestion."""
        text = text.strip()
        if "/" in text:
            p_str, q_str = text.split("/", 1)
            try:
                p, q = int(p_str), int(q_str)
            except ValueError:
                raise InvalidArgumentError(f"cannot parse exponent {text!r}") from None
            g = gcd(p, q)
            return cls(p // g, q // g)
        try:
            value = float(text)
        except ValueError:
            raise InvalidArgumentError(f"cannot parse exponent {text!r}") from None
        below = Fraction(value).limit_denominator(64)
        if below >= value:
            below = below - Fraction(1, 64)
        raise InvalidArgumentError(
            f"exponent must be an exact rational p/q; for {text} try e.g. "
            f"{below.numerator}/{below.denominator} (a rational just below it)"
        )

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def require_unit_interval(self) -> "RationalExponent":
        if not 0 < self.p < self.q:
            raise InvalidArgumentError(
                f"exponent must lie strictly in (0,1), got {self.p}/{self.q}"
            )
        return self

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class ApproxMatch:
    """A progression, its exact distance to a set, and the exact verdict."""

    progression: ArithProgression
    distance: int
    alpha: RationalExponent
    within: bool


def nearest_distance(A: IntegerSet, x: int) -> int:
    """min over a in A of |x - a|, by binary search."""
    elems = A.elements
    if not elems:
        raise EmptySetError("nearest_distance over an empty set")
    i = bisect_left(elems, x)
    if i < len(elems) and elems[i] == x:
        return 0
    best = None
    if i < len(elems):
        best = elems[i] - x
    if i > 0:
        d = x - elems[i - 1]
        if best is None or d < best:
            best = d
    return best


def approx_distance(P: ArithProgression, A: IntegerSet, threshold: int | None = None) -> int:
    """max over points p of P of the nearest distance to A.

    When `threshold` is given the scan stops as soon as the running maximum
    exceeds it; the returned value is then only guaranteed to be > threshold.
    """
    if not A.elements:
        raise EmptySetError("approx_distance over an empty set")
    worst = 0
    for j in range(P.length):
        d = nearest_distance(A, P.start + j * P.gap)
        if d > worst:
            worst = d
            if threshold is not None and worst > threshold:
                return worst
    return worst


def is_within(P: ArithProgression, A: IntegerSet, alpha: RationalExponent) -> ApproxMatch:
    """Exact verdict: does D(P, A) <= gap^alpha hold?

    Computed as D^q <= gap^p in integer arithmetic; no floating point.
    """
    alpha.require_unit_interval()
    d = approx_distance(P, A)
    return ApproxMatch(
        progression=P,
        distance=d,
        alpha=alpha,
        within=d**alpha.q <= P.gap**alpha.p,
    )
