"""Upgrading approximate progressions to exact ones by coloring offsets.

Each point of an approximate progression sits within C of the set, so its
signed displacement is one of at most 2C+1 values. A monochromatic
progression of indices shifts to a genuine progression inside the set.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .ap_core import ArithProgression, nearest_distance
from .errors import CapabilityError, InvalidArgumentError
from .integer_sets import IntegerSet
from .progression_free import has_k_ap


@dataclass(frozen=True)
class ColoredApproxAP:
    """An approximate progression with per-point signed offsets into the set."""

    progression: ArithProgression
    uncertainty: int
    offsets: tuple[int, ...]
    colors_used: int


def color(P: ArithProgression, A: IntegerSet, C: int) -> ColoredApproxAP:
    """Assign each point its signed offset to a nearest element of A.

    Equidistant neighbors tie toward the smaller element; any fixed rule
    works, determinism is what matters.
    """
    if C < 0:
        raise InvalidArgumentError(f"uncertainty must be nonnegative, got {C}")
    offsets: list[int] = []
    for j in range(P.length):
        p = P.start + j * P.gap
        d = nearest_distance(A, p)
        if d > C:
            raise InvalidArgumentError(
                f"point {p} is at distance {d} > C={C} from the set; "
                "color requires approx_distance(P, A) <= C"
            )
        offset = -d if (p - d) in A else d
        offsets.append(offset)
    return ColoredApproxAP(
        progression=P,
        uncertainty=C,
        offsets=tuple(offsets),
        colors_used=len(set(offsets)),
    )


def extract_exact(colored: ColoredApproxAP, k: int) -> ArithProgression | None:
    """A k-term progression inside the set, from a monochromatic index progression.

    Searches indices 0..len-1 exhaustively for a k-term progression with
    equal offsets; the matching points, shifted by that offset, form an
    exact progression in the set with gap = index_gap * P.gap.
    """
    if k < 3:
        raise InvalidArgumentError(f"progression length must be >= 3, got {k}")
    P = colored.progression
    offs = colored.offsets
    n = len(offs)
    for i in range(n):
        max_g = (n - 1 - i) // (k - 1)
        for g in range(1, max_g + 1):
            o = offs[i]
            if all(offs[i + j * g] == o for j in range(1, k)):
                return ArithProgression(P.start + i * P.gap + o, g * P.gap, k)
    return None


_COLORING_LIMIT = 24


def every_coloring_has_mono_ap(length: int, colors: int, k: int) -> bool:
    """Exhaustively check all colorings of {1..length} for a monochromatic k-AP.

    Only viable for tiny parameters (colors^length colorings); guarded by a
    capability error rather than silently taking forever.
    """
    if length < 1 or colors < 1:
        raise InvalidArgumentError("length and colors must be positive")
    if k < 3:
        raise InvalidArgumentError(f"progression length must be >= 3, got {k}")
    if colors**length > 1 << _COLORING_LIMIT:
        raise CapabilityError(
            f"exhaustive coloring check limited to colors^length <= 2^{_COLORING_LIMIT}"
        )
    for coloring in product(range(colors), repeat=length):
        classes: list[list[int]] = [[] for _ in range(colors)]
        for idx, c in enumerate(coloring):
            classes[c].append(idx + 1)
        if not any(len(cl) >= k and has_k_ap(cl, k) for cl in classes):
            return False
    return True
