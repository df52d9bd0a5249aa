"""Near-miss statistics for t-th powers against 3-term progressions.

For fixed t >= 3 and b > a >= 10, how close does a^t + b^t come to twice a
t-th power? Everything is measured through the doubled deviation
|a^t + b^t - 2 n^t| so the computation stays in exact integers; the ratio

    f = (ln(doubled) - ln 2) / ln(b^t - a^t)

is the only floating-point quantity, and near-ties between candidate
ratios are re-resolved at 200-bit precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import mpmath

from .errors import ExactProgressionError, InvalidArgumentError
from ._parallel import ordered_map

CSV_HEADER = "t,b,a,n,doubled_dev,f"

# Floating-point gap below which two candidate ratios are re-compared
# at high precision before one is declared smaller.
NEAR_TIE = 1e-9
_ARBITRATION_BITS = 200


@dataclass(frozen=True)
class NearMissRecord:
    """Minimizer of the deviation ratio for one value of b."""

    t: int
    b: int
    a_star: int
    n_star: int
    doubled_dev: int
    f_value: float


def iroot(X: int, t: int) -> int:
    """Integer t-th root: the unique r >= 0 with r^t <= X < (r+1)^t.

    Newton iteration seeded from the bit length (or a float estimate when
    X is small), then verified by exact powering before returning.
    """
    if t < 2:
        raise InvalidArgumentError(f"root degree must be >= 2, got {t}")
    if X < 0:
        raise InvalidArgumentError(f"root of a negative number: {X}")
    if X == 0:
        return 0
    if t == 2:
        return math.isqrt(X)
    if X.bit_length() <= 52:
        r = int(X ** (1.0 / t))
    else:
        r = 1 << ((X.bit_length() + t - 1) // t)
        while True:
            nr = ((t - 1) * r + X // r ** (t - 1)) // t
            if nr >= r:
                break
            r = nr
    if r < 1:
        r = 1
    while r**t > X:
        r -= 1
    while (r + 1) ** t <= X:
        r += 1
    return r


def nearest_power_doubled(X: int, t: int) -> tuple[int, int]:
    """The n >= 1 minimizing |X - 2 n^t|, and that minimum.

    Ties break toward the smaller n. X is a^t + b^t for the caller, so the
    returned value is the doubled deviation from (a^t + b^t)/2.
    """
    if X < 2:
        raise InvalidArgumentError(f"X must be >= 2, got {X}")
    if t < 2:
        raise InvalidArgumentError(f"power must be >= 2, got {t}")
    r = max(iroot(X // 2, t), 1)
    n, doubled = r, abs(X - 2 * r**t)
    d_up = abs(X - 2 * (r + 1) ** t)
    if d_up < doubled:
        n, doubled = r + 1, d_up
    return n, doubled


def _ratio_float(doubled: int, denom: int) -> float:
    return (math.log(doubled) - math.log(2)) / math.log(denom)


def _ratio_mp(doubled: int, denom: int) -> mpmath.mpf:
    with mpmath.workprec(_ARBITRATION_BITS):
        return (mpmath.log(doubled) - mpmath.log(2)) / mpmath.log(denom)


def f_t_b(b: int, t: int) -> NearMissRecord:
    """Minimize the deviation ratio over a in [10, b).

    Argmin ties break toward the smaller a (candidates are scanned
    ascending and replaced only on a strict improvement).
    """
    if t < 3:
        raise InvalidArgumentError(f"t must be >= 3, got {t}")
    if b < 11:
        raise InvalidArgumentError(f"b must be >= 11 so that some a >= 10 exists, got {b}")
    bt = b**t
    best: tuple[float, int, int, int, int] | None = None  # (f, a, n, doubled, denom)
    for a in range(10, b):
        X = a**t + bt
        n, doubled = nearest_power_doubled(X, t)
        if doubled == 0:
            raise ExactProgressionError(
                f"exact 3-term progression of {t}-th powers at a={a}, b={b}, n={n}"
            )
        denom = bt - a**t
        f = _ratio_float(doubled, denom)
        if best is None or f < best[0] - NEAR_TIE:
            best = (f, a, n, doubled, denom)
        elif f < best[0] + NEAR_TIE:
            # too close to call in double precision: arbitrate at 200 bits
            if _ratio_mp(doubled, denom) < _ratio_mp(best[3], best[4]):
                best = (f, a, n, doubled, denom)
    assert best is not None
    _, a, n, doubled, denom = best
    return NearMissRecord(
        t=t,
        b=b,
        a_star=a,
        n_star=n,
        doubled_dev=doubled,
        f_value=_ratio_float(doubled, denom),
    )


def _scan_task(args: tuple[int, int]) -> NearMissRecord:
    t, b = args
    return f_t_b(b, t)


def scan(t: int, b_max: int, workers: int = 1) -> list[NearMissRecord]:
    """One record per b in [11, b_max], in ascending b order."""
    if b_max < 11:
        raise InvalidArgumentError(f"b_max must be >= 11, got {b_max}")
    tasks = [(t, b) for b in range(11, b_max + 1)]
    return ordered_map(_scan_task, tasks, workers=workers)


def empirical_infimum(records: Iterable[NearMissRecord]) -> float:
    """Running infimum of f over a scan: the desk-scale estimate of f_t."""
    return min(r.f_value for r in records)


def cube_identity_search(limit: int) -> list[tuple[int, int, int, int]]:
    """All (x, y, z, v) with 1 <= x < y <= limit and v = x^3+y^3-2z^3 in {±1, ±2}.

    z is the nearest-power candidate for (x^3+y^3)/2; x = y = z is excluded
    automatically since x < y.
    """
    if limit < 2:
        raise InvalidArgumentError(f"limit must be >= 2, got {limit}")
    out: list[tuple[int, int, int, int]] = []
    for y in range(2, limit + 1):
        y3 = y**3
        for x in range(1, y):
            X = x**3 + y3
            z, doubled = nearest_power_doubled(X, 3)
            if doubled in (1, 2):
                out.append((x, y, z, X - 2 * z**3))
    out.sort(key=lambda rec: (rec[0], rec[1]))
    return out


def format_record(rec: NearMissRecord) -> str:
    return (
        f"{rec.t},{rec.b},{rec.a_star},{rec.n_star},"
        f"{rec.doubled_dev},{format(rec.f_value, '.12g')}"
    )


def write_csv(records: Sequence[NearMissRecord], out: TextIO) -> None:
    """CSV with the fixed header; doubled deviations in full decimal, f to 12 significant digits."""
    out.write(CSV_HEADER + "\n")
    for rec in records:
        out.write(format_record(rec) + "\n")
