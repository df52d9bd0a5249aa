"""Independent brute-force oracles the test suite checks the library against.

Everything here is deliberately dumb: plain loops, full enumeration, no
shared code paths with the implementations under test.
"""
from __future__ import annotations

import math

import mpmath
import numpy as np


def naive_sieve(limit: int) -> list[int]:
    """Unsegmented Eratosthenes, the slow obvious way."""
    flags = [True] * (limit + 1)
    flags[0:2] = [False, False]
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            for m in range(p * p, limit + 1, p):
                flags[m] = False
    return [i for i, f in enumerate(flags) if f]


def naive_nearest(elems: list[int], x: int) -> int:
    return min(abs(x - a) for a in elems)


def naive_approx_distance(points: list[int], elems: list[int]) -> int:
    return max(min(abs(p - a) for a in elems) for p in points)


def rk_exhaustive(N: int, k: int = 3) -> int:
    """r_k(N) by checking every one of the 2^N subsets, vectorized."""
    patterns = []
    for g in range(1, (N - 1) // (k - 1) + 1):
        for a in range(1, N - (k - 1) * g + 1):
            m = 0
            for i in range(k):
                m |= 1 << (a + i * g - 1)
            patterns.append(m)
    masks = np.arange(1 << N, dtype=np.int64)
    free = np.ones(1 << N, dtype=bool)
    for pat in patterns:
        free &= (masks & pat) != pat
    sizes = np.zeros(1 << N, dtype=np.int8)
    tmp = masks.copy()
    while tmp.any():
        sizes += (tmp & 1).astype(np.int8)
        tmp >>= 1
    return int(sizes[free].max())


def has_ap_bruteforce(values: list[int], k: int) -> bool:
    """Every (start, gap) pair tried directly against the member set."""
    members = set(values)
    for a in values:
        for b in values:
            if b <= a:
                continue
            g = b - a
            if all(a + i * g in members for i in range(k)):
                return True
    return False


def oracle_f_t_b(b: int, t: int) -> tuple[int, int, int, float]:
    """(a*, n*, doubled, f) by looping every a and every n, compared at 350 bits.

    The inner n loop walks upward from 1 with no root extraction; candidate
    ratios are compared directly in high precision; ties keep the smaller a
    (and smaller n within one a).
    """
    bt = b**t
    best: tuple[mpmath.mpf, int, int, int] | None = None
    with mpmath.workprec(350):
        ln2 = mpmath.log(2)
        for a in range(10, b):
            X = a**t + bt
            best_d, best_n = None, None
            n = 1
            while True:
                d = abs(X - 2 * n**t)
                if best_d is None or d < best_d:
                    best_d, best_n = d, n
                if 2 * n**t > X and d > best_d:
                    break
                n += 1
            ratio = (mpmath.log(best_d) - ln2) / mpmath.log(bt - a**t)
            if best is None or ratio < best[0]:
                best = (ratio, a, best_n, best_d)
    assert best is not None
    _, a, n, d = best
    f = (math.log(d) - math.log(2)) / math.log(bt - a**t)
    return a, n, d, f


def cubes_bruteforce(limit: int) -> list[tuple[int, int, int, int]]:
    """All x < y <= limit and every z up to an obvious overshoot."""
    out = []
    for x in range(1, limit + 1):
        for y in range(x + 1, limit + 1):
            X = x**3 + y**3
            z = 1
            while 2 * z**3 <= X + 2:
                v = X - 2 * z**3
                if v in (-2, -1, 1, 2):
                    out.append((x, y, z, v))
                z += 1
    return sorted(out)
