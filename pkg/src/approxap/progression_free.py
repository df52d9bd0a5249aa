"""Exact k-term progression detection and the extremal statistic r_k(N).

r_k(N) is the largest size of a subset of {1..N} with no k-term arithmetic
progression, computed by branch and bound with an exhaustive guarantee.
Requests beyond the documented range raise CapabilityError rather than
ever returning an unverified answer.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .ap_core import ArithProgression
from .errors import CapabilityError, InvalidArgumentError
from .integer_sets import IntegerSet

# Exact-search guarantee limits. The k=3 search has been exercised to 40;
# larger k admit far denser progression-free sets, so the tree is wider.
EXACT_LIMITS = {3: 40}
EXACT_LIMIT_DEFAULT = 22

# r_3(1..40), precomputed by compute_r_k itself and cached here so that
# threshold scans do not re-run the search; tests recompute and compare.
_R3_TABLE = (
    1, 2, 2, 3, 4, 4, 4, 4, 5, 5,
    6, 6, 7, 8, 8, 8, 8, 8, 8, 9,
    9, 9, 9, 10, 10, 11, 11, 11, 11, 12,
    12, 13, 13, 13, 13, 14, 14, 14, 14, 15,
)


@dataclass(frozen=True)
class RkResult:
    """Exact extremal value with a maximal progression-free witness."""

    N: int
    k: int
    r: int
    witness: tuple[int, ...]


def _as_sorted_tuple(S: IntegerSet | Sequence[int]) -> tuple[int, ...]:
    if isinstance(S, IntegerSet):
        return S.elements
    return tuple(sorted(set(S)))


def has_k_ap(S: IntegerSet | Sequence[int], k: int) -> ArithProgression | None:
    """First k-term progression contained in S, or None.

    Scans pairs (first element, second element) in ascending order, so the
    returned witness has the smallest start and, for that start, the
    smallest gap.
    """
    if k < 3:
        raise InvalidArgumentError(f"progression length must be >= 3, got {k}")
    elems = _as_sorted_tuple(S)
    members = set(elems)
    n = len(elems)
    for i in range(n):
        a = elems[i]
        for j in range(i + 1, n):
            gap = elems[j] - a
            # need the full tail to fit below the maximum
            if a + (k - 1) * gap > elems[-1]:
                break
            ok = True
            x = elems[j] + gap
            for _ in range(k - 2):
                if x not in members:
                    ok = False
                    break
                x += gap
            if ok:
                return ArithProgression(a, gap, k)
    return None


def _extends_ap(mask: int, v: int, k: int) -> bool:
    """Would adding v to the 1-based mask complete a k-term progression?

    Elements are added in ascending order, so checking progressions that
    END at v detects every progression exactly once.
    """
    for g in range(1, (v - 1) // (k - 1) + 1):
        x = v - g
        hit = True
        for _ in range(k - 1):
            if not (mask >> (x - 1)) & 1:
                hit = False
                break
            x -= g
        if hit:
            return True
    return False


def _greedy_size(N: int, k: int) -> int:
    mask = 0
    size = 0
    for v in range(1, N + 1):
        if not _extends_ap(mask, v, k):
            mask |= 1 << (v - 1)
            size += 1
    return size


def _max_size(N: int, k: int) -> int:
    """Phase 1: the extremal size, with reflection symmetry pruning.

    Every set or its reflection x -> N+1-x has min+max <= N+1, so the
    search may fix the first element f and cap values at N+1-f.
    """
    best = _greedy_size(N, k)

    def dfs(v: int, mask: int, size: int, cap: int) -> None:
        nonlocal best
        if size + (cap - v + 1) <= best:
            return
        if v > cap:
            if size > best:
                best = size
            return
        if not _extends_ap(mask, v, k):
            dfs(v + 1, mask | (1 << (v - 1)), size + 1, cap)
        dfs(v + 1, mask, size, cap)

    for f in range(1, N + 1):
        cap = N + 1 - f
        if f > cap or 1 + (cap - f) <= best:
            break
        dfs(f + 1, 1 << (f - 1), 1, cap)
    return best


def _lex_smallest_witness(N: int, k: int, r: int) -> tuple[int, ...]:
    """Phase 2: first progression-free set of size r in include-first DFS order.

    Include-first exploration over ascending values yields candidates in
    lexicographic order, so the first hit is the lexicographically smallest
    witness. No reflection pruning here: it would break lex minimality.
    """
    out: list[int] | None = None

    def dfs(v: int, mask: int, chosen: list[int]) -> bool:
        nonlocal out
        if len(chosen) == r:
            out = list(chosen)
            return True
        if len(chosen) + (N - v + 1) < r:
            return False
        if not _extends_ap(mask, v, k):
            chosen.append(v)
            if dfs(v + 1, mask | (1 << (v - 1)), chosen):
                return True
            chosen.pop()
        return dfs(v + 1, mask, chosen)

    if r == 0:
        return ()
    dfs(1, 0, [])
    assert out is not None, "phase 2 must find a witness of the proven size"
    return tuple(out)


@lru_cache(maxsize=None)
def _compute_r_k_cached(N: int, k: int) -> tuple[int, tuple[int, ...]]:
    r = _max_size(N, k)
    return r, _lex_smallest_witness(N, k, r)


def exact_limit(k: int) -> int:
    return EXACT_LIMITS.get(k, EXACT_LIMIT_DEFAULT)


def compute_r_k(N: int, k: int) -> RkResult:
    """Exact r_k(N) plus the lexicographically smallest maximal witness."""
    if k < 3:
        raise InvalidArgumentError(f"progression length must be >= 3, got {k}")
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    limit = exact_limit(k)
    if N > limit:
        raise CapabilityError(
            f"exact r_{k} search is guaranteed only for N <= {limit}, got {N}"
        )
    r, witness = _compute_r_k_cached(N, k)
    return RkResult(N=N, k=k, r=r, witness=witness)


def r_k_value(N: int, k: int) -> int:
    """r_k(N) only, consulting the precomputed k=3 cache when it applies."""
    if k == 3 and 1 <= N <= len(_R3_TABLE):
        return _R3_TABLE[N - 1]
    return compute_r_k(N, k).r


def density_forces_ap(M: int, k: int, count: int) -> bool:
    """True iff every subset of {1..M} with `count` elements contains a k-AP.

    Exactly count > r_k(M); capability errors propagate from the r_k oracle.
    """
    if count < 0 or count > M:
        raise InvalidArgumentError(f"count must be in [0, {M}], got {count}")
    return count > r_k_value(M, k)
