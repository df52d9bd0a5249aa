"""The window certificate: witness an approximate progression or bound the count.

On a dyadic window [2^n, 2^(n+1)) the procedure decomposes the window into
nested equal-length sub-intervals, groups them into residue classes of
labels, and searches each class's occupied labels for a k-term progression.
Either some class yields a progression of interval centres - emitted as an
exactly re-verified witness - or the per-level occupancy ledger certifies
the cardinality bound 2*(2*eps)^(m+1)*N for the window.

All interval lengths N^(alpha^(2l)) are materialized as exact integer
floors via arbitrary-precision roots; no floating point touches a verdict.
"""
from __future__ import annotations

import math
import warnings
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .ap_core import (
    ApproxMatch,
    ArithProgression,
    RationalExponent,
    approx_distance,
)
from .errors import (
    CapabilityError,
    EmptySetError,
    InternalCheckError,
    InvalidArgumentError,
)
from .integer_sets import IntegerSet
from .near_miss import iroot
from .progression_free import _R3_TABLE, exact_limit, has_k_ap, r_k_value
from ._parallel import ordered_map

_MAX_LEVELS = 48


def floor_window_power(n: int, alpha: RationalExponent, j: int) -> int:
    """floor(N^(alpha^j)) for N = 2^n, exactly.

    With alpha = p/q in lowest terms this is the (q^j)-th root of
    2^(n*p^j), seeded from a float estimate and fixed up by exact
    integer powering.
    """
    if j == 0:
        return 1 << n
    e = n * alpha.p**j
    d = alpha.q**j
    s, r = divmod(e, d)
    if r == 0:
        return 1 << s
    big = 1 << e
    x = int(math.ldexp(2.0 ** (r / d), s))
    if x < 1:
        x = 1
    while x**d > big:
        x -= 1
    while (x + 1) ** d <= big:
        x += 1
    return x


def effective_threshold(epsilon: Fraction, k: int) -> tuple[int, bool]:
    """The smallest exactly-certified class size for the occupancy argument.

    Exact tier: the smallest M with r_k(M) < epsilon*M, so that an
    AP-free occupied label set is automatically under the epsilon budget.
    Desk-scale r_k values only reach so far; when no such M is in range
    the structural floor is used instead - the smallest M whose FULL
    occupancy forces a progression (M = k) - and the plan records that
    the epsilon-level guarantee is heuristic at this scale.
    """
    cap = len(_R3_TABLE) if k == 3 else min(exact_limit(k), 16)
    for M in range(k, cap + 1):
        if r_k_value(M, k) < epsilon * M:
            return M, True
    for M in range(k, k + 2):
        if r_k_value(M, k) < M:
            return M, False
    raise InternalCheckError("no structural threshold found; r_k(k) must be k-1")


@dataclass(frozen=True)
class LevelPlan:
    """Geometry of one window's decomposition.

    interval_lengths[l] is the sub-interval length created at level l
    (the window itself is the level-0 parent and is not listed); moduli[l]
    is the residue modulus used at that level.
    """

    n: int
    alpha: RationalExponent
    interval_lengths: tuple[int, ...]
    moduli: tuple[int, ...]
    m_prime: int
    m: int
    threshold: int
    threshold_exact: bool
    gap_floor_doubled: int  # materialized N^(alpha^(2m+1)); witnesses need 2*gap >= this

    @property
    def levels(self) -> int:
        return len(self.moduli)


@dataclass(frozen=True)
class CertificateConfig:
    """Parameters of the certificate: the occupancy budget and target density."""

    epsilon: Fraction
    k: int = 3
    gamma: float = 2.0

    def __post_init__(self) -> None:
        if not 0 < self.epsilon < Fraction(1, 2):
            raise InvalidArgumentError(f"epsilon must be in (0, 1/2), got {self.epsilon}")
        if self.k < 3:
            raise InvalidArgumentError(f"k must be >= 3, got {self.k}")
        if self.gamma <= 0:
            raise InvalidArgumentError(f"gamma must be positive, got {self.gamma}")

    @classmethod
    def with_default_epsilon(
        cls, alpha: RationalExponent, gamma: float, n_range: range, k: int = 3
    ) -> "CertificateConfig":
        return cls(epsilon=default_epsilon(alpha, gamma, n_range), k=k, gamma=gamma)


def epsilon_tradeoff_holds(
    epsilon: Fraction, alpha: RationalExponent, gamma: float, n: int
) -> bool:
    """(log n / n)^(log(2 eps) / (2 log alpha)) <= n^(-gamma), numerically.

    n is the window exponent. This ties the per-window bound to the target
    density exponent gamma; it constrains the default epsilon choice and is
    diagnostic for explicit overrides.
    """
    if n < 2:
        raise InvalidArgumentError(f"tradeoff needs n >= 2, got {n}")
    beta = math.log(2 * float(epsilon)) / (2 * math.log(float(alpha.value)))
    return beta * math.log(math.log(n) / n) <= -gamma * math.log(n)


def default_epsilon(alpha: RationalExponent, gamma: float, n_range: range) -> Fraction:
    """Largest 1/2^j meeting the tradeoff for every window exponent in range."""
    alpha.require_unit_interval()
    if len(n_range) == 0:
        raise InvalidArgumentError("empty window range")
    for j in range(2, 64):
        eps = Fraction(1, 1 << j)
        if all(epsilon_tradeoff_holds(eps, alpha, gamma, nn) for nn in n_range):
            return eps
    raise CapabilityError(
        f"no epsilon of the form 1/2^j (j < 64) meets the density tradeoff "
        f"for gamma={gamma}, alpha={alpha}, n in [{n_range[0]}, {n_range[-1]}]"
    )


def _level_geometry(parent: int, sub: int, odd_power: int) -> tuple[int, int, int] | None:
    """(labels per parent, modulus, min class size) for one level, or None if degenerate."""
    if sub < 1 or sub >= parent:
        return None
    labels = parent // sub
    modulus = odd_power // sub
    if labels < 2 or modulus < 2:
        return None
    return labels, modulus, labels // modulus


def _minimal_viable_n(alpha: RationalExponent, threshold: int) -> int | None:
    for nn in range(4, 129):
        geo = _level_geometry(
            1 << nn,
            floor_window_power(nn, alpha, 2),
            floor_window_power(nn, alpha, 1),
        )
        if geo is not None and geo[2] > threshold:
            return nn
    return None


def plan_levels(
    n: int,
    alpha: RationalExponent,
    k: int,
    epsilon: Fraction,
    threshold: int | None = None,
) -> LevelPlan:
    """Materialize the level geometry for window exponent n.

    m' is the largest level index whose residue classes all stay above the
    effective threshold (the materialized form of the class-size lower
    bound (1/2) N^(alpha^(2m')) / N^(alpha^(2m'+1))); the run depth is then
    m = max(1, floor(m' - logloglog N / (-2 log alpha))), never exceeding
    m'. Levels whose modulus would round below 2 are dropped.
    """
    alpha.require_unit_interval()
    if n < 4:
        raise InvalidArgumentError(f"window exponent must be >= 4, got {n}")
    if k < 3:
        raise InvalidArgumentError(f"k must be >= 3, got {k}")
    if threshold is None:
        threshold, threshold_exact = effective_threshold(epsilon, k)
    else:
        threshold_exact = True

    x: dict[int, int] = {}

    def power(j: int) -> int:
        if j not in x:
            x[j] = floor_window_power(n, alpha, j)
        return x[j]

    geometries: list[tuple[int, int]] = []  # (sub length, modulus) per viable level
    parent = 1 << n
    while len(geometries) < _MAX_LEVELS:
        level = len(geometries)
        geo = _level_geometry(parent, power(2 * level + 2), power(2 * level + 1))
        if geo is None or geo[2] <= threshold:
            break
        geometries.append((power(2 * level + 2), geo[1]))
        parent = power(2 * level + 2)
    if not geometries:
        viable = _minimal_viable_n(alpha, threshold)
        hint = f"; smallest viable window exponent is {viable}" if viable else ""
        raise CapabilityError(
            f"window 2^{n} is too small for even one level at threshold "
            f"{threshold} (alpha={alpha}){hint}"
        )
    m_prime = len(geometries) - 1

    ln_n_log = math.log(n * math.log(2))  # log log N for N = 2^n
    lll = math.log(ln_n_log) if ln_n_log > 0 else float("-inf")
    denom = -2.0 * math.log(float(alpha.value))
    m = max(1, math.floor(m_prime - lll / denom))

    retained = geometries[: min(m, m_prime) + 1]
    m_run = len(retained) - 1
    return LevelPlan(
        n=n,
        alpha=alpha,
        interval_lengths=tuple(sub for sub, _ in retained),
        moduli=tuple(mod for _, mod in retained),
        m_prime=m_prime,
        m=m,
        threshold=threshold,
        threshold_exact=threshold_exact,
        gap_floor_doubled=power(2 * m_run + 1),
    )


@dataclass(frozen=True)
class LevelStats:
    """Occupancy ledger for one level of the decomposition."""

    level: int
    parents: int
    sub_length: int
    modulus: int
    sub_intervals: int
    occupied: int
    over_occupied_classes: int
    discarded_elements: int


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of the certificate on one window: a witness or a bound."""

    n: int
    outcome: str  # "witness" | "bound"
    witness: ApproxMatch | None
    witness_level: int | None
    levels: tuple[LevelStats, ...]
    bound_value: Fraction
    actual_count: int
    gap_over_n: Fraction | None
    plan: LevelPlan


def bound_value_closed_form(epsilon: Fraction, levels: int, n: int) -> Fraction:
    """2 * (2*epsilon)^levels * N with N = 2^n, exactly."""
    return 2 * (2 * epsilon) ** levels * Fraction(1 << n)


def bound_value_running_product(epsilon: Fraction, levels: int, n: int) -> Fraction:
    """Same bound accumulated one level factor at a time (consistency check)."""
    value = 2 * Fraction(1 << n)
    for _ in range(levels):
        value *= 2 * epsilon
    return value


def certify(
    A: IntegerSet,
    n: int,
    config: CertificateConfig,
    alpha: RationalExponent,
    plan: LevelPlan | None = None,
) -> DecompositionReport:
    """Run the decomposition on A's window [2^n, 2^(n+1)).

    Witness branch: the first k-term progression of occupied labels found
    (levels ascending, parents by start, residues ascending) is turned into
    a progression of interval centres, its distance to the window is
    computed exactly, and the doubled acceptance D^q <= 2^q * gap^p is
    re-verified; failure of that check is a hard error. Bound branch: no
    progression anywhere; the count inequality is verified directly before
    the report is emitted.
    """
    window = A.window(n)
    if len(window) == 0:
        raise EmptySetError(f"A has no elements in [2^{n}, 2^{n+1})")
    if plan is None:
        plan = plan_levels(n, alpha, config.k, config.epsilon)
    if not epsilon_tradeoff_holds(config.epsilon, alpha, config.gamma, n):
        warnings.warn(
            f"epsilon={config.epsilon} misses the density tradeoff at n={n} "
            f"for gamma={config.gamma}; the per-window dichotomy still holds",
            stacklevel=2,
        )

    elems = window.elements
    actual_count = len(elems)
    k = config.k
    eps = config.epsilon

    parents = [1 << n]
    parent_len = 1 << n
    stats: list[LevelStats] = []
    witness: ApproxMatch | None = None
    witness_level: int | None = None

    for level, (sub_len, modulus) in enumerate(zip(plan.interval_lengths, plan.moduli)):
        labels_per_parent = parent_len // sub_len
        occupied_starts: list[int] = []
        occ_total = 0
        over_occupied = 0
        discarded = 0

        for pstart in parents:
            covered_end = pstart + labels_per_parent * sub_len
            i = bisect_left(elems, pstart)
            j = bisect_left(elems, pstart + parent_len)
            j_cov = bisect_left(elems, covered_end, i, j)
            discarded += j - j_cov
            labels = sorted({(e - pstart) // sub_len for e in elems[i:j_cov]})
            if not labels:
                continue

            by_class: dict[int, list[int]] = {}
            for lab in labels:
                by_class.setdefault(lab % modulus, []).append(lab // modulus)
            for r in sorted(by_class):
                positions = by_class[r]
                class_size = (labels_per_parent - r + modulus - 1) // modulus
                if len(positions) * eps.denominator >= eps.numerator * class_size:
                    over_occupied += 1
                if witness is None and len(positions) >= k:
                    ap = has_k_ap(positions, k)
                    if ap is not None:
                        witness = _build_witness(
                            window, plan, pstart, sub_len, modulus, r, ap, alpha
                        )
                        witness_level = level
                        break
            if witness is not None:
                break
            occupied_starts.extend(pstart + lab * sub_len for lab in labels)
            occ_total += len(labels)

        if witness is not None:
            break
        stats.append(
            LevelStats(
                level=level,
                parents=len(parents),
                sub_length=sub_len,
                modulus=modulus,
                sub_intervals=len(parents) * labels_per_parent,
                occupied=occ_total,
                over_occupied_classes=over_occupied,
                discarded_elements=discarded,
            )
        )
        parents = occupied_starts
        parent_len = sub_len

    bound = bound_value_closed_form(eps, plan.levels, n)
    if witness is not None:
        return DecompositionReport(
            n=n,
            outcome="witness",
            witness=witness,
            witness_level=witness_level,
            levels=tuple(stats),
            bound_value=bound,
            actual_count=actual_count,
            gap_over_n=Fraction(witness.progression.gap, n),
            plan=plan,
        )

    if actual_count > bound:
        raise InternalCheckError(
            f"bound outcome would be unsound on window n={n}: "
            f"|A_n| = {actual_count} > {bound}; the occupancy argument does "
            "not cover this window at this epsilon"
        )
    return DecompositionReport(
        n=n,
        outcome="bound",
        witness=None,
        witness_level=None,
        levels=tuple(stats),
        bound_value=bound,
        actual_count=actual_count,
        gap_over_n=None,
        plan=plan,
    )


def _build_witness(
    window: IntegerSet,
    plan: LevelPlan,
    pstart: int,
    sub_len: int,
    modulus: int,
    residue: int,
    ap: ArithProgression,
    alpha: RationalExponent,
) -> ApproxMatch:
    """Turn a progression of occupied class positions into a verified witness.

    Positions j map to labels residue + j*modulus; the witness runs through
    the (floored) centres of those sub-intervals, so its gap is
    position_gap * modulus * sub_len.
    """
    label0 = residue + ap.start * modulus
    start = pstart + label0 * sub_len + sub_len // 2
    gap = ap.gap * modulus * sub_len
    P = ArithProgression(start=start, gap=gap, length=ap.length)
    d = approx_distance(P, window)
    q, p = alpha.q, alpha.p
    if d**q > (1 << q) * gap**p:
        raise InternalCheckError(
            f"witness candidate failed exact re-verification: D={d}, gap={gap}, "
            f"alpha={alpha}"
        )
    if 2 * gap < plan.gap_floor_doubled:
        raise InternalCheckError(
            f"witness gap {gap} below the planned floor {plan.gap_floor_doubled}/2"
        )
    return ApproxMatch(progression=P, distance=d, alpha=alpha, within=d**q <= gap**p)


@dataclass(frozen=True)
class WindowScan:
    """scan_windows outcome: reports in ascending n, skipped windows, summary."""

    reports: tuple[DecompositionReport, ...]
    skipped: tuple[tuple[int, str], ...]
    witness_windows: int
    empirical_c: Fraction | None  # minimal observed gap/n over witnesses


def _scan_task(
    args: tuple[IntegerSet, int, CertificateConfig, RationalExponent]
) -> DecompositionReport:
    A, n, config, alpha = args
    return certify(A, n, config, alpha)


def scan_windows(
    A: IntegerSet,
    n_range: range,
    config: CertificateConfig,
    alpha: RationalExponent,
    workers: int = 1,
) -> WindowScan:
    """Certify every window in n_range, in ascending order.

    Empty windows and windows below the plan's viability threshold are
    skipped with a notice rather than aborting the scan.
    """
    tasks: list[tuple[IntegerSet, int, CertificateConfig, RationalExponent]] = []
    skipped: list[tuple[int, str]] = []
    for n in n_range:
        win = A.window(n)
        if len(win) == 0:
            skipped.append((n, "empty window"))
            continue
        try:
            plan_levels(n, alpha, config.k, config.epsilon)
        except CapabilityError as exc:
            skipped.append((n, str(exc)))
            continue
        tasks.append((win, n, config, alpha))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        reports = ordered_map(_scan_task, tasks, workers=workers)
    witness_reports = [r for r in reports if r.outcome == "witness"]
    empirical_c = min((r.gap_over_n for r in witness_reports), default=None)
    return WindowScan(
        reports=tuple(reports),
        skipped=tuple(skipped),
        witness_windows=len(witness_reports),
        empirical_c=empirical_c,
    )


def exhaustive_search(
    A: IntegerSet,
    n: int,
    k: int,
    alpha: RationalExponent,
    gap_min: int = 1,
    gap_max: int | None = None,
    factor: int = 2,
) -> ApproxMatch | None:
    """Direct search of the window for a progression with D^q <= factor^q * gap^p.

    Gaps are scanned descending from the largest that structurally fits,
    starts ascending; the first acceptable progression is returned. This is
    the desk-scale fallback oracle for the certificate and the CLI `search`
    subcommand; cost is O(window * gaps).
    """
    alpha.require_unit_interval()
    if k < 3:
        raise InvalidArgumentError(f"k must be >= 3, got {k}")
    if factor < 1:
        raise InvalidArgumentError(f"factor must be >= 1, got {factor}")
    window = A.window(n)
    if len(window) == 0:
        raise EmptySetError(f"A has no elements in [2^{n}, 2^{n+1})")
    N = 1 << n
    if gap_max is None:
        gap_max = (N - 1) // (k - 1)
    gap_max = min(gap_max, (N - 1) // (k - 1))
    if gap_min < 1 or gap_min > gap_max:
        raise InvalidArgumentError(f"empty gap range [{gap_min}, {gap_max}]")

    lo = 1 << n
    for gap in range(gap_max, gap_min - 1, -1):
        allowed = iroot(factor**alpha.q * gap**alpha.p, alpha.q)
        last_start = (1 << (n + 1)) - (k - 1) * gap - 1
        for start in range(lo, last_start + 1):
            P = ArithProgression(start, gap, k)
            d = approx_distance(P, window, threshold=allowed)
            if d <= allowed:
                return ApproxMatch(
                    progression=P,
                    distance=d,
                    alpha=alpha,
                    within=d**alpha.q <= gap**alpha.p,
                )
    return None
