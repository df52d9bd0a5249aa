import math
import random
from fractions import Fraction

import pytest

from approxap import (
    CapabilityError,
    CertificateConfig,
    EmptySetError,
    IntegerSet,
    InvalidArgumentError,
    RationalExponent,
    certify,
    default_epsilon,
    exhaustive_search,
    make_primes,
    plan_levels,
    scan_windows,
)
from approxap.decomposition import (
    bound_value_closed_form,
    bound_value_running_product,
    epsilon_tradeoff_holds,
    effective_threshold,
    floor_window_power,
)
from approxap.near_miss import iroot

HALF = RationalExponent(1, 2)
THREE_QUARTERS = RationalExponent(3, 4)
CFG_QUARTER = CertificateConfig(epsilon=Fraction(1, 4), k=3, gamma=0.3)


def test_floor_window_power_exact_values():
    # floor(256^(9/16)) = floor(2^4.5) = 22
    assert floor_window_power(8, THREE_QUARTERS, 2) == 22
    assert floor_window_power(20, HALF, 1) == 1024
    assert floor_window_power(20, HALF, 3) == 5  # floor(2^2.5)
    # independent route: iroot of the full power
    for n, j in ((8, 2), (20, 3), (14, 4)):
        alpha = THREE_QUARTERS
        assert floor_window_power(n, alpha, j) == iroot(
            (1 << n) ** (alpha.p**j), alpha.q**j
        )


def test_plan_spec_point_n20_threshold5():
    plan = plan_levels(20, HALF, 3, Fraction(1, 4), threshold=5)
    assert plan.m_prime == 1
    assert plan.m == 1
    assert plan.interval_lengths == (32, 2)
    assert plan.moduli == (32, 2)


def test_plan_n8_three_quarters_first_length():
    plan = plan_levels(8, THREE_QUARTERS, 3, Fraction(1, 4))
    assert plan.interval_lengths[0] == 22


def test_plan_lengths_decrease_and_moduli_at_least_two():
    for n in range(8, 22, 2):
        for alpha in (HALF, THREE_QUARTERS, RationalExponent(2, 3)):
            plan = plan_levels(n, alpha, 3, Fraction(1, 4))
            lengths = ((1 << n),) + plan.interval_lengths
            assert all(a > b for a, b in zip(lengths, lengths[1:]))
            assert all(m >= 2 for m in plan.moduli)
            assert plan.m >= 1
            assert len(plan.moduli) == len(plan.interval_lengths)


def test_plan_degenerate_modulus_drops_level():
    # n=10, alpha=1/2: the level-1 modulus would serve classes of size 2,
    # below the structural threshold, so the plan keeps only level 0
    plan = plan_levels(10, HALF, 3, Fraction(1, 4))
    assert len(plan.moduli) == 1


def test_plan_capability_error_names_minimal_n():
    with pytest.raises(CapabilityError) as exc_info:
        plan_levels(8, HALF, 3, Fraction(1, 4), threshold=100)
    assert "14" in str(exc_info.value)
    # and the named exponent really is viable
    plan_levels(14, HALF, 3, Fraction(1, 4), threshold=100)


def test_effective_threshold_exact_tier():
    # epsilon = 0.49: the smallest M with r_3(M) < 0.49*M is 17 (r_3(17)=8)
    M, exact = effective_threshold(Fraction(49, 100), 3)
    assert (M, exact) == (17, True)


def test_effective_threshold_fallback_tier():
    M, exact = effective_threshold(Fraction(1, 16), 3)
    assert (M, exact) == (3, False)


def test_default_epsilon_values():
    assert default_epsilon(HALF, 0.3, range(10, 15)) == Fraction(1, 4)
    assert default_epsilon(HALF, 2.0, range(10, 15)) == Fraction(1, 256)
    assert default_epsilon(THREE_QUARTERS, 2.0, range(10, 21)) == Fraction(1, 16)


def test_default_epsilon_meets_tradeoff_tightly():
    eps = default_epsilon(HALF, 2.0, range(10, 15))
    assert all(epsilon_tradeoff_holds(eps, HALF, 2.0, n) for n in range(10, 15))
    assert not all(epsilon_tradeoff_holds(2 * eps, HALF, 2.0, n) for n in range(10, 15))


def test_bound_value_two_routes_agree_exactly():
    for eps in (Fraction(1, 4), Fraction(1, 16), Fraction(3, 8)):
        for levels in (1, 2, 3):
            for n in (8, 12, 20):
                assert bound_value_closed_form(eps, levels, n) == bound_value_running_product(
                    eps, levels, n
                )


def test_certify_full_window_witnesses_at_level_zero():
    A = IntegerSet(tuple(range(256, 512)))
    report = certify(A, 8, CFG_QUARTER, HALF)
    assert report.outcome == "witness"
    assert report.witness_level == 0
    w = report.witness
    assert w.distance <= report.plan.interval_lengths[0] // 2
    # full occupancy: the label progression has unit step, so the witness
    # gap is exactly sub_length * modulus
    assert w.progression.gap == report.plan.interval_lengths[0] * report.plan.moduli[0]


def test_certify_witness_gap_is_multiple_of_level_stride():
    rng = random.Random(99)
    for _ in range(40):
        A = _bernoulli_window(11, 0.4, rng.randrange(10**6))
        if not len(A):
            continue
        report = certify(A, 11, CFG_QUARTER, HALF)
        if report.outcome != "witness":
            continue
        lvl = report.witness_level
        stride = report.plan.interval_lengths[lvl] * report.plan.moduli[lvl]
        assert report.witness.progression.gap % stride == 0


def test_certify_single_element_bound():
    report = certify(IntegerSet((300,)), 8, CFG_QUARTER, HALF)
    assert report.outcome == "bound"
    assert report.actual_count == 1 <= report.bound_value


def test_certify_empty_window():
    with pytest.raises(EmptySetError):
        certify(IntegerSet((3, 5)), 8, CFG_QUARTER, HALF)


def test_certify_witness_gap_floor_and_doubled_form():
    A = make_primes(1 << 13)
    for n in (10, 11, 12):
        report = certify(A, n, CFG_QUARTER, HALF)
        assert report.outcome == "witness"
        w = report.witness
        q, p = w.alpha.q, w.alpha.p
        assert w.distance**q <= (1 << q) * w.progression.gap**p
        assert 2 * w.progression.gap >= report.plan.gap_floor_doubled
        assert report.gap_over_n == Fraction(w.progression.gap, n)


def _bernoulli_window(n: int, prob: float, seed: int) -> IntegerSet:
    rng = random.Random(seed)
    lo, hi = 1 << n, 1 << (n + 1)
    return IntegerSet(tuple(v for v in range(lo, hi) if rng.random() < prob))


def test_certify_dichotomy_random_trials():
    # sparse random windows: every run must land on a verified branch
    n = 12
    prob = 1.0 / math.log(n) ** 2
    witness_runs = bound_runs = 0
    for seed in range(100):
        A = _bernoulli_window(n, prob, seed)
        if not len(A):
            continue
        report = certify(A, n, CFG_QUARTER, HALF)
        if report.outcome == "witness":
            witness_runs += 1
            w = report.witness
            assert w.distance**w.alpha.q <= (1 << w.alpha.q) * w.progression.gap**w.alpha.p
        else:
            bound_runs += 1
            assert report.actual_count <= report.bound_value
            # ledger consistency: occupied counts can only shrink level-on-level
            counts = [s.occupied for s in report.levels]
            subs = [s.sub_intervals for s in report.levels]
            for c, s in zip(counts, subs):
                assert c <= s
    assert witness_runs + bound_runs > 0


def test_certify_superset_keeps_witness():
    rng = random.Random(77)
    n = 10
    for _ in range(30):
        A = _bernoulli_window(n, 0.25, rng.randrange(10**6))
        if not len(A):
            continue
        extra = set(A.elements) | {
            rng.randrange(1 << n, 1 << (n + 1)) for _ in range(50)
        }
        B = IntegerSet(tuple(sorted(extra)))
        rep_a = certify(A, n, CFG_QUARTER, HALF)
        rep_b = certify(B, n, CFG_QUARTER, HALF)
        if rep_a.outcome == "witness":
            assert rep_b.outcome == "witness"


def test_certify_coverage_accounting():
    # every window element is either in an occupied finest interval or was
    # discarded with a right-end fragment
    for seed in (1, 2, 3):
        A = _bernoulli_window(12, 0.1, seed)
        report = certify(A, 12, CFG_QUARTER, HALF)
        if report.outcome != "bound":
            continue
        discarded = sum(s.discarded_elements for s in report.levels)
        final = report.levels[-1]
        assert report.actual_count <= final.occupied * final.sub_length + discarded


def test_scan_windows_skips_empty_and_orders_reports():
    A = make_primes(1 << 13)
    sparse = IntegerSet(A.elements + ((1 << 16) + 5,))
    config = CertificateConfig(epsilon=Fraction(1, 4), k=3, gamma=0.3)
    scan = scan_windows(sparse, range(10, 17), config, HALF)
    assert [r.n for r in scan.reports] == sorted(r.n for r in scan.reports)
    skipped_n = [n for n, _ in scan.skipped]
    assert 14 in skipped_n and 15 in skipped_n  # nothing between 2^13 and 2^16
    assert scan.witness_windows >= 1
    assert scan.empirical_c == min(
        r.gap_over_n for r in scan.reports if r.outcome == "witness"
    )


def test_scan_windows_deterministic_across_workers():
    A = make_primes(1 << 12)
    config = CertificateConfig(epsilon=Fraction(1, 4), k=3, gamma=0.3)
    runs = [scan_windows(A, range(9, 12), config, HALF, workers=w) for w in (1, 2)]
    assert runs[0] == runs[1]


def test_exhaustive_search_confirms_certificate_witness():
    A = make_primes(1 << 11)
    report = certify(A, 10, CFG_QUARTER, HALF)
    assert report.outcome == "witness"
    found = exhaustive_search(A, 10, 3, HALF, factor=2)
    assert found is not None
    assert found.distance**HALF.q <= (1 << HALF.q) * found.progression.gap**HALF.p


def test_every_certificate_witness_has_direct_search_counterpart():
    # certify's witness itself satisfies the doubled bound, so the direct
    # search over the same window can never come back empty-handed
    rng = random.Random(4242)
    for _ in range(15):
        A = _bernoulli_window(9, rng.uniform(0.05, 0.6), rng.randrange(10**6))
        if not len(A):
            continue
        report = certify(A, 9, CFG_QUARTER, HALF)
        if report.outcome != "witness":
            continue
        found = exhaustive_search(A, 9, 3, HALF, factor=2)
        assert found is not None


def test_exhaustive_search_none_on_hopeless_window():
    A = IntegerSet((1 << 10,))
    # single element: best possible distance for a long progression is large
    assert exhaustive_search(A, 10, 3, RationalExponent(1, 5), gap_min=60, factor=1) is None


def test_config_validation():
    with pytest.raises(InvalidArgumentError):
        CertificateConfig(epsilon=Fraction(1, 2), k=3, gamma=1.0)
    with pytest.raises(InvalidArgumentError):
        CertificateConfig(epsilon=Fraction(1, 4), k=2, gamma=1.0)
    with pytest.raises(InvalidArgumentError):
        CertificateConfig(epsilon=Fraction(1, 4), k=3, gamma=0.0)
