"""approxap: approximate arithmetic progressions in large integer sets.

Exact search and certification of near-progressions, the extremal
statistic r_k(N), coloring upgrades to exact progressions, planar
constellation search, and near-miss statistics for t-th powers.
"""
from .ap_core import (
    ApproxMatch,
    ArithProgression,
    RationalExponent,
    approx_distance,
    is_within,
    nearest_distance,
)
from .constellations import (
    ConstellationMatch,
    Pattern2D,
    PlanarSet,
    constellation_distance,
    search_constellation,
)
from .decomposition import (
    CertificateConfig,
    DecompositionReport,
    LevelPlan,
    WindowScan,
    certify,
    default_epsilon,
    exhaustive_search,
    plan_levels,
    scan_windows,
)
from .errors import (
    ApproxAPError,
    CapabilityError,
    EmptySetError,
    ExactProgressionError,
    InternalCheckError,
    InvalidArgumentError,
    ParseError,
)
from .integer_sets import (
    DensityProfile,
    IntegerSet,
    LoadedSet,
    density_profile,
    load_set,
    make_powers,
    make_primes,
    reciprocal_sum_partial,
)
from .near_miss import (
    NearMissRecord,
    cube_identity_search,
    f_t_b,
    iroot,
    nearest_power_doubled,
    scan,
)
from .progression_free import RkResult, compute_r_k, density_forces_ap, has_k_ap
from .vdw import ColoredApproxAP, color, every_coloring_has_mono_ap, extract_exact

__version__ = "0.1.0"

__all__ = [
    "ApproxAPError",
    "ApproxMatch",
    "ArithProgression",
    "CapabilityError",
    "CertificateConfig",
    "ColoredApproxAP",
    "ConstellationMatch",
    "DecompositionReport",
    "DensityProfile",
    "EmptySetError",
    "ExactProgressionError",
    "IntegerSet",
    "InternalCheckError",
    "InvalidArgumentError",
    "LevelPlan",
    "LoadedSet",
    "NearMissRecord",
    "ParseError",
    "Pattern2D",
    "PlanarSet",
    "RationalExponent",
    "RkResult",
    "WindowScan",
    "approx_distance",
    "certify",
    "color",
    "compute_r_k",
    "constellation_distance",
    "cube_identity_search",
    "default_epsilon",
    "density_forces_ap",
    "density_profile",
    "every_coloring_has_mono_ap",
    "exhaustive_search",
    "extract_exact",
    "f_t_b",
    "has_k_ap",
    "iroot",
    "is_within",
    "load_set",
    "make_powers",
    "make_primes",
    "nearest_distance",
    "nearest_power_doubled",
    "plan_levels",
    "reciprocal_sum_partial",
    "scan",
    "scan_windows",
    "search_constellation",
]
