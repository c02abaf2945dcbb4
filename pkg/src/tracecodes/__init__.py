"""Collusion-resistant code toolkit.

Exact verifiers, tracing algorithms, constructive transforms, closed-form
size caps and exhaustive searches for frameproof, parent-identifiable and
traceability codes and their cover-free set-family twins.
"""

from .bounds import (
    BinaryFpStatus,
    BoundEntry,
    BoundReport,
    binary_fp_status,
    bound_report,
    fp_bound,
    ipp_bound,
    min_exceed_length_quadratic,
    singleton_bound,
    ta_bound,
)
from .core import (
    Code,
    DescendantSetTooLarge,
    INFINITE_DISTANCE,
    ParentSetFamily,
    desc_profile,
    enumerate_descendants,
    group_distance,
    hamming_distance,
    is_descendant,
    min_distance,
    parent_sets,
)
from .search import (
    MinLengthResult,
    SearchProblem,
    SearchResult,
    max_code_search,
    min_length_sandwich,
    min_length_search,
    verify_upper_bound_region,
)
from .trace import (
    Accusation,
    DEFAULT_SEED,
    PirateStrategy,
    TracingReport,
    forge_pirate,
    simulate_tracing,
    trace_ipp,
    trace_ta,
)
from .transform import (
    IppViolationCertificate,
    PatternPartition,
    PruneResult,
    Restriction,
    SetFamily,
    StripTrace,
    block_compose,
    build_ipp_violation,
    certificate_problems,
    cff_restrict,
    cff_to_fpc,
    distance_strip,
    fpc_to_cff,
    make_row_partition,
    pad_code,
    prune_special_codewords,
)
from .verify import (
    Counters,
    CoverViolation,
    FramedWord,
    IppViolation,
    TaViolation,
    Verdict,
    check_cff,
    check_frameproof,
    check_ipp,
    check_ta,
    ta_distance_sufficient,
)

__version__ = "0.1.0"

__all__ = [
    "Accusation",
    "BinaryFpStatus",
    "BoundEntry",
    "BoundReport",
    "Code",
    "Counters",
    "CoverViolation",
    "DEFAULT_SEED",
    "DescendantSetTooLarge",
    "FramedWord",
    "INFINITE_DISTANCE",
    "IppViolation",
    "IppViolationCertificate",
    "MinLengthResult",
    "ParentSetFamily",
    "PatternPartition",
    "PirateStrategy",
    "PruneResult",
    "Restriction",
    "SearchProblem",
    "SearchResult",
    "SetFamily",
    "StripTrace",
    "TaViolation",
    "TracingReport",
    "Verdict",
    "binary_fp_status",
    "block_compose",
    "bound_report",
    "build_ipp_violation",
    "certificate_problems",
    "cff_restrict",
    "cff_to_fpc",
    "check_cff",
    "check_frameproof",
    "check_ipp",
    "check_ta",
    "desc_profile",
    "distance_strip",
    "enumerate_descendants",
    "forge_pirate",
    "fp_bound",
    "fpc_to_cff",
    "group_distance",
    "hamming_distance",
    "ipp_bound",
    "is_descendant",
    "make_row_partition",
    "max_code_search",
    "min_distance",
    "min_exceed_length_quadratic",
    "min_length_sandwich",
    "min_length_search",
    "pad_code",
    "parent_sets",
    "prune_special_codewords",
    "simulate_tracing",
    "singleton_bound",
    "ta_bound",
    "ta_distance_sufficient",
    "trace_ipp",
    "trace_ta",
    "verify_upper_bound_region",
]
