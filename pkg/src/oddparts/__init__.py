"""Partitions with distinct odd parts and partitions with no part congruent
to 2 mod 4: enumeration, exact q-series, and executable bijections."""

from .bijections import (
    CaseLabel,
    ContractViolation,
    DomainError,
    MappingRecord,
    classify_case,
    multiset_union,
    phi,
    phi_inverse,
    split_alpha_beta,
    thm31_backward,
    thm31_forward,
    thm32_backward,
    thm32_forward,
)
from .kernels import BACKEND
from .partitions import (
    EnumerationBoundError,
    Family,
    Partition,
    canonicalize,
    count_family,
    enumerate_family,
    enumerate_partitions,
    is_in_family,
    multiplicity,
    parse_partition,
)
from .series import (
    PochhammerSpec,
    TermSpec,
    TruncatedSeries,
    coefficient,
    named_gf,
    pochhammer,
    qbinomial_check,
    series_add,
    series_invert,
    series_mul,
    sum_ratio_terms,
)
from .verify import (
    IdentityTag,
    VerificationReport,
    cross_check_counts,
    oeis_cross_check,
    verify_bijection,
    verify_bijection_range,
    verify_identity,
    verify_proof_chain,
)

__version__ = "0.1.0"
