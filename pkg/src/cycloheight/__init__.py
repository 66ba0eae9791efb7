"""Cyclotomic polynomial heights, prime-gap predicates, realizable-height
sets, and constructive ternary witnesses."""

__version__ = "0.1.0"

from .cyclotomic import (
    BudgetError,
    CoeffSeq,
    DEFAULT_COEFF_BUDGET,
    HeightReport,
    KaplanClass,
    PrimeTriple,
    RadicalReduction,
    coefficients,
    direct_series,
    height_only,
    height_report,
    kaplan_class,
    reduce_to_radical,
)
from .euler import ConstantsReport, constants
from .heightsets import (
    IntervalCoverage,
    RWitness,
    TableRow,
    TableSearchResult,
    TableVerification,
    interval_coverage,
    minimal_height_table,
    r_membership,
    r_nonmembers,
    read_table_csv,
    ternary_stream,
    verify_table,
    write_table_csv,
)
from .primes import (
    GapRecord,
    GapSummary,
    andrica_ok,
    factorize,
    gap_summary,
    is_prime,
    iter_gaps,
    iter_prime_blocks,
    next_prime,
    primes_up_to,
    radical,
    sieve_primes,
    smallest_prime_in_class,
    sqrt_gap_ok,
)
from .witnesses import (
    GRecord,
    TernaryWitness,
    WitnessVerificationError,
    g_scan,
    linnik_witness,
    m_pq,
    pi_m,
    verify_witness,
    with_wilms,
)

__all__ = [
    "BudgetError",
    "CoeffSeq",
    "ConstantsReport",
    "DEFAULT_COEFF_BUDGET",
    "GapRecord",
    "GapSummary",
    "GRecord",
    "HeightReport",
    "IntervalCoverage",
    "KaplanClass",
    "PrimeTriple",
    "RadicalReduction",
    "RWitness",
    "TableRow",
    "TableSearchResult",
    "TableVerification",
    "TernaryWitness",
    "WitnessVerificationError",
    "andrica_ok",
    "coefficients",
    "constants",
    "direct_series",
    "factorize",
    "g_scan",
    "gap_summary",
    "height_only",
    "height_report",
    "interval_coverage",
    "is_prime",
    "iter_gaps",
    "iter_prime_blocks",
    "kaplan_class",
    "linnik_witness",
    "m_pq",
    "minimal_height_table",
    "next_prime",
    "pi_m",
    "primes_up_to",
    "r_membership",
    "r_nonmembers",
    "radical",
    "read_table_csv",
    "reduce_to_radical",
    "sieve_primes",
    "smallest_prime_in_class",
    "sqrt_gap_ok",
    "ternary_stream",
    "verify_table",
    "verify_witness",
    "with_wilms",
    "write_table_csv",
]
