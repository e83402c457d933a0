"""Exact verification of binomial-sum supercongruences.

The fast path computes each statement in a truncated p-adic ring Z/p^e;
the exact path recomputes it over arbitrary-precision rationals.  Both must
agree bit for bit, which is itself one of the tested invariants.
"""

from .ring import (
    ContextMismatchError,
    ExponentZeroError,
    NonInvertibleDenominatorError,
    NotInvertibleError,
    NotPrimeError,
    RingCtx,
    RingElem,
    ZeroDenominatorError,
    is_prime,
)
from .exact import (
    BernoulliTable,
    NegativeValuationError,
    ParameterOutOfRangeError,
    bernoulli,
    exact_theorem12_sum,
    harmonic,
    padic_valuation,
    rat_binomial,
    reduce_mod,
    von_staudt_clausen_denominator,
)
from .congruences import (
    CongruenceRecord,
    DegreeTooLargeError,
    KmaxTooLargeError,
    REQUIRED_VALUATION,
    StatementId,
    binomial_sequence,
    central_identity_check,
    halfsum_check,
    lemma21_check,
    lemma22_check,
    lemma23_check,
    power_sum_check,
    proof_step_check,
    reflection_check,
    theorem11_bernoulli_record,
    theorem11_lhs1,
    theorem11_lhs2,
    theorem11_rhs2,
    theorem12_residue,
    verify_statement,
    wolstenholme_check,
)
from .sweep import (
    EmptyGridError,
    ExplorationReport,
    Grid,
    explore_valuation,
    parity_admissible,
    run_grid,
    sieve,
    summarize,
)

__version__ = "0.1.0"

__all__ = [
    "BernoulliTable",
    "CongruenceRecord",
    "ContextMismatchError",
    "DegreeTooLargeError",
    "EmptyGridError",
    "ExplorationReport",
    "ExponentZeroError",
    "Grid",
    "KmaxTooLargeError",
    "NegativeValuationError",
    "NonInvertibleDenominatorError",
    "NotInvertibleError",
    "NotPrimeError",
    "ParameterOutOfRangeError",
    "REQUIRED_VALUATION",
    "RingCtx",
    "RingElem",
    "StatementId",
    "ZeroDenominatorError",
    "bernoulli",
    "binomial_sequence",
    "central_identity_check",
    "exact_theorem12_sum",
    "explore_valuation",
    "halfsum_check",
    "harmonic",
    "is_prime",
    "lemma21_check",
    "lemma22_check",
    "lemma23_check",
    "padic_valuation",
    "parity_admissible",
    "power_sum_check",
    "proof_step_check",
    "rat_binomial",
    "reduce_mod",
    "reflection_check",
    "run_grid",
    "sieve",
    "summarize",
    "theorem11_bernoulli_record",
    "theorem11_lhs1",
    "theorem11_lhs2",
    "theorem11_rhs2",
    "theorem12_residue",
    "verify_statement",
    "von_staudt_clausen_denominator",
    "wolstenholme_check",
]
