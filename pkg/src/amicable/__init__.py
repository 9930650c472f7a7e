"""Amicable-pair extraction rules and their computational audit.

Layers, bottom up: exact arithmetic and factorization (numerics), the
closed-form number families (sequences), primality verdicts and proving
tests (primality), the four historical rules with their lemmas (rules),
catalog scans with caching (search), and report rendering plus the CLI
(report, cli).
"""

from ._backend import backend_name
from .numerics import (
    Factorization,
    FactorizationError,
    divisors_proper,
    factorize,
    sigma_proper,
    sigma_proper_bruteforce,
)
from .policy import Policy
from .primality import (
    FormDescriptor,
    FormKind,
    PrimalityVerdict,
    Status,
    is_prime,
    lucas_lehmer,
    llr_riesel,
    mod4_shortcut,
    pepin,
    small_factor_sieve,
)
from .rules import (
    AmicabilityVerdict,
    PairStatus,
    RuleId,
    RuleReport,
    aliquot_pattern_check,
    conjecture1_rule,
    conjecture2_rule,
    conjecture3_rule,
    lemma1_check,
    lemma2_check,
    perfect_number_claims_check,
    sigma_r_closed_form,
    thabit_rule,
    verify_amicable,
)
from .search import (
    FermatScanRecord,
    MersenneCatalog,
    ResultCache,
    ScanAnomalyError,
    ScanRecord,
    default_catalog,
    load_catalog,
    scan_conjecture1,
    scan_conjecture2,
)
from .sequences import (
    BaghdadiFirstFamily,
    BaghdadiGeneralFamily,
    FermatNumber,
    ThabitTriple,
    baghdadi_first,
    baghdadi_general,
    conjecture2_residual,
    fermat_number,
    ibn_sina_identities,
    thabit_triple,
)

__version__ = "0.1.0"

__all__ = [
    "AmicabilityVerdict",
    "BaghdadiFirstFamily",
    "BaghdadiGeneralFamily",
    "Factorization",
    "FactorizationError",
    "FermatNumber",
    "FermatScanRecord",
    "FormDescriptor",
    "FormKind",
    "MersenneCatalog",
    "PairStatus",
    "Policy",
    "PrimalityVerdict",
    "ResultCache",
    "RuleId",
    "RuleReport",
    "ScanAnomalyError",
    "ScanRecord",
    "Status",
    "ThabitTriple",
    "aliquot_pattern_check",
    "backend_name",
    "baghdadi_first",
    "baghdadi_general",
    "conjecture1_rule",
    "conjecture2_residual",
    "conjecture2_rule",
    "conjecture3_rule",
    "default_catalog",
    "divisors_proper",
    "factorize",
    "fermat_number",
    "ibn_sina_identities",
    "is_prime",
    "lemma1_check",
    "lemma2_check",
    "llr_riesel",
    "load_catalog",
    "lucas_lehmer",
    "mod4_shortcut",
    "pepin",
    "perfect_number_claims_check",
    "scan_conjecture1",
    "scan_conjecture2",
    "sigma_proper",
    "sigma_proper_bruteforce",
    "sigma_r_closed_form",
    "small_factor_sieve",
    "thabit_rule",
    "thabit_triple",
    "verify_amicable",
]
