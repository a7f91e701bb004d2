"""Hyperplane arrangements, logarithmic derivations, and critical ideals.

Exact rational-arithmetic tools for studying when resonance of the
Aomoto complex forces a large critical set of the master function, with
a small catalog of worked arrangements and a verification harness.
"""

from .arrangement import (
    Arrangement,
    ArrangementError,
    cone,
    decone,
    direct_sum,
    dump_json,
    from_json_dict,
    from_rows,
    load_json,
    poincare_by_deletion_restriction,
    to_json_dict,
)
from .catalog import CatalogEntry, entries, get, names, self_test
from .critical import (
    critical_point_count,
    fibre_kernel_dimension,
    logarithmic_ideal_generators,
    naive_ideal_generators,
    pairing,
    saturated_critical_generators,
)
from .groebner import (
    BudgetExceededError,
    GroebnerBasis,
    groebner_basis,
    ideal_quotient,
    radical_membership,
    saturate,
)
from .logmod import (
    Derivation,
    FreenessCertificate,
    derivation_space,
    euler_derivation,
    free_certificate,
    is_log_derivation,
    log_complex_betti,
    minimal_derivation_generators,
    saito_check,
)
from .orlik_solomon import (
    OrlikSolomon,
    brute_force_aomoto_betti,
    euler_characteristic_magnitude,
    poincare_coefficients,
)
from .polyring import Polynomial, Ring, parse_polynomial
from .verify import EntryReport, WeightReport, check_weights, sweep, verify_entry

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "ArrangementError",
    "BudgetExceededError",
    "CatalogEntry",
    "Derivation",
    "EntryReport",
    "FreenessCertificate",
    "GroebnerBasis",
    "OrlikSolomon",
    "Polynomial",
    "Ring",
    "WeightReport",
    "brute_force_aomoto_betti",
    "check_weights",
    "cone",
    "critical_point_count",
    "decone",
    "derivation_space",
    "direct_sum",
    "dump_json",
    "entries",
    "euler_characteristic_magnitude",
    "euler_derivation",
    "fibre_kernel_dimension",
    "free_certificate",
    "from_json_dict",
    "from_rows",
    "get",
    "groebner_basis",
    "ideal_quotient",
    "is_log_derivation",
    "load_json",
    "log_complex_betti",
    "logarithmic_ideal_generators",
    "minimal_derivation_generators",
    "naive_ideal_generators",
    "names",
    "pairing",
    "parse_polynomial",
    "poincare_by_deletion_restriction",
    "poincare_coefficients",
    "radical_membership",
    "saito_check",
    "saturate",
    "saturated_critical_generators",
    "self_test",
    "sweep",
    "to_json_dict",
    "verify_entry",
]
