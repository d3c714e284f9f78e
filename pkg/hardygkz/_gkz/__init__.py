"""Recovery theorems for functionals, weighted composition operators and module characters."""
from ._engine import (
    CoefficientFunctional,
    CounterexampleReport,
    ForelliCertificate,
    FunctionalWitness,
    InvertibilityReport,
    RecoveryReport,
    WcoReport,
    classify_isometry,
    difference_quotient_check,
    explain_functional,
    fit_mobius,
    invertibility_margins,
    isometry_deviation,
    quotient_constancy_check,
    recover_functional,
    recover_operator,
    swap_unitary,
    weight_quotient,
)
from ._family import (
    NonvanishingWitness,
    check_outer_nonvanishing,
    disk_minimum,
    outer_test_family,
    refine_zero,
    winding_number,
)
from ._module import (
    CharacterReport,
    ClosureReport,
    FiniteAlgebra,
    GeneratingSet,
    LawCheck,
    ModuleAction,
    ModuleInstance,
    ScalarGkzReport,
    check_generating_set,
    conjugated_diagonal_instance,
    extract_character,
    regular_module,
    scalar_gkz_check,
    verify_algebra,
    verify_module,
)
