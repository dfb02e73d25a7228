"""Growth functions of sumsets in abelian semigroups."""
from .growth import (
    FittedPolynomial,
    StabilizationReport,
    detect_stabilization,
    evaluate,
    finite_difference,
    fit_polynomial,
)
from .semigroup import (
    ElementSet,
    FreeInteger,
    Modular,
    SemigroupSpec,
    add,
    canonicalize,
    cyclic,
    element_set,
    integers,
    product_spec,
    table_spec,
    validate_spec,
)
from .series import numerator, rational_form_check, to_series
from .structure import (
    frobenius_number,
    normalize,
    structure_sets,
    verify_multilinear,
)
from .sumset import (
    GrowthTable,
    Problem,
    brute_force_sumset,
    combined_sumset,
    growth_table,
    h_fold,
    integer_problem,
    make_problem,
    set_sum,
)

__version__ = "0.1.0"
