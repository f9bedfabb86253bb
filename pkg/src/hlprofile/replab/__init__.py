from .bounds import HlpBound, HlpParams, defect_bound_from_derivation, hlp_lower_bound, isoperimetric_bound
from .norms import FROBENIUS, OPERATOR, NormKind, jacobi_eigvalsh, matrix_norm, schatten
from .reps import (
    UnitaryMap,
    commutant_dimension,
    direct_sum,
    evaluate,
    exact_clifford_rep,
    faithful_clifford_rep,
    perturb,
    relation_defect,
    sign_character,
)
from .stability import (
    CliffordVerdict,
    FitResult,
    StabilityPreconditionError,
    check_table,
    compressed_rep_search,
    compression_inequality_check,
    fit_exact_rep,
    lemma_clifford_check,
)
from .tables import (
    HomTable,
    hom_defect,
    lift_to_table,
    matrix_from_json,
    matrix_to_json,
    pair_defects,
    table_from_json,
    table_to_json,
)
