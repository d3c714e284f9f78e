"""Function theory on the disk: representations, factorization and automorphisms."""
from ._function import (
    DEFAULT_DEGREE,
    DEFAULT_GRID,
    BoundaryFunction,
    DiskFunction,
    HpNormSpec,
    boundary_samples,
    derivative,
    dilate,
    evaluate,
    herglotz_transform,
    hp_norm,
    max_deviation,
    negative_energy_ratio,
    poisson_integral,
    polyval,
    project_analytic,
    ring_samples,
    taylor_from_boundary,
)
from ._factorization import (
    BlaschkeProduct,
    Factorization,
    InnerPart,
    OuternessReport,
    SingularAtom,
    blaschke_eval,
    blaschke_samples,
    blaschke_taylor,
    factorize,
    inner_part,
    is_outer,
    outer_from_modulus,
    outer_part,
    singular_inner_eval,
    singular_inner_samples,
)
from ._mobius import (
    MobiusMap,
    OperatorMatrix,
    ShiftNormRow,
    forelli_isometry,
    forelli_weight,
    mobius_compose,
    mobius_derivative,
    mobius_eval,
    mobius_inverse,
    mobius_samples,
    mobius_taylor,
    shift_multiplier_norm,
    shift_norm_trend,
    wco_matrix,
)
