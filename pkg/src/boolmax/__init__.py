"""Boolean max-convolution, the transfer to classical max-convolution, and
Dagum max-stable laws, with a finite-dimensional operator-model oracle."""

__version__ = "0.1.0"

from .semigroup import boolean_min, boolean_min_power, chi, chi_inverse, odds
from .cauchy import (
    AtomicMeasure,
    NumericalFailure,
    RationalFunction,
    atom_mass_at_zero,
    boolean_additive_convolve,
    cauchy_from_k,
    cauchy_transform,
    k_transform,
    measure_from_cauchy,
)
from .distfn import (
    BernoulliProjection,
    Custom,
    Dagum,
    DistFn,
    Frechet,
    Pareto,
    PointMass,
    Step,
    Tabulated,
    boolean_max_conv,
    boolean_max_conv_power,
    classical_max_conv,
    evaluate,
    from_spec,
    geometric_grid,
    load_spec,
    rescale,
    sup_distance,
    to_spec,
    transfer,
    transfer_inverse,
)
from .operator_model import (
    OperatorModel,
    boolean_embed,
    diagonal_model,
    distribution,
    moment,
    projection_meet,
    projection_model,
    spectral_max_distribution,
)
from .stable_laws import is_boolean_max_stable, stability_check, stable_norming
from .attraction import (
    doa_check,
    norming_constant,
    norming_sequence,
    rv_equivalence_check,
    rv_index_estimate,
)
