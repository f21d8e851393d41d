"""Lower bounds on the geometric measure of quantum discord for m x n states."""
from .bloch import BlochRep, CMatrix, GeneratorBasis, build_c_matrix, build_generator_basis, decompose, reconstruct
from .bounds import (
    BoundsReport,
    GramMatrix,
    IsometryConstruction,
    build_optimal_isometry,
    compute_bounds,
    gram_matrix,
    luo_fu_bound,
    state_bounds,
    tight_bound,
    verify_closed_form_maximum,
    verify_interlacing,
)
from .errors import ConvergenceError, StateFileError, ValidationError
from .oracle import (
    MeasurementBasis,
    OracleResult,
    apply_measurement,
    dakic_two_qubit,
    distance_after_measurement,
    make_classical_quantum,
    minimize_qubit_measurement,
    sample_measurement_upper_bound,
)
from .states import (
    DensityMatrix,
    bell_state,
    eq52_state,
    eq53_state,
    product_state,
    random_state,
    read_state,
    werner_qubit,
    write_state,
)

__version__ = "0.1.0"
