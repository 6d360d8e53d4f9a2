"""Mutually unbiased bases in prime-power dimensions, the expectation-value
expansion of operators over them, intermediate measurement operators, and a
sub-ensemble tomography simulator."""
from ._backend import BACKEND
from .breidbart import (
    BreidbartSolution,
    build_intermediate,
    conjecture_scan,
    guess_probabilities,
    physicality_verdict,
    solve,
    verify_properties,
    x_value,
    y_value,
)
from .errors import *  # noqa: F401,F403
from .expansion import (
    CoefficientTable,
    GeneralCoefficientTable,
    expand,
    expand_general,
    inflate,
    minimal_parameters,
    reconstruct,
    reconstruct_general,
)
from .field import (
    FieldElement,
    GaloisField,
    PrimePower,
    alpha_tensor,
    digit_sum_table,
    field_mul,
    index_to_digits,
    parse_prime_power,
    phase_exponent,
    phase_sum,
)
from .linalg import frobenius_inner, hermitian_decompose, hermitian_eigen, trace
from .mub import MubSet, build_mub_set, build_qubit_mubs, overlap_sum, verify_complementarity
from .tomography import MeasurementRecord, estimate_state, simulate_measurements

__version__ = "0.1.0"
