"""
Quantum states, ensembles and ensemble generators
"""

from .density import (
    STATE_TOL,
    TENSOR_SIZE_LIMIT,
    DensityMatrix,
    Ensemble,
    validate_density,
    fidelity,
    tensor_power,
)
from .generators import (
    GENERATOR_KINDS,
    gen_haar_pure,
    gen_sign_states,
    gen_equal_overlap,
    gen_ginibre_mixed,
    equal_overlap_gram,
    generate,
)

__all__ = [
    'STATE_TOL',
    'TENSOR_SIZE_LIMIT',
    'DensityMatrix',
    'Ensemble',
    'validate_density',
    'fidelity',
    'tensor_power',
    'GENERATOR_KINDS',
    'gen_haar_pure',
    'gen_sign_states',
    'gen_equal_overlap',
    'gen_ginibre_mixed',
    'equal_overlap_gram',
    'generate',
]
