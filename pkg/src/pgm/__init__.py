"""
Gram matrix and pretty good measurement machinery
"""

from .gram import (
    GramMatrix,
    GramSpectrum,
    gram_from_eigenpairs,
    build_gram,
    build_p_matrix,
    gram_spectral,
)
from .measurement import (
    METHODS,
    Povm,
    ConfusionMatrix,
    build_pgm,
    confusion_matrix,
    confusion_from_gram,
    worst_case_error,
)

__all__ = [
    'GramMatrix',
    'GramSpectrum',
    'gram_from_eigenpairs',
    'build_gram',
    'build_p_matrix',
    'gram_spectral',
    'METHODS',
    'Povm',
    'ConfusionMatrix',
    'build_pgm',
    'confusion_matrix',
    'confusion_from_gram',
    'worst_case_error',
]
