"""
Exact error of the PGM applied jointly to k copies

For pure states <psi_i^{(x)k}|psi_j^{(x)k}> = <psi_i|psi_j>^k, so the k-copy
Gram matrix is the entrywise k-th power of G and the cost is independent of
d^k. Mixed ensembles fall back to explicit tensor powers.
"""
from collections import namedtuple

import numpy as np

from src.errors import ValidationError
from src.pgm import GramMatrix, build_gram, confusion_from_gram, gram_spectral, worst_case_error
from src.states import TENSOR_SIZE_LIMIT, Ensemble, tensor_power
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

MulticopyResult = namedtuple('MulticopyResult', ['k', 'worst_case_error', 'gram_norm', 'method'])


def _check_k(k):
    if int(k) != k or k < 1:
        raise ValidationError(f"Copy count k must be a positive integer, got {k}")
    return int(k)


def multicopy_pgm_pure(gram, k):
    """
    Gram matrix and worst-case PGM error of the k-fold tensor powers

    Args:
        gram: GramMatrix of a pure ensemble
        k: Number of copies

    Raises:
        UnsupportedEnsembleError: For mixed ensembles

    Returns:
        Tuple (GramMatrix with entries G_ij^k, worst-case error)
    """
    gram.require_pure('multicopy_pgm_pure')
    k = _check_k(k)
    powered = gram if k == 1 else GramMatrix.from_entries(np.power(gram.entries, k), gram.cutoff)
    p_e = worst_case_error(confusion_from_gram(powered))
    logger.debug(f"k={k}: powered-Gram worst-case error {p_e:.6g}")
    return powered, p_e


def multicopy_pgm(ensemble, k, size_limit=TENSOR_SIZE_LIMIT):
    """
    Worst-case error of the k-copy joint PGM for any ensemble

    Args:
        ensemble: Ensemble
        k: Number of copies
        size_limit: Entry limit for explicit tensor powers (mixed ensembles)

    Raises:
        SizeLimitError: If a mixed ensemble's tensor power is too large

    Returns:
        MulticopyResult
    """
    k = _check_k(k)
    if ensemble.is_pure:
        powered, p_e = multicopy_pgm_pure(build_gram(ensemble), k)
        return MulticopyResult(k, p_e, gram_spectral(powered).op_norm, 'gram-power')

    powered_states = Ensemble([tensor_power(state, k, size_limit) for state in ensemble])
    gram = build_gram(powered_states)
    p_e = worst_case_error(confusion_from_gram(gram))
    return MulticopyResult(k, p_e, gram_spectral(gram).op_norm, 'tensor-power')
