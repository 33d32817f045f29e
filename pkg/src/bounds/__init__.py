"""
Bound ledger and copy-count formulas
"""

from .reports import (
    SLACK_TOL,
    BoundReport,
    CopyBudget,
    EpsilonReport,
    ChainLink,
    ChainReport,
)
from .copies import (
    exact_ceil,
    joint_pgm_copies,
    two_stage_copies,
    powered_gram_norm_bound,
    copies_to_flatten_gram,
    joint_error_bound,
)
from .ledger import (
    CHAIN_TOL,
    measure_epsilon,
    fidelity_sum_bound,
    fidelity_corollary,
    purity_sandwich,
    single_copy_success,
    gram_norm_upper,
    sqrt_perturbation_check,
    fidelity_sum_chain,
    helstrom_comparison,
    equal_overlap_diagonal,
)

__all__ = [
    'SLACK_TOL',
    'BoundReport',
    'CopyBudget',
    'EpsilonReport',
    'ChainLink',
    'ChainReport',
    'exact_ceil',
    'joint_pgm_copies',
    'two_stage_copies',
    'powered_gram_norm_bound',
    'copies_to_flatten_gram',
    'joint_error_bound',
    'CHAIN_TOL',
    'measure_epsilon',
    'fidelity_sum_bound',
    'fidelity_corollary',
    'purity_sandwich',
    'single_copy_success',
    'gram_norm_upper',
    'sqrt_perturbation_check',
    'fidelity_sum_chain',
    'helstrom_comparison',
    'equal_overlap_diagonal',
]
