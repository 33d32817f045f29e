"""
Hermitian linear algebra kernel
"""

from .hermitian import (
    SUPPORT_CUTOFF,
    TOL_HERM,
    TOL_ORTH,
    TOL_RECON,
    EigSystem,
    SchattenNorms,
    check_hermitian,
    hermitian_eig,
    reconstruct,
    orthonormality_error,
    support_mask,
    apply_on_support,
    psd_sqrt,
    support_inv_sqrt,
    schatten_norms,
    trace_norm,
)

__all__ = [
    'SUPPORT_CUTOFF',
    'TOL_HERM',
    'TOL_ORTH',
    'TOL_RECON',
    'EigSystem',
    'SchattenNorms',
    'check_hermitian',
    'hermitian_eig',
    'reconstruct',
    'orthonormality_error',
    'support_mask',
    'apply_on_support',
    'psd_sqrt',
    'support_inv_sqrt',
    'schatten_norms',
    'trace_norm',
]
