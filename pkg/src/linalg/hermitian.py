"""
Dense Hermitian linear algebra: eigendecomposition, functions on the
support, and Schatten norms
"""
from collections import namedtuple

import numpy as np
import scipy.linalg as la

from src.errors import NotHermitianError, NotPSDError, ZeroSupportError, ValidationError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

SUPPORT_CUTOFF = 1e-12
TOL_HERM = 1e-10
TOL_ORTH = 1e-10
TOL_RECON = 1e-9

EigSystem = namedtuple('EigSystem', ['eigenvalues', 'eigenvectors'])
SchattenNorms = namedtuple('SchattenNorms', ['trace_norm', 'frobenius_norm', 'operator_norm'])


def _frozen(array):
    array.setflags(write=False)
    return array


def as_square(matrix):
    """
    Coerce input to a complex square matrix

    Args:
        matrix: Array-like d x d

    Raises:
        ValidationError: If the input is not a non-empty square matrix

    Returns:
        Complex ndarray
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValidationError(f"Expected a non-empty square matrix, got shape {m.shape}")
    return m


def hermiticity_error(matrix):
    """Largest entrywise deviation |H_ij - conj(H_ji)|"""
    m = as_square(matrix)
    return float(np.max(np.abs(m - m.conj().T)))


def check_hermitian(matrix, tol=TOL_HERM):
    """
    Validate Hermiticity and return the exactly symmetrized matrix

    The tolerance is relative to max(1, ||H||_F).

    Args:
        matrix: Array-like d x d
        tol: Hermiticity tolerance

    Raises:
        NotHermitianError: If H deviates from H^dagger beyond tolerance

    Returns:
        Hermitian complex ndarray
    """
    m = as_square(matrix)
    scale = max(1.0, float(np.linalg.norm(m)))
    deviation = hermiticity_error(m)
    if deviation > tol * scale:
        raise NotHermitianError(
            f"Matrix is not Hermitian: max |H - H^dagger| = {deviation:.3e} exceeds {tol * scale:.3e}"
        )
    return (m + m.conj().T) / 2


def hermitian_eig(matrix, tol=TOL_HERM):
    """
    Eigendecomposition of a Hermitian matrix

    Args:
        matrix: Hermitian array-like d x d
        tol: Hermiticity tolerance

    Raises:
        NotHermitianError: If the input is not Hermitian

    Returns:
        EigSystem with ascending real eigenvalues and orthonormal eigenvector columns
    """
    h = check_hermitian(matrix, tol)
    eigenvalues, eigenvectors = la.eigh(h)
    return EigSystem(_frozen(np.asarray(eigenvalues, dtype=float)),
                     _frozen(np.asarray(eigenvectors, dtype=complex)))


def reconstruct(eig):
    """V diag(lambda) V^dagger"""
    v = eig.eigenvectors
    return (v * eig.eigenvalues) @ v.conj().T


def orthonormality_error(eig):
    """||V^dagger V - I||_F for the eigenvector columns"""
    v = eig.eigenvectors
    return float(np.linalg.norm(v.conj().T @ v - np.eye(v.shape[1])))


def support_mask(eigenvalues, cutoff=SUPPORT_CUTOFF):
    """
    Boolean mask of eigenvalues above cutoff * lambda_max

    Args:
        eigenvalues: Real eigenvalues
        cutoff: Relative support cutoff

    Returns:
        Boolean ndarray (all False when lambda_max <= 0)
    """
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    if eigenvalues.size == 0:
        return np.zeros(0, dtype=bool)
    lam_max = float(np.max(eigenvalues))
    if lam_max <= 0:
        return np.zeros(eigenvalues.shape, dtype=bool)
    return eigenvalues > cutoff * lam_max


def check_psd_spectrum(eigenvalues, cutoff=SUPPORT_CUTOFF):
    """
    Ensure no eigenvalue falls below -cutoff * lambda_max

    Raises:
        NotPSDError: If an eigenvalue is more negative than the slack allows
    """
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    lam_max = max(float(np.max(np.abs(eigenvalues))), 0.0)
    lam_min = float(np.min(eigenvalues))
    if lam_min < -cutoff * lam_max:
        raise NotPSDError(
            f"Matrix is not positive semidefinite: eigenvalue {lam_min:.3e} "
            f"below slack {-cutoff * lam_max:.3e}"
        )


def apply_on_support(eig, func, cutoff=SUPPORT_CUTOFF):
    """
    Apply a scalar function to the eigenvalues on the support, zero elsewhere

    Args:
        eig: EigSystem of a PSD matrix
        func: Vectorized scalar function
        cutoff: Relative support cutoff

    Returns:
        Hermitian ndarray V f(lambda) V^dagger
    """
    mask = support_mask(eig.eigenvalues, cutoff)
    v = eig.eigenvectors[:, mask]
    values = func(eig.eigenvalues[mask])
    return (v * values) @ v.conj().T


def psd_sqrt(matrix, cutoff=SUPPORT_CUTOFF, tol=TOL_HERM):
    """
    PSD square root

    Eigenvalues in (-cutoff * lambda_max, cutoff * lambda_max] are treated
    as zero.

    Args:
        matrix: PSD Hermitian array-like
        cutoff: Relative support cutoff
        tol: Hermiticity tolerance

    Raises:
        NotHermitianError: If the input is not Hermitian
        NotPSDError: If an eigenvalue lies below -cutoff * lambda_max

    Returns:
        PSD Hermitian ndarray B with B @ B = A on the support
    """
    eig = hermitian_eig(matrix, tol)
    check_psd_spectrum(eig.eigenvalues, cutoff)
    return apply_on_support(eig, np.sqrt, cutoff)


def support_inv_sqrt(matrix, cutoff=SUPPORT_CUTOFF, tol=TOL_HERM):
    """
    Inverse square root taken on the support

    Args:
        matrix: PSD Hermitian array-like
        cutoff: Relative support cutoff
        tol: Hermiticity tolerance

    Raises:
        NotPSDError: If an eigenvalue lies below -cutoff * lambda_max
        ZeroSupportError: If the matrix is zero

    Returns:
        Tuple (A^{-1/2} on the support, projector onto the support)
    """
    eig = hermitian_eig(matrix, tol)
    if float(np.max(np.abs(eig.eigenvalues))) == 0.0:
        raise ZeroSupportError("Cannot invert a zero matrix on its support")
    check_psd_spectrum(eig.eigenvalues, cutoff)

    mask = support_mask(eig.eigenvalues, cutoff)
    v = eig.eigenvectors[:, mask]
    inv_sqrt = (v / np.sqrt(eig.eigenvalues[mask])) @ v.conj().T
    projector = v @ v.conj().T
    logger.debug(f"Support rank {int(mask.sum())} of {mask.size}")
    return inv_sqrt, projector


def schatten_norms(matrix):
    """
    Trace, Frobenius and operator norms from the singular values

    Args:
        matrix: Any rectangular complex array-like

    Returns:
        SchattenNorms(trace_norm, frobenius_norm, operator_norm)
    """
    m = np.atleast_2d(np.asarray(matrix, dtype=complex))
    if m.size == 0:
        return SchattenNorms(0.0, 0.0, 0.0)
    singular_values = la.svdvals(m)
    return SchattenNorms(
        float(np.sum(singular_values)),
        float(np.sqrt(np.sum(singular_values ** 2))),
        float(np.max(singular_values)),
    )


def trace_norm(matrix):
    return schatten_norms(matrix).trace_norm
