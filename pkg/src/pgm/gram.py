"""
Gram matrix of weighted eigenvectors

For rho_i = sum_k lambda_ik |psi_ik><psi_ik| the Gram matrix has entries
G_{ik,jl} = sqrt(lambda_ik lambda_jl) <psi_ik|psi_jl>, grouped into one block
of rows per state.
"""
import threading
from collections import namedtuple

import numpy as np
import scipy.linalg as la

from src.errors import UnsupportedEnsembleError, ValidationError
from src.linalg import SUPPORT_CUTOFF, psd_sqrt, support_inv_sqrt
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

GramSpectrum = namedtuple('GramSpectrum', ['op_norm', 'inv_norm', 'min_eig'])


class GramMatrix:
    """
    R x R Hermitian PSD Gram matrix with a per-state block index

    The PSD square root is computed on first use and cached; concurrent
    callers share a single computation.
    """

    def __init__(self, entries, block_index, cutoff=SUPPORT_CUTOFF):
        entries = np.array(entries, dtype=complex)
        entries = (entries + entries.conj().T) / 2
        entries.setflags(write=False)
        self.entries = entries
        self.block_index = tuple((int(a), int(b)) for a, b in block_index)
        self.cutoff = cutoff
        self._sqrt = None
        self._eigenvalues = None
        self._lock = threading.Lock()

        if self.block_index and self.block_index[-1][1] != entries.shape[0]:
            raise ValidationError(
                f"Block index covers {self.block_index[-1][1]} rows but Gram matrix has {entries.shape[0]}"
            )

    @classmethod
    def from_entries(cls, entries, cutoff=SUPPORT_CUTOFF):
        """Gram matrix of a pure ensemble: one row per state"""
        size = np.asarray(entries).shape[0]
        return cls(entries, [(i, i + 1) for i in range(size)], cutoff=cutoff)

    @property
    def size(self):
        return self.entries.shape[0]

    @property
    def n(self):
        return len(self.block_index)

    @property
    def is_pure(self):
        return all(b - a == 1 for a, b in self.block_index)

    def rows(self, i):
        a, b = self.block_index[i]
        return slice(a, b)

    def block(self, i, j, matrix=None):
        """(i, j) block of the Gram matrix, or of another R x R matrix"""
        m = self.entries if matrix is None else matrix
        return m[self.rows(i), self.rows(j)]

    def block_diagonal(self):
        """Lambda: the Gram matrix with every off-diagonal block zeroed"""
        lam = np.zeros_like(self.entries)
        for i in range(self.n):
            lam[self.rows(i), self.rows(i)] = self.block(i, i)
        return lam

    def sqrt(self):
        """Cached PSD square root"""
        if self._sqrt is None:
            with self._lock:
                if self._sqrt is None:
                    root = psd_sqrt(self.entries, self.cutoff)
                    root.setflags(write=False)
                    self._sqrt = root
                    logger.debug(f"Computed sqrt(G) for R={self.size}")
        return self._sqrt

    def eigenvalues(self):
        if self._eigenvalues is None:
            values = la.eigvalsh(self.entries)
            values.setflags(write=False)
            self._eigenvalues = values
        return self._eigenvalues

    def require_pure(self, operation):
        if not self.is_pure:
            raise UnsupportedEnsembleError(f"{operation} needs a pure ensemble (one Gram row per state)")

    def __repr__(self):
        return f"GramMatrix(R={self.size}, n={self.n})"


def _weighted_matrix(pairs):
    columns = []
    block_index = []
    start = 0
    for weights, vectors in pairs:
        weights = np.asarray(weights, dtype=float)
        vectors = np.asarray(vectors, dtype=complex)
        columns.append(vectors * np.sqrt(weights))
        block_index.append((start, start + weights.size))
        start += weights.size
    return np.hstack(columns), block_index


def gram_from_eigenpairs(pairs, cutoff=SUPPORT_CUTOFF):
    """
    Gram matrix from explicit eigenpairs

    Args:
        pairs: Sequence of (eigenvalues, d x r eigenvector columns), one per state
        cutoff: Relative support cutoff carried by the result

    Returns:
        GramMatrix
    """
    w, block_index = _weighted_matrix(pairs)
    return GramMatrix(w.conj().T @ w, block_index, cutoff=cutoff)


def build_gram(ensemble):
    """
    Gram matrix of the weighted eigenvectors of an ensemble

    Eigenpairs at or below cutoff * lambda_max of each state are dropped.

    Args:
        ensemble: Ensemble

    Returns:
        GramMatrix (R = total rank)
    """
    cutoff = ensemble[0].cutoff
    gram = gram_from_eigenpairs([state.eigenpairs() for state in ensemble], cutoff)
    logger.debug(f"Built Gram matrix R={gram.size} for n={ensemble.n}")
    return gram


def build_p_matrix(ensemble):
    """
    P_{ik,jl} = sqrt(lambda_jl) <mu_ik|psi_jl> with |mu_ik> = Sigma^{-1/2} sqrt(lambda_ik) |psi_ik>

    Equivalently P = W^dagger Sigma^{-1/2} W for the weighted eigenvector
    matrix W; P @ P equals the Gram matrix.

    Args:
        ensemble: Ensemble

    Returns:
        R x R ndarray
    """
    pairs = [state.eigenpairs() for state in ensemble]
    w, _ = _weighted_matrix(pairs)
    sigma = w @ w.conj().T
    inv_sqrt, _ = support_inv_sqrt(sigma, ensemble[0].cutoff)
    return w.conj().T @ inv_sqrt @ w


def gram_spectral(gram):
    """
    Operator norm, inverse norm and smallest eigenvalue of G

    Args:
        gram: GramMatrix

    Returns:
        GramSpectrum(op_norm, inv_norm, min_eig); inv_norm is inf when
        lambda_min <= cutoff * lambda_max
    """
    values = gram.eigenvalues()
    lam_max = float(values[-1])
    lam_min = float(values[0])
    if lam_min > gram.cutoff * lam_max:
        inv_norm = 1.0 / lam_min
    else:
        inv_norm = float('inf')
    return GramSpectrum(lam_max, inv_norm, lam_min)
