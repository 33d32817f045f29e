"""
Pretty good measurement and its confusion matrix

mu_i = Sigma^{-1/2} rho_i Sigma^{-1/2} with Sigma = sum_i rho_i, the inverse
taken on the support of Sigma. No prior weights enter.
"""
import numpy as np

from src.errors import ConfusionMatrixError, ValidationError
from src.linalg import support_inv_sqrt
from src.pgm.gram import build_gram
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

ENTRY_TOL = 1e-10
COLUMN_TOL = 1e-9
METHODS = ('direct', 'gram')


class Povm:
    """PGM elements and the projector onto the span of the ensemble"""

    def __init__(self, elements, support_projector):
        self.elements = tuple(elements)
        self.support_projector = support_projector
        for m in self.elements:
            m.setflags(write=False)
        support_projector.setflags(write=False)

    def __len__(self):
        return len(self.elements)

    def completeness_error(self):
        """||sum_i mu_i - Pi_supp||_F"""
        total = np.sum(self.elements, axis=0)
        return float(np.linalg.norm(total - self.support_projector))

    def min_eigenvalue(self):
        """Smallest eigenvalue over all elements"""
        return float(min(np.linalg.eigvalsh(m)[0] for m in self.elements))


def build_pgm(ensemble):
    """
    Pretty good measurement of an ensemble

    Args:
        ensemble: Ensemble

    Returns:
        Povm whose elements sum to the projector onto the support of Sigma
    """
    sigma = np.sum([state.matrix for state in ensemble], axis=0)
    inv_sqrt, projector = support_inv_sqrt(sigma, ensemble[0].cutoff)
    elements = []
    for state in ensemble:
        mu = inv_sqrt @ state.matrix @ inv_sqrt
        elements.append((mu + mu.conj().T) / 2)
    povm = Povm(elements, projector)
    logger.debug(f"PGM completeness error {povm.completeness_error():.3e}")
    return povm


class ConfusionMatrix:
    """
    C[i][j] = tr(mu_i rho_j), the probability of reporting i on input rho_j

    Construction checks that entries lie in [0, 1] and columns sum to 1.
    """

    def __init__(self, entries, method=None):
        entries = np.array(entries, dtype=float)
        problems = confusion_problems(entries)
        if problems:
            raise ConfusionMatrixError("Invalid confusion matrix:\n" + "\n".join(f"  - {p}" for p in problems))
        entries.setflags(write=False)
        self.entries = entries
        self.method = method

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def success_probabilities(self):
        return np.diag(self.entries).copy()

    @property
    def average_success(self):
        return float(np.mean(np.diag(self.entries)))

    def column(self, j):
        return self.entries[:, j]

    def to_list(self):
        return [[float(x) for x in row] for row in self.entries]


def confusion_problems(entries, entry_tol=ENTRY_TOL, column_tol=COLUMN_TOL):
    """
    List the ways a matrix fails to be a confusion matrix

    Returns:
        List of problem descriptions (empty when valid)
    """
    problems = []
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        return [f"expected a square matrix, got shape {entries.shape}"]
    if np.min(entries) < -entry_tol:
        problems.append(f"entry {np.min(entries)!r} below 0")
    if np.max(entries) > 1 + entry_tol:
        problems.append(f"entry {np.max(entries)!r} above 1")
    deviation = np.max(np.abs(entries.sum(axis=0) - 1.0))
    if deviation > column_tol:
        problems.append(f"column sums deviate from 1 by {deviation:.3e}")
    return problems


def confusion_from_gram(gram):
    """
    C[i][j] = ||sqrt(G)^(ij)||_F^2

    Args:
        gram: GramMatrix

    Returns:
        ConfusionMatrix
    """
    root = gram.sqrt()
    n = gram.n
    entries = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            entries[i, j] = float(np.sum(np.abs(gram.block(i, j, root)) ** 2))
    return ConfusionMatrix(entries, method='gram')


def _confusion_direct(ensemble, povm=None):
    povm = build_pgm(ensemble) if povm is None else povm
    n = ensemble.n
    entries = np.empty((n, n))
    for i, mu in enumerate(povm.elements):
        for j, state in enumerate(ensemble):
            # tr(mu rho) for Hermitian mu, rho
            entries[i, j] = float(np.vdot(mu, state.matrix).real)
    return ConfusionMatrix(entries, method='direct')


def confusion_matrix(ensemble, method='direct', gram=None, povm=None):
    """
    Confusion matrix of the PGM

    Args:
        ensemble: Ensemble
        method: 'direct' (tr mu_i rho_j from build_pgm) or 'gram'
            (block norms of sqrt(G) from build_gram)
        gram: Precomputed GramMatrix (optional, gram method)
        povm: Precomputed Povm (optional, direct method)

    Returns:
        ConfusionMatrix
    """
    if method == 'direct':
        return _confusion_direct(ensemble, povm)
    if method == 'gram':
        return confusion_from_gram(build_gram(ensemble) if gram is None else gram)
    raise ValidationError(f"Unknown confusion method '{method}', expected one of {METHODS}")


def worst_case_error(confusion):
    """
    P_E = max_i (1 - C[i][i])

    Args:
        confusion: ConfusionMatrix

    Returns:
        Worst-case error probability in [0, 1]
    """
    value = float(np.max(1.0 - np.diag(confusion.entries)))
    return min(max(value, 0.0), 1.0)
