"""
Bound ledger: every inequality on the PGM evaluated against measured values

Fidelity sums run over ordered pairs (i != j, both directions counted).
"""
import math

import numpy as np

from src.bounds.reports import (
    EQUAL, LOWER, UPPER, SLACK_TOL,
    BoundReport, ChainLink, ChainReport, EpsilonReport
)
from src.errors import DimensionMismatchError, ValidationError
from src.linalg import SUPPORT_CUTOFF, psd_sqrt, schatten_norms, trace_norm
from src.pgm import build_gram, confusion_from_gram, gram_spectral, worst_case_error
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

CHAIN_TOL = 1e-8


def _off_diagonal(matrix):
    n = matrix.shape[0]
    return matrix[~np.eye(n, dtype=bool)]


def _confusion(ensemble, gram=None, confusion=None):
    if confusion is not None:
        return confusion
    return confusion_from_gram(build_gram(ensemble) if gram is None else gram)


def measure_epsilon(ensemble):
    """
    Fidelity and overlap gaps of an ensemble

    Args:
        ensemble: Ensemble

    Returns:
        EpsilonReport
    """
    max_fidelity = float(np.max(_off_diagonal(ensemble.fidelity_matrix())))
    max_overlap = float(np.max(_off_diagonal(ensemble.overlap_matrix())))
    duplicates = ensemble.has_duplicates()
    if duplicates:
        logger.warning("Ensemble contains duplicate states: epsilon = 0")
    return EpsilonReport(max_fidelity, max_overlap, duplicates)


def fidelity_sum_bound(ensemble, confusion=None, tol=SLACK_TOL):
    """
    P_E(S) <= sum_{i!=j} F(rho_i, rho_j)

    Args:
        ensemble: Ensemble
        confusion: Precomputed ConfusionMatrix (optional)

    Returns:
        BoundReport
    """
    fidelities = ensemble.fidelity_matrix()
    bound = float(np.sum(_off_diagonal(fidelities)))
    measured = worst_case_error(_confusion(ensemble, confusion=confusion))
    report = BoundReport('fidelity_sum', bound, measured, UPPER, probability=True, tol=tol)
    if report.vacuous:
        logger.debug(f"Fidelity-sum bound {bound:.4g} is vacuous")
    return report


def fidelity_corollary(ensemble, confusion=None, tol=SLACK_TOL):
    """
    If every F(rho_i, rho_j) <= 1/(3 n^2) then P_E(S) <= 1/3

    When the premise fails the report is informational only.

    Returns:
        BoundReport with a premise note
    """
    n = ensemble.n
    threshold = 1.0 / (3 * n * n)
    max_fidelity = float(np.max(_off_diagonal(ensemble.fidelity_matrix())))
    measured = worst_case_error(_confusion(ensemble, confusion=confusion))
    premise = max_fidelity <= threshold
    report = BoundReport('fidelity_corollary', 1.0 / 3.0, measured, UPPER, probability=True, tol=tol,
                         note=f"premise max F = {max_fidelity:.6g} <= {threshold:.6g}: {premise}")
    if not premise:
        report.holds = True
        report.vacuous = True
    report.premise_holds = premise
    return report


def purity_sandwich(ensemble, gram=None, confusion=None, tol=SLACK_TOL):
    """
    ||G||^{-1} tr(rho_i^2) <= tr(mu_i rho_i) <= ||G^{-1}|| tr(rho_i^2) for every i

    The upper report is vacuous when G is singular.

    Args:
        ensemble: Ensemble
        gram: Precomputed GramMatrix (optional)
        confusion: Precomputed ConfusionMatrix (optional)

    Returns:
        List of 2n BoundReport (lower, upper per state)
    """
    gram = build_gram(ensemble) if gram is None else gram
    confusion = _confusion(ensemble, gram, confusion)
    spectrum = gram_spectral(gram)
    reports = []
    for i, state in enumerate(ensemble):
        purity = state.purity
        success = float(confusion.entries[i, i])
        reports.append(BoundReport(f"purity_sandwich_lower[{i}]", purity / spectrum.op_norm,
                                   success, LOWER, tol=tol))
        upper = spectrum.inv_norm * purity if math.isfinite(spectrum.inv_norm) else float('inf')
        reports.append(BoundReport(f"purity_sandwich_upper[{i}]", upper, success, UPPER,
                                   probability=True, tol=tol))
    return reports


def single_copy_success(ensemble, gram=None, confusion=None, tol=SLACK_TOL):
    """
    Worst-case single-copy PGM success is at least 1/||G|| for pure ensembles

    Returns:
        BoundReport comparing min_i C[i][i] to 1/||G||
    """
    gram = build_gram(ensemble) if gram is None else gram
    gram.require_pure('single_copy_success')
    confusion = _confusion(ensemble, gram, confusion)
    spectrum = gram_spectral(gram)
    measured = float(np.min(np.diag(confusion.entries)))
    return BoundReport('single_copy_success', 1.0 / spectrum.op_norm, measured, LOWER, tol=tol)


def gram_norm_upper(gram, tol=SLACK_TOL):
    """
    ||G|| <= 1 + (n - 1) max_{i!=j} |G_ij| for a pure ensemble

    Args:
        gram: GramMatrix with one row per state

    Raises:
        UnsupportedEnsembleError: For mixed ensembles

    Returns:
        BoundReport
    """
    gram.require_pure('gram_norm_upper')
    n = gram.n
    max_offdiag = float(np.max(np.abs(_off_diagonal(gram.entries))))
    bound = 1.0 + (n - 1) * max_offdiag
    return BoundReport('gram_norm_upper', bound, gram_spectral(gram).op_norm, UPPER, tol=tol)


def sqrt_perturbation_check(a, b, cutoff=SUPPORT_CUTOFF, tol=SLACK_TOL):
    """
    ||sqrt(A) - sqrt(B)||_F <= sqrt(||A - B||_1) for PSD A, B

    Frobenius instance of ||sqrt(A) - sqrt(B)|| <= ||sqrt(|A - B|)||, using
    ||sqrt(|D|)||_F^2 = ||D||_1.

    Args:
        a: PSD matrix
        b: PSD matrix of equal dimension

    Raises:
        DimensionMismatchError: If shapes differ
        NotPSDError: If either matrix is not PSD

    Returns:
        BoundReport
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Matrices have shapes {a.shape} and {b.shape}")
    root_a = psd_sqrt(a, cutoff)
    root_b = psd_sqrt(b, cutoff)
    measured = float(np.linalg.norm(root_a - root_b))
    bound = math.sqrt(trace_norm(a - b))
    return BoundReport('sqrt_perturbation', bound, measured, UPPER, tol=tol)


def fidelity_sum_chain(ensemble, gram=None, confusion=None, tol=CHAIN_TOL):
    """
    Evaluate every step of the fidelity-sum argument

    With Lambda the block diagonal of G and Delta = G - Lambda:
        P_E <= max_i sum_{j!=i} ||sqrt(G)^(ij)||_F^2
            <= sum_{i!=j} ||sqrt(G)^(ij)||_F^2
            <= ||sqrt(G) - sqrt(Lambda)||_F^2
            <= ||Delta||_1
            <= sum_{i!=j} ||G^(ij)||_1
             = sum_{i!=j} F(rho_i, rho_j)

    Args:
        ensemble: Ensemble
        gram: Precomputed GramMatrix (optional)
        confusion: Precomputed ConfusionMatrix (optional)
        tol: Per-link tolerance

    Returns:
        ChainReport
    """
    gram = build_gram(ensemble) if gram is None else gram
    confusion = _confusion(ensemble, gram, confusion)
    n = gram.n
    root = gram.sqrt()

    block_sq = np.empty((n, n))
    block_trace = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            block_sq[i, j] = float(np.sum(np.abs(gram.block(i, j, root)) ** 2))
            block_trace[i, j] = schatten_norms(gram.block(i, j)).trace_norm

    off = ~np.eye(n, dtype=bool)
    lam = gram.block_diagonal()
    delta = gram.entries - lam

    values = {
        'worst_case_error': worst_case_error(confusion),
        'max_row_offdiag_sqrt_blocks': float(np.max(np.where(off, block_sq, 0.0).sum(axis=1))),
        'sum_offdiag_sqrt_blocks': float(np.sum(block_sq[off])),
        'sqrt_gram_minus_sqrt_lambda': float(np.linalg.norm(root - psd_sqrt(lam, gram.cutoff)) ** 2),
        'delta_trace_norm': trace_norm(delta),
        'sum_offdiag_block_trace_norms': float(np.sum(block_trace[off])),
        'fidelity_sum': float(np.sum(_off_diagonal(ensemble.fidelity_matrix()))),
    }

    names = list(values)
    links = []
    for left, right in zip(names[:-2], names[1:-1]):
        links.append(ChainLink(left, right, values[left], values[right], UPPER, tol))
    links.append(ChainLink(names[-2], names[-1], values[names[-2]], values[names[-1]], EQUAL, tol))

    report = ChainReport(values, links)
    for link in report.failed_links():
        logger.warning(f"Chain link failed: {link.to_dict()['link']} ({link.left:.6g} vs {link.right:.6g})")
    return report


def helstrom_comparison(ensemble, confusion=None, tol=SLACK_TOL):
    """
    Average PGM success against the equal-prior Helstrom optimum 1/2 + ||rho_0 - rho_1||_1 / 4

    The two coincide for two pure states.

    Raises:
        ValidationError: Unless the ensemble has exactly two states

    Returns:
        BoundReport
    """
    if ensemble.n != 2:
        raise ValidationError(f"Helstrom comparison needs exactly 2 states, got {ensemble.n}")
    helstrom = 0.5 + 0.25 * trace_norm(ensemble[0].matrix - ensemble[1].matrix)
    measured = _confusion(ensemble, confusion=confusion).average_success
    return BoundReport('helstrom_optimum', helstrom, measured, UPPER, tol=tol)


def equal_overlap_diagonal(n, c):
    """
    Exact (sqrt(G))_ii for G = (1 - c) I + c J

    Returns:
        (sqrt(1 + c(n - 1)) + (n - 1) sqrt(1 - c)) / n
    """
    return (math.sqrt(1.0 + c * (n - 1)) + (n - 1) * math.sqrt(1.0 - c)) / n
