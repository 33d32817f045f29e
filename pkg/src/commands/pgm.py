"""
PGM command implementation
"""
import numpy as np

from src.commands.common import ensemble_parameters, load_input, resolve_cutoff
from src.formats import build_report
from src.pgm import (
    build_gram, build_pgm, confusion_from_gram, confusion_matrix,
    gram_spectral, worst_case_error
)
from src.pgm.measurement import COLUMN_TOL
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def run_pgm(config, input_path, cutoff=None):
    """
    Build the PGM of an ensemble file and report its confusion matrix

    Both the direct (tr mu_i rho_j) and the Gram (||sqrt(G)^(ij)||_F^2)
    confusion matrices are computed; disagreement beyond 1e-9 is a failure.

    Args:
        config: Configuration dictionary
        input_path: Ensemble file path
        cutoff: Support cutoff override

    Returns:
        Report dictionary
    """
    logger.info(f"Loading ensemble: {input_path}")
    ensemble = load_input(config, input_path, cutoff)
    parameters, _ = ensemble_parameters(ensemble, input_path)
    parameters['cutoff'] = resolve_cutoff(config, cutoff)

    gram = build_gram(ensemble)
    povm = build_pgm(ensemble)
    direct = confusion_matrix(ensemble, 'direct', povm=povm)
    via_gram = confusion_from_gram(gram)
    spectrum = gram_spectral(gram)
    mismatch = float(np.max(np.abs(direct.entries - via_gram.entries)))

    results = {
        'worst_case_error': worst_case_error(direct),
        'worst_case_error_gram': worst_case_error(via_gram),
        'average_success': direct.average_success,
        'diagonal': direct.success_probabilities,
        'gram_norm': spectrum.op_norm,
        'gram_inv_norm': spectrum.inv_norm,
        'gram_min_eigenvalue': spectrum.min_eig,
        'gram_size': gram.size,
        'povm_completeness_error': povm.completeness_error(),
        'povm_min_eigenvalue': povm.min_eigenvalue(),
        'method_max_difference': mismatch,
        'confusion_direct': direct.to_list(),
        'confusion_gram': via_gram.to_list(),
    }

    failures = []
    if mismatch > COLUMN_TOL:
        failures.append({
            'kind': 'method-mismatch',
            'message': f"direct and Gram confusion matrices differ by {mismatch:.3g}",
        })

    logger.info(f"✓ PGM built: P_E = {results['worst_case_error']:.6g}, ||G|| = {spectrum.op_norm:.6g}")
    return build_report('pgm', parameters, results, failures=failures)
