"""
Multicopy command implementation
"""
from src.bounds import BoundReport, joint_error_bound, joint_pgm_copies, powered_gram_norm_bound
from src.bounds.reports import UPPER
from src.commands.common import bound_failures, ensemble_parameters, load_input
from src.errors import DegenerateEnsembleError
from src.formats import build_report
from src.protocol import multicopy_pgm
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def run_multicopy(config, input_path, copies=None, delta=None, cutoff=None):
    """
    Exact worst-case error of the joint PGM on k copies

    Without explicit copy counts, k is the joint PGM budget for the
    measured fidelity gap and delta.

    Args:
        config: Configuration dictionary
        input_path: Ensemble file path
        copies: Iterable of copy counts
        delta: Target failure probability (used when copies is empty)
        cutoff: Support cutoff override

    Raises:
        DegenerateEnsembleError: If copies must be derived and epsilon is 0
        SizeLimitError: If a mixed ensemble's tensor power is too large

    Returns:
        Report dictionary
    """
    numerics = config['numerics']
    ensemble = load_input(config, input_path, cutoff)
    parameters, epsilon_report = ensemble_parameters(ensemble, input_path)
    parameters['delta'] = delta

    copies = sorted(set(int(k) for k in (copies or [])))
    if not copies:
        if epsilon_report.duplicates:
            raise DegenerateEnsembleError("epsilon = 0 (duplicate states): pass explicit --copies")
        copies = [joint_pgm_copies(ensemble.n, epsilon_report.epsilon_fidelity, delta).k]
    parameters['copies'] = copies

    entries = []
    reports = []
    for k in copies:
        result = multicopy_pgm(ensemble, k, size_limit=numerics['tensor_size_limit'])
        tight, loose = joint_error_bound(ensemble.n, epsilon_report.max_fidelity, k)
        union = BoundReport(f"joint_union_bound[k={k}]", tight, result.worst_case_error, UPPER,
                            probability=True, tol=numerics['slack_tol'])
        reports.append(union)
        entry = {
            'k': k,
            'method': result.method,
            'worst_case_error': result.worst_case_error,
            'gram_norm': result.gram_norm,
            'union_bound': union.to_dict(),
            'exponential_bound': loose,
        }
        if ensemble.is_pure:
            # for pure states the fidelity is |<psi_i|psi_j>|
            norm_bound = BoundReport(
                f"powered_gram_norm[k={k}]",
                powered_gram_norm_bound(epsilon_report.max_fidelity, ensemble.n, k),
                result.gram_norm, UPPER, tol=numerics['slack_tol'])
            reports.append(norm_bound)
            entry['gram_norm_bound'] = norm_bound.to_dict()
        entries.append(entry)
        logger.info(f"✓ k={k}: P_E = {result.worst_case_error:.6g} ({result.method})")

    return build_report('multicopy', parameters, {'multicopy': entries},
                        failures=bound_failures(reports))
