"""
Bounds command implementation
"""
from src.bounds import (
    fidelity_corollary, fidelity_sum_bound, fidelity_sum_chain, gram_norm_upper,
    helstrom_comparison, joint_error_bound, joint_pgm_copies, purity_sandwich,
    single_copy_success, two_stage_copies
)
from src.commands.common import bound_failures, chain_failures, ensemble_parameters, load_input
from src.errors import DegenerateEnsembleError
from src.formats import build_report
from src.pgm import build_gram, confusion_from_gram, gram_spectral
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def _copy_budgets(ensemble, epsilon_report, gram_norm, delta, diagnostics):
    if epsilon_report.duplicates:
        message = "epsilon = 0: the ensemble contains duplicate states; copy budgets omitted"
        logger.warning(message)
        diagnostics.append(message)
        return None

    budgets = {}
    try:
        joint = joint_pgm_copies(ensemble.n, epsilon_report.epsilon_fidelity, delta)
        budgets['joint_pgm'] = joint.to_dict()
        tight, loose = joint_error_bound(ensemble.n, epsilon_report.max_fidelity, joint.k)
        budgets['joint_pgm']['union_bound'] = tight
        budgets['joint_pgm']['exponential_bound'] = loose
        if ensemble.is_pure:
            budgets['two_stage'] = two_stage_copies(gram_norm, epsilon_report.epsilon_overlap, delta).to_dict()
        else:
            diagnostics.append("two-stage budget applies to pure ensembles only")
    except DegenerateEnsembleError as e:
        logger.warning(str(e))
        diagnostics.append(str(e))
        return None
    return budgets


def run_bounds(config, input_path, delta, cutoff=None):
    """
    Evaluate every bound on the PGM error for an ensemble file

    Args:
        config: Configuration dictionary
        input_path: Ensemble file path
        delta: Target failure probability for the copy budgets
        cutoff: Support cutoff override

    Returns:
        Report dictionary; failures list every violated bound or chain link
    """
    slack_tol = config['numerics']['slack_tol']
    ensemble = load_input(config, input_path, cutoff)
    parameters, epsilon_report = ensemble_parameters(ensemble, input_path)
    parameters['delta'] = delta

    gram = build_gram(ensemble)
    confusion = confusion_from_gram(gram)
    spectrum = gram_spectral(gram)
    diagnostics = []

    reports = [
        fidelity_sum_bound(ensemble, confusion=confusion, tol=slack_tol),
        fidelity_corollary(ensemble, confusion=confusion, tol=slack_tol),
    ]
    reports.extend(purity_sandwich(ensemble, gram=gram, confusion=confusion, tol=slack_tol))
    if ensemble.is_pure:
        reports.append(single_copy_success(ensemble, gram=gram, confusion=confusion, tol=slack_tol))
        reports.append(gram_norm_upper(gram, tol=slack_tol))
    else:
        diagnostics.append("gram_norm_upper and single_copy_success apply to pure ensembles only")
    if ensemble.n == 2:
        reports.append(helstrom_comparison(ensemble, confusion=confusion, tol=slack_tol))

    chain = fidelity_sum_chain(ensemble, gram=gram, confusion=confusion, tol=config['numerics']['chain_tol'])

    results = {
        'gram_norm': spectrum.op_norm,
        'gram_inv_norm': spectrum.inv_norm,
        'bounds': [report.to_dict() for report in reports],
        'chain': chain.to_dict(),
        'copy_budgets': _copy_budgets(ensemble, epsilon_report, spectrum.op_norm, delta, diagnostics),
    }

    failures = bound_failures(reports) + chain_failures(chain)
    if not failures:
        logger.info(f"✓ All {len(reports)} bounds and {len(chain.links)} chain links hold")
    return build_report('bounds', parameters, results, failures=failures, diagnostics=diagnostics)
