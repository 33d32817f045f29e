"""
Helpers shared by the command implementations
"""
from src.bounds import measure_epsilon
from src.formats import load_ensemble
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def resolve_cutoff(config, cutoff=None):
    """--cutoff when given, else numerics.support_cutoff"""
    return float(cutoff) if cutoff is not None else config['numerics']['support_cutoff']


def load_input(config, input_path, cutoff=None):
    """
    Load an ensemble file with the configured tolerances

    Args:
        config: Configuration dictionary
        input_path: Ensemble file path
        cutoff: Support cutoff override

    Returns:
        Ensemble
    """
    return load_ensemble(input_path, tol=config['numerics']['file_tol'],
                         cutoff=resolve_cutoff(config, cutoff))


def ensemble_parameters(ensemble, input_path=None, epsilon_report=None):
    """
    Parameters every ensemble-based report carries

    Returns:
        Tuple (parameters dict, EpsilonReport)
    """
    epsilon_report = epsilon_report or measure_epsilon(ensemble)
    parameters = {
        'input': str(input_path) if input_path is not None else None,
        'n': ensemble.n,
        'd': ensemble.dim,
        'pure': ensemble.is_pure,
        'epsilon_fidelity': epsilon_report.epsilon_fidelity,
        'epsilon_overlap': epsilon_report.epsilon_overlap,
        'max_fidelity': epsilon_report.max_fidelity,
        'max_overlap': epsilon_report.max_overlap,
        'duplicates': epsilon_report.duplicates,
    }
    return parameters, epsilon_report


def bound_failures(reports):
    """
    Failure entries for every violated, non-vacuous bound report

    Args:
        reports: Iterable of BoundReport

    Returns:
        List of {'kind', 'message'} dictionaries
    """
    failures = []
    for report in reports:
        if not report.holds:
            failures.append({
                'kind': 'bound-violation',
                'message': (f"{report.name}: measured {report.measured_value!r} vs bound "
                            f"{report.bound_value!r} ({report.direction}), slack {report.slack:.3g}"),
            })
            logger.warning(f"Bound violated: {report}")
    return failures


def chain_failures(chain):
    """Failure entries for every failed link of a ChainReport"""
    failures = []
    for link in chain.failed_links():
        entry = link.to_dict()
        failures.append({
            'kind': 'chain-violation',
            'message': f"{entry['link']}: {link.left!r} vs {link.right!r}",
        })
    return failures
