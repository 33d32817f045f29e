"""
Simulate command implementation
"""
from src.commands.common import ensemble_parameters, load_input
from src.formats import build_report
from src.protocol import estimate_failure
from src.utils.logger import setup_logger
from src.utils.validator import validate_simulation_params

logger = setup_logger(__name__)


def run_simulate(config, input_path, delta, trials, seed, epsilon=None, dedup=False,
                 workers=None, cutoff=None):
    """
    Monte Carlo estimate of the two-stage protocol's failure probability

    The worker count is not part of the report: the estimate is the same for
    any schedule.

    Args:
        config: Configuration dictionary
        input_path: Ensemble file path (pure states)
        delta: Target failure probability
        trials: Trials per true index
        seed: Master seed (required)
        epsilon: Overlap gap for the budget; None uses the measured value
        dedup: Test each distinct PGM outcome once
        workers: Thread pool size (defaults to simulation.workers)
        cutoff: Support cutoff override

    Raises:
        ValidationError: On invalid parameters
        UnsupportedEnsembleError: For mixed ensembles

    Returns:
        Report dictionary
    """
    sim = config['simulation']
    workers = sim['workers'] if workers is None else workers
    validate_simulation_params(trials, seed, workers, sim['min_trials'], delta, epsilon)

    ensemble = load_input(config, input_path, cutoff)
    parameters, _ = ensemble_parameters(ensemble, input_path)
    parameters.update({
        'delta': delta,
        'epsilon_requested': epsilon,
        'trials': trials,
        'seed': seed,
        'dedup': dedup,
    })

    report = estimate_failure(ensemble, delta, epsilon, trials, seed, dedup=dedup,
                              workers=workers, progress=sim['progress'],
                              min_trials=sim['min_trials'])

    failures = []
    if not report.guarantee_holds:
        failures.append({
            'kind': 'bound-violation',
            'message': (f"worst-case failure {report.worst_case_failure!r} exceeds delta {delta} "
                        f"+ 3 x {report.ci_halfwidth:.3g}"),
        })

    return build_report('simulate', parameters, report.to_dict(), failures=failures,
                        diagnostics=report.warnings)
