"""
Configuration and parameter validation utilities

Every validator collects all problems before raising, so a single run
reports everything that is wrong.
"""
from src.errors import ValidationError
from src.states import GENERATOR_KINDS
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def get_nested_value(data, path):
    """
    Get nested value from dict using dot notation

    Args:
        data: Dictionary
        path: Dot notation path (e.g., 'numerics.support_cutoff')

    Returns:
        Value or None
    """
    keys = path.split('.')
    value = data
    for key in keys:
        if isinstance(value, dict) and key in value:
            value = value[key]
        else:
            return None
    return value


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _seed_errors(seed, command):
    if seed is None:
        return [f"--seed is required for {command}"]
    if not _is_int(seed) or seed < 0:
        return [f"--seed must be a non-negative integer, got {seed!r}"]
    return []


def _raise(title, errors):
    if errors:
        raise ValidationError(f"{title}:\n" + "\n".join(f"  - {e}" for e in errors))


def validate_config(config):
    """
    Validate configuration types and ranges

    Args:
        config: Configuration dictionary (defaults merged)

    Raises:
        ValidationError: If validation fails

    Returns:
        True if valid
    """
    errors = []

    positive_floats = [
        'numerics.support_cutoff',
        'numerics.file_tol',
        'numerics.slack_tol',
        'numerics.chain_tol',
    ]
    for field in positive_floats:
        value = get_nested_value(config, field)
        if not _is_number(value) or value <= 0:
            errors.append(f"{field} must be a positive number, got {value!r}")
        elif value >= 1e-3:
            errors.append(f"{field} is too loose for numerical checks (>= 1e-3): {value}")

    positive_ints = [
        'numerics.tensor_size_limit',
        'simulation.min_trials',
        'simulation.workers',
        'defaults.trials',
    ]
    for field in positive_ints:
        value = get_nested_value(config, field)
        if not _is_int(value) or value < 1:
            errors.append(f"{field} must be a positive integer, got {value!r}")

    trials = get_nested_value(config, 'defaults.trials')
    min_trials = get_nested_value(config, 'simulation.min_trials')
    if _is_int(trials) and _is_int(min_trials) and trials < min_trials:
        errors.append(f"defaults.trials ({trials}) is below simulation.min_trials ({min_trials})")

    delta = get_nested_value(config, 'defaults.delta')
    if not _is_number(delta) or not 0 < delta < 1:
        errors.append(f"defaults.delta must lie in (0, 1), got {delta!r}")

    fmt = get_nested_value(config, 'defaults.format')
    if fmt not in ('structured', 'tabular'):
        errors.append(f"defaults.format must be 'structured' or 'tabular', got {fmt!r}")

    if not isinstance(get_nested_value(config, 'simulation.progress'), bool):
        errors.append("simulation.progress must be true or false")

    level = get_nested_value(config, 'logging.level')
    if not isinstance(level, str) or level.upper() not in LOG_LEVELS:
        errors.append(f"logging.level must be one of {LOG_LEVELS}, got {level!r}")

    _raise("Configuration validation failed", errors)
    logger.debug("✓ Configuration validation passed")
    return True


def validate_generator_params(kind, d=None, n=None, c=None, rank=None, seed=None):
    """
    Check generator parameters before any state is built

    Args:
        kind: Generator name
        d, n, c, rank, seed: Generator parameters

    Raises:
        ValidationError: Listing every problem

    Returns:
        True if valid
    """
    errors = []
    if kind not in GENERATOR_KINDS:
        _raise("Invalid generator parameters", [f"unknown generator kind {kind!r}, expected one of {GENERATOR_KINDS}"])

    if not _is_int(n) or n < 2:
        errors.append(f"n must be an integer >= 2, got {n!r}")

    if kind == 'equal-overlap':
        if not _is_number(c) or not 0 <= c < 1:
            errors.append(f"c must lie in [0, 1), got {c!r}")
    else:
        if not _is_int(d) or d < 1:
            errors.append(f"d must be a positive integer, got {d!r}")
        errors.extend(_seed_errors(seed, f"the {kind} generator"))

    if kind == 'ginibre':
        if not _is_int(rank) or rank < 1:
            errors.append(f"rank must be a positive integer, got {rank!r}")
        elif _is_int(d) and rank > d:
            errors.append(f"rank must not exceed d = {d}, got {rank}")

    _raise("Invalid generator parameters", errors)
    return True


def validate_probability_params(delta=None, epsilon=None):
    """
    Check delta in (0, 1) and epsilon in [0, 1] when given

    epsilon = 0 passes here; the copy formulas report it as a degenerate ensemble.

    Raises:
        ValidationError: Listing every problem
    """
    _raise("Invalid probability parameters", _probability_errors(delta, epsilon))
    return True


def _probability_errors(delta, epsilon):
    errors = []
    if delta is not None and not (_is_number(delta) and 0 < delta < 1):
        errors.append(f"delta must lie in (0, 1), got {delta!r}")
    if epsilon is not None and not (_is_number(epsilon) and 0 <= epsilon <= 1):
        errors.append(f"epsilon must lie in [0, 1], got {epsilon!r}")
    return errors


def validate_simulation_params(trials, seed, workers, min_trials, delta=None, epsilon=None):
    """
    Check simulate command parameters

    Raises:
        ValidationError: Listing every problem
    """
    errors = []
    errors.extend(_seed_errors(seed, "simulate"))
    if not _is_int(trials) or trials < min_trials:
        errors.append(f"trials must be an integer >= {min_trials}, got {trials!r}")
    if not _is_int(workers) or workers < 1:
        errors.append(f"workers must be a positive integer, got {workers!r}")
    errors.extend(_probability_errors(delta, epsilon))
    _raise("Invalid simulation parameters", errors)
    return True
