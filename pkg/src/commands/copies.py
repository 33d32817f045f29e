"""
Copies command implementation: copy-count formulas without an ensemble
"""
from src.bounds import copies_to_flatten_gram, joint_error_bound, joint_pgm_copies, two_stage_copies
from src.errors import ValidationError
from src.formats import build_report
from src.utils.logger import setup_logger
from src.utils.validator import validate_probability_params

logger = setup_logger(__name__)


def run_copies(epsilon, delta, n=None, gram_norm=None, max_overlap=None, eta=None):
    """
    Evaluate the copy-count formulas

    Args:
        epsilon: Distinguishability gap
        delta: Target failure probability
        n: Number of states (joint PGM budget)
        gram_norm: ||G|| (two-stage budget)
        max_overlap: max |<psi_i|psi_j>| (Gram flattening, with n and eta)
        eta: Allowed Gram norm excess over 1

    Raises:
        ValidationError: If neither n nor gram_norm is given
        DegenerateEnsembleError: If epsilon is 0

    Returns:
        Report dictionary
    """
    validate_probability_params(delta, epsilon)
    if epsilon is None:
        raise ValidationError("--epsilon is required for copies")
    if n is None and gram_norm is None:
        raise ValidationError("copies needs --n (joint PGM budget) and/or --gram-norm (two-stage budget)")

    parameters = {'epsilon': epsilon, 'delta': delta, 'n': n, 'gram_norm': gram_norm,
                  'max_overlap': max_overlap, 'eta': eta}
    results = {}

    if n is not None:
        joint = joint_pgm_copies(n, epsilon, delta)
        tight, loose = joint_error_bound(n, 1.0 - epsilon, joint.k)
        results['joint_pgm'] = dict(joint.to_dict(), union_bound=tight, exponential_bound=loose)
        logger.info(f"✓ Joint PGM: {joint}")

    if gram_norm is not None:
        staged = two_stage_copies(gram_norm, epsilon, delta)
        results['two_stage'] = staged.to_dict()
        logger.info(f"✓ Two-stage: {staged}")

    if max_overlap is not None and eta is not None:
        if n is None:
            raise ValidationError("--max-overlap/--eta need --n")
        results['flatten_gram_k'] = copies_to_flatten_gram(n, max_overlap, eta)

    return build_report('copies', parameters, results)
