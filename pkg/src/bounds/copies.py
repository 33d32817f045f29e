"""
Copy-count formulas

joint_pgm_copies:  k = ceil((2/eps) ln(n/delta)) copies measured jointly with the PGM,
                   for ensembles with pairwise fidelity <= 1 - eps.
two_stage_copies:  k = ceil(||G|| ln(2/delta)) single-copy PGM runs followed by
                   l = ceil(ln(2k/delta)/eps) accept/reject tests per outcome,
                   for pure ensembles with tr(rho_i rho_j) <= 1 - eps.
"""
import math

from src.bounds.reports import CopyBudget
from src.errors import DegenerateEnsembleError, ValidationError

# Values at most this relative distance above an integer are treated as
# rounding noise, so that e.g. (2/1) ln(e) evaluates to exactly 2.
CEIL_SNAP = 1e-12

# Spectral norms this far below 1 are eigensolver error
GRAM_NORM_TOL = 1e-9


def exact_ceil(x):
    """
    Ceiling that ignores floating-point noise just above an integer

    Only the excess above the integer below is snapped, and only within
    CEIL_SNAP * max(1, |x|); anything further above rounds up. The snap can
    undercount by one only when the exact value exceeds an integer by less
    than that tolerance.
    """
    floor = math.floor(x)
    if 0 < x - floor <= CEIL_SNAP * max(1.0, abs(x)):
        return int(floor)
    return int(math.ceil(x))


def _check_epsilon_delta(epsilon, delta):
    if epsilon == 0:
        raise DegenerateEnsembleError(
            "epsilon = 0: the ensemble contains indistinguishable (duplicate) states, no copy count suffices"
        )
    errors = []
    if not 0 < epsilon <= 1:
        errors.append(f"epsilon must lie in (0, 1], got {epsilon}")
    if not 0 < delta < 1:
        errors.append(f"delta must lie in (0, 1), got {delta}")
    if errors:
        raise ValidationError("Invalid copy-count parameters:\n" + "\n".join(f"  - {e}" for e in errors))


def joint_pgm_copies(n, epsilon, delta):
    """
    Copies for the joint PGM on rho^{(x)k}

    Args:
        n: Number of states
        epsilon: Fidelity gap, max_{i!=j} F <= 1 - epsilon
        delta: Target worst-case failure probability

    Raises:
        DegenerateEnsembleError: If epsilon is 0

    Returns:
        CopyBudget with l = 0
    """
    _check_epsilon_delta(epsilon, delta)
    if int(n) != n or n < 2:
        raise ValidationError(f"n must be an integer >= 2, got {n}")
    k = max(1, exact_ceil((2.0 / epsilon) * math.log(n / delta)))
    return CopyBudget(k, 0, epsilon, delta, rule='joint-pgm')


def two_stage_copies(gram_norm, epsilon, delta):
    """
    Copies for the two-stage pure-state protocol

    Args:
        gram_norm: ||G|| (>= 1)
        epsilon: Overlap gap, max_{i!=j} tr(rho_i rho_j) <= 1 - epsilon
        delta: Target worst-case failure probability

    Raises:
        DegenerateEnsembleError: If epsilon is 0

    Returns:
        CopyBudget with total = k (l + 1)
    """
    _check_epsilon_delta(epsilon, delta)
    if gram_norm < 1 - GRAM_NORM_TOL:
        raise ValidationError(f"Gram norm must be >= 1, got {gram_norm}")
    gram_norm = max(float(gram_norm), 1.0)
    k = max(1, exact_ceil(gram_norm * math.log(2.0 / delta)))
    l = exact_ceil(math.log(2.0 * k / delta) / epsilon)
    return CopyBudget(k, l, epsilon, delta, rule='two-stage')


def powered_gram_norm_bound(max_overlap, n, k):
    """
    1 + (n - 1) max_{i!=j} |<psi_i|psi_j>|^k, an upper bound on the Gram norm
    of k-fold tensor powers of a pure ensemble
    """
    return 1.0 + (n - 1) * float(max_overlap) ** k


def copies_to_flatten_gram(n, max_overlap, eta):
    """
    Least k with 1 + (n - 1) max_overlap^k <= 1 + eta

    Args:
        n: Number of states
        max_overlap: max_{i!=j} |<psi_i|psi_j>| (< 1)
        eta: Allowed excess of the Gram norm over 1 (> 0)

    Raises:
        DegenerateEnsembleError: If max_overlap >= 1

    Returns:
        Integer k >= 1
    """
    if eta <= 0:
        raise ValidationError(f"eta must be positive, got {eta}")
    if max_overlap >= 1:
        raise DegenerateEnsembleError("Overlap 1 between distinct states: no number of copies separates them")
    if max_overlap <= 0 or (n - 1) * max_overlap <= eta:
        return 1
    return max(1, exact_ceil(math.log(eta / (n - 1)) / math.log(max_overlap)))


def joint_error_bound(n, max_fidelity, k):
    """
    Union bound on the k-copy joint PGM error

    Returns:
        Tuple (n(n-1) F^k, n^2 exp(-k eps)) with eps = 1 - F
    """
    tight = n * (n - 1) * float(max_fidelity) ** k
    loose = n * n * math.exp(-k * (1.0 - float(max_fidelity)))
    return tight, loose
