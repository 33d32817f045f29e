"""
Random and structured ensemble generators

Every generator is a deterministic function of its parameters and seed.
"""
import numpy as np

from src.errors import ValidationError
from src.linalg import SUPPORT_CUTOFF, psd_sqrt
from src.states.density import DensityMatrix, Ensemble
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

GENERATOR_KINDS = ('haar', 'sign', 'equal-overlap', 'ginibre')


def _check_sizes(d, n):
    errors = []
    if int(d) != d or d < 1:
        errors.append(f"dimension d must be a positive integer, got {d}")
    if int(n) != n or n < 2:
        errors.append(f"state count n must be an integer >= 2, got {n}")
    if errors:
        raise ValidationError("Invalid generator parameters:\n" + "\n".join(f"  - {e}" for e in errors))


def _complex_gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def gen_haar_pure(d, n, seed, cutoff=SUPPORT_CUTOFF):
    """
    Haar-random pure states

    Each state is a normalized vector of iid standard complex Gaussians.

    Args:
        d: Dimension
        n: Number of states
        seed: Integer seed

    Returns:
        Pure Ensemble
    """
    _check_sizes(d, n)
    rng = np.random.default_rng(seed)
    x = _complex_gaussian(rng, (int(n), int(d)))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    logger.debug(f"Generated {n} Haar states in dimension {d} (seed={seed})")
    return Ensemble.from_vectors(x, cutoff=cutoff, label=f"haar(d={d}, n={n}, seed={seed})")


def gen_sign_states(d, n, seed, cutoff=SUPPORT_CUTOFF):
    """
    Random sign states (1/sqrt(d)) sum_i z_i |i>, z_i uniform in {+1, -1}

    Duplicates are permitted.

    Args:
        d: Dimension
        n: Number of states
        seed: Integer seed

    Returns:
        Pure Ensemble
    """
    _check_sizes(d, n)
    rng = np.random.default_rng(seed)
    signs = rng.choice(np.array([-1.0, 1.0]), size=(int(n), int(d)))
    x = signs.astype(complex) / np.sqrt(d)
    return Ensemble.from_vectors(x, cutoff=cutoff, label=f"sign(d={d}, n={n}, seed={seed})")


def equal_overlap_gram(n, c):
    """(1 - c) I + c J"""
    return (1.0 - c) * np.eye(n) + c * np.ones((n, n))


def gen_equal_overlap(n, c, cutoff=SUPPORT_CUTOFF):
    """
    n pure states in dimension n with all pairwise inner products equal to c

    The states are the columns of the PSD square root of (1 - c) I + c J.

    Args:
        n: Number of states
        c: Common real overlap in [0, 1)

    Raises:
        ValidationError: If c is outside [0, 1)

    Returns:
        Pure Ensemble
    """
    _check_sizes(n, n)
    if not 0.0 <= c < 1.0:
        raise ValidationError(f"Equal-overlap constant c must lie in [0, 1), got {c}")
    root = psd_sqrt(equal_overlap_gram(int(n), float(c)))
    # Columns of a Hermitian root R satisfy <r_i|r_j> = (R^dagger R)_ij = G_ij
    vectors = root.T.copy()
    vectors /= np.linalg.norm(vectors, axis=1, keepdims=True)
    return Ensemble.from_vectors(vectors, cutoff=cutoff, label=f"equal-overlap(n={n}, c={c})")


def gen_ginibre_mixed(d, rank, n, seed, cutoff=SUPPORT_CUTOFF):
    """
    Mixed states X X^dagger / tr(X X^dagger), X a d x rank complex Gaussian matrix

    Args:
        d: Dimension
        rank: Columns of X (1 <= rank <= d)
        n: Number of states
        seed: Integer seed

    Raises:
        ValidationError: If rank is outside [1, d]

    Returns:
        Ensemble
    """
    _check_sizes(d, n)
    if int(rank) != rank or not 1 <= rank <= d:
        raise ValidationError(f"Ginibre rank must be an integer in [1, {d}], got {rank}")
    rng = np.random.default_rng(seed)
    states = []
    for _ in range(int(n)):
        x = _complex_gaussian(rng, (int(d), int(rank)))
        rho = x @ x.conj().T
        rho = (rho + rho.conj().T) / 2
        rho /= np.trace(rho).real
        states.append(DensityMatrix(matrix=rho, cutoff=cutoff))
    return Ensemble(states, label=f"ginibre(d={d}, rank={rank}, n={n}, seed={seed})")


def generate(kind, d=None, n=None, c=None, rank=None, seed=None, cutoff=SUPPORT_CUTOFF):
    """
    Dispatch to a generator by name

    Args:
        kind: One of GENERATOR_KINDS
        d, n, c, rank, seed: Generator parameters

    Returns:
        Ensemble
    """
    if kind == 'haar':
        return gen_haar_pure(d, n, seed, cutoff)
    if kind == 'sign':
        return gen_sign_states(d, n, seed, cutoff)
    if kind == 'equal-overlap':
        return gen_equal_overlap(n, c, cutoff)
    if kind == 'ginibre':
        return gen_ginibre_mixed(d, rank, n, seed, cutoff)
    raise ValidationError(f"Unknown generator kind: {kind}")
