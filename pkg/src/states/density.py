"""
Validated density matrices, ensembles, fidelity and tensor powers

Fidelity follows the unsquared convention F(rho, sigma) = ||sqrt(rho) sqrt(sigma)||_1,
which reduces to |<psi|phi>| for pure states.
"""
from functools import reduce

import numpy as np

from src.errors import (
    DimensionMismatchError, NegativeEigenvalueError, SizeLimitError,
    TraceError, ValidationError
)
from src.linalg import (
    SUPPORT_CUTOFF, TOL_HERM, apply_on_support, check_hermitian,
    hermitian_eig, support_mask, trace_norm
)
from src.linalg.hermitian import as_square
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

STATE_TOL = 1e-10
TENSOR_SIZE_LIMIT = 2 ** 20


class DensityMatrix:
    """
    Hermitian, positive semidefinite, unit-trace matrix

    Instances are built by validate_density, DensityMatrix.from_vector or
    tensor_power and are not modified afterwards. A state created from an
    amplitude vector keeps that vector; its d x d matrix and
    eigendecomposition are only materialized when requested.
    """

    def __init__(self, matrix=None, eig=None, vector=None, cutoff=SUPPORT_CUTOFF):
        if matrix is None and vector is None:
            raise ValidationError("DensityMatrix needs a matrix or an amplitude vector")
        if matrix is not None:
            matrix = np.array(matrix, dtype=complex)
            matrix.setflags(write=False)
        if vector is not None:
            vector = np.array(vector, dtype=complex).reshape(-1)
            vector.setflags(write=False)
        self._matrix = matrix
        self._eig = eig
        self._vector = vector
        self._sqrt = None
        self.cutoff = cutoff
        self.dim = int(vector.shape[0] if vector is not None else matrix.shape[0])

    @classmethod
    def from_vector(cls, vector, tol=STATE_TOL, cutoff=SUPPORT_CUTOFF):
        """
        Pure state |psi><psi| from an amplitude vector

        Args:
            vector: Complex amplitudes
            tol: Allowed deviation of ||psi||^2 from 1
            cutoff: Relative support cutoff

        Raises:
            TraceError: If the vector is not normalized within tol

        Returns:
            DensityMatrix
        """
        psi = np.asarray(vector, dtype=complex).reshape(-1)
        if psi.size == 0:
            raise ValidationError("Amplitude vector is empty")
        norm_sq = float(np.vdot(psi, psi).real)
        if abs(norm_sq - 1.0) > tol:
            raise TraceError(f"State vector norm^2 is {norm_sq!r}, expected 1 within {tol:g}")
        return cls(vector=psi, cutoff=cutoff)

    @property
    def vector(self):
        """Amplitude vector, or None for states given as matrices"""
        return self._vector

    @property
    def matrix(self):
        if self._matrix is None:
            m = np.outer(self._vector, self._vector.conj())
            m.setflags(write=False)
            self._matrix = m
        return self._matrix

    @property
    def eig(self):
        if self._eig is None:
            self._eig = hermitian_eig(self.matrix)
        return self._eig

    @property
    def rank(self):
        if self._vector is not None:
            return 1
        return int(np.count_nonzero(support_mask(self.eig.eigenvalues, self.cutoff)))

    @property
    def is_pure(self):
        return self.rank == 1

    @property
    def purity(self):
        """tr(rho^2)"""
        if self._vector is not None:
            return float(np.vdot(self._vector, self._vector).real ** 2)
        return float(np.sum(np.abs(self.matrix) ** 2))

    @property
    def sqrt(self):
        if self._sqrt is None:
            s = apply_on_support(self.eig, np.sqrt, self.cutoff)
            s.setflags(write=False)
            self._sqrt = s
        return self._sqrt

    def eigenpairs(self):
        """
        Eigenvalues and eigenvectors on the support

        Pure states given as vectors return their own normalized vector, so
        weighted eigenvectors reproduce the original amplitudes and phases.

        Returns:
            Tuple (eigenvalues, d x r matrix of eigenvector columns)
        """
        if self._vector is not None:
            norm_sq = float(np.vdot(self._vector, self._vector).real)
            return np.array([norm_sq]), (self._vector / np.sqrt(norm_sq))[:, None]
        eig = self.eig
        mask = support_mask(eig.eigenvalues, self.cutoff)
        return eig.eigenvalues[mask], eig.eigenvectors[:, mask]

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, rank={self.rank})"


def validate_density(raw, tol=STATE_TOL, cutoff=SUPPORT_CUTOFF, tol_herm=TOL_HERM):
    """
    Validate a raw matrix as a density matrix

    Args:
        raw: d x d complex array-like
        tol: Tolerance on negative eigenvalues and on the trace
        cutoff: Relative support cutoff for the rank
        tol_herm: Hermiticity tolerance

    Raises:
        NotHermitianError: Matrix differs from its adjoint
        NegativeEigenvalueError: An eigenvalue is below -tol
        TraceError: Trace differs from 1 by more than tol

    Returns:
        DensityMatrix
    """
    h = check_hermitian(as_square(raw), tol_herm)
    eig = hermitian_eig(h, tol_herm)

    lam_min = float(eig.eigenvalues[0])
    if lam_min < -tol:
        raise NegativeEigenvalueError(f"Eigenvalue {lam_min!r} is below -{tol:g}")

    trace = float(np.trace(h).real)
    if abs(trace - 1.0) > tol:
        raise TraceError(f"Trace is {trace!r}, expected 1 within {tol:g}")

    return DensityMatrix(matrix=h, eig=eig, cutoff=cutoff)


def fidelity(a, b):
    """
    F(a, b) = ||sqrt(a) sqrt(b)||_1

    Args:
        a: DensityMatrix
        b: DensityMatrix

    Raises:
        DimensionMismatchError: If dimensions differ

    Returns:
        Fidelity in [0, 1]
    """
    if a.dim != b.dim:
        raise DimensionMismatchError(f"Cannot compare states of dimension {a.dim} and {b.dim}")
    if a.vector is not None and b.vector is not None:
        value = abs(np.vdot(a.vector, b.vector))
    else:
        value = trace_norm(a.sqrt @ b.sqrt)
    return float(min(max(value, 0.0), 1.0))


def tensor_power(state, k, size_limit=TENSOR_SIZE_LIMIT):
    """
    Exact Kronecker power rho^{(x)k}

    Vector states are powered as vectors (d^k stored entries); matrix states
    as matrices (d^{2k} stored entries). Either count must stay within
    size_limit.

    Args:
        state: DensityMatrix
        k: Number of copies (>= 1)
        size_limit: Maximum number of stored entries

    Raises:
        SizeLimitError: If the power would exceed size_limit

    Returns:
        DensityMatrix of dimension d^k
    """
    if int(k) != k or k < 1:
        raise ValidationError(f"Copy count must be a positive integer, got {k}")
    k = int(k)
    if k == 1:
        return state

    if state.vector is not None:
        entries = state.dim ** k
        if entries > size_limit:
            raise SizeLimitError(
                f"Tensor power needs {entries} entries (d={state.dim}, k={k}), limit is {size_limit}; "
                f"use the entrywise Gram power for pure ensembles"
            )
        vec = reduce(np.kron, [state.vector] * k)
        return DensityMatrix(vector=vec, cutoff=state.cutoff)

    entries = state.dim ** (2 * k)
    if entries > size_limit:
        raise SizeLimitError(
            f"Tensor power needs {entries} matrix entries (d={state.dim}, k={k}), limit is {size_limit}"
        )
    mat = reduce(np.kron, [state.matrix] * k)
    return DensityMatrix(matrix=mat, cutoff=state.cutoff)


class Ensemble:
    """Ordered list of n >= 2 density matrices of a common dimension"""

    def __init__(self, states, label=None):
        states = tuple(states)
        if len(states) < 2:
            raise ValidationError(f"An ensemble needs at least 2 states, got {len(states)}")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise DimensionMismatchError(f"Ensemble states have differing dimensions: {sorted(dims)}")
        self.states = states
        self.label = label
        self.dim = states[0].dim
        self._fidelities = None
        self._overlaps = None

    @classmethod
    def from_vectors(cls, vectors, tol=STATE_TOL, cutoff=SUPPORT_CUTOFF, label=None):
        """Pure ensemble from the rows of an n x d amplitude array"""
        return cls([DensityMatrix.from_vector(v, tol, cutoff) for v in vectors], label=label)

    @property
    def n(self):
        return len(self.states)

    @property
    def is_pure(self):
        return all(s.is_pure for s in self.states)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, index):
        return self.states[index]

    def pure_vectors(self):
        """
        d x n matrix whose columns are the pure states' vectors

        Raises:
            ValidationError: If some state is not pure
        """
        columns = []
        for i, state in enumerate(self.states):
            weights, vectors = state.eigenpairs()
            if weights.size != 1:
                raise ValidationError(f"State {i} has rank {weights.size}, expected a pure state")
            columns.append(np.sqrt(weights[0]) * vectors[:, 0])
        return np.stack(columns, axis=1)

    def fidelity_matrix(self):
        """n x n matrix of pairwise fidelities (unit diagonal)"""
        if self._fidelities is None:
            n = self.n
            f = np.eye(n)
            for i in range(n):
                for j in range(i + 1, n):
                    f[i, j] = f[j, i] = fidelity(self.states[i], self.states[j])
            f.setflags(write=False)
            self._fidelities = f
        return self._fidelities

    def overlap_matrix(self):
        """n x n matrix of tr(rho_i rho_j)"""
        if self._overlaps is None:
            if all(s.vector is not None for s in self.states):
                v = np.stack([s.vector for s in self.states], axis=1)
                o = np.abs(v.conj().T @ v) ** 2
            else:
                n = self.n
                o = np.empty((n, n))
                for i in range(n):
                    for j in range(i, n):
                        o[i, j] = o[j, i] = float(np.vdot(self.states[j].matrix, self.states[i].matrix).real)
            o.setflags(write=False)
            self._overlaps = o
        return self._overlaps

    def has_duplicates(self, tol=1e-9):
        """True when two distinct entries have fidelity 1 within tol"""
        f = self.fidelity_matrix()
        off = f[~np.eye(self.n, dtype=bool)]
        return bool(np.max(off) >= 1.0 - tol)

    def __repr__(self):
        kind = 'pure' if self.is_pure else 'mixed'
        return f"Ensemble(n={self.n}, dim={self.dim}, {kind})"
