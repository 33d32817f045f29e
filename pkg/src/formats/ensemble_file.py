"""
Ensemble file reader and writer

Format:
    {"dim": d,
     "states": [{"type": "pure", "amplitudes": [[re, im], ...]},
                {"type": "mixed", "matrix": [[[re, im], ...], ...]}]}

Inputs are never renormalized: a state whose norm or trace is off by more
than the file tolerance is rejected. Written numbers use the shortest repr
that round-trips the double (at most 17 significant digits), so a saved
ensemble reloads bit-identically.
"""
import json
from numbers import Real
from pathlib import Path

import numpy as np

from src.errors import ParseError, ToolkitError
from src.linalg import SUPPORT_CUTOFF
from src.states import DensityMatrix, Ensemble, validate_density
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

FILE_TOL = 1e-8
STATE_TYPES = ('pure', 'mixed')


def _is_number(value):
    return isinstance(value, Real) and not isinstance(value, bool)


def _complex(value, where):
    if not (isinstance(value, list) and len(value) == 2 and all(_is_number(x) for x in value)):
        raise ParseError(f"{where}: expected a [re, im] pair, got {value!r}")
    return complex(float(value[0]), float(value[1]))


def _complex_vector(values, length, where):
    if not isinstance(values, list) or len(values) != length:
        raise ParseError(f"{where}: expected a list of {length} [re, im] pairs")
    return np.array([_complex(v, f"{where}[{k}]") for k, v in enumerate(values)], dtype=complex)


def _parse_state(entry, dim, index, tol, cutoff):
    where = f"states[{index}]"
    if not isinstance(entry, dict):
        raise ParseError(f"{where}: expected an object, got {type(entry).__name__}")
    kind = entry.get('type')
    if kind not in STATE_TYPES:
        raise ParseError(f"{where}.type: expected one of {STATE_TYPES}, got {kind!r}")

    if kind == 'pure':
        amplitudes = _complex_vector(entry.get('amplitudes'), dim, f"{where}.amplitudes")
        return DensityMatrix.from_vector(amplitudes, tol=tol, cutoff=cutoff)

    rows = entry.get('matrix')
    if not isinstance(rows, list) or len(rows) != dim:
        raise ParseError(f"{where}.matrix: expected {dim} rows")
    matrix = np.stack([_complex_vector(row, dim, f"{where}.matrix[{r}]") for r, row in enumerate(rows)])
    return validate_density(matrix, tol=tol, cutoff=cutoff)


def parse_ensemble(data, source='<data>', tol=FILE_TOL, cutoff=SUPPORT_CUTOFF):
    """
    Build an Ensemble from a decoded ensemble document

    Args:
        data: Decoded JSON object
        source: Name used in error messages
        tol: Norm / trace / eigenvalue tolerance
        cutoff: Relative support cutoff

    Raises:
        ParseError: On structural problems, naming the JSON path
        ValidationError: On invalid states, naming the state index

    Returns:
        Ensemble
    """
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be an object")
    dim = data.get('dim')
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"{source}: dim: expected a positive integer, got {dim!r}")
    entries = data.get('states')
    if not isinstance(entries, list):
        raise ParseError(f"{source}: states: expected a list")

    states = []
    for index, entry in enumerate(entries):
        try:
            states.append(_parse_state(entry, dim, index, tol, cutoff))
        except ParseError as e:
            raise ParseError(f"{source}: {e}") from e
        except ToolkitError as e:
            raise type(e)(f"{source}: states[{index}]: {e}") from e

    try:
        return Ensemble(states, label=str(source))
    except ToolkitError as e:
        raise type(e)(f"{source}: {e}") from e


def load_ensemble(path, tol=FILE_TOL, cutoff=SUPPORT_CUTOFF):
    """
    Read and validate an ensemble file

    Args:
        path: File path

    Raises:
        FileNotFoundError: If the file does not exist
        ParseError: On malformed JSON or structure

    Returns:
        Ensemble
    """
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"Ensemble file not found: {path}")
    try:
        data = json.loads(file_path.read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e

    ensemble = parse_ensemble(data, source=path, tol=tol, cutoff=cutoff)
    logger.info(f"Loaded {ensemble} from: {path}")
    return ensemble


def _pair(z):
    return [float(z.real), float(z.imag)]


def ensemble_to_dict(ensemble):
    """
    Ensemble document; vector states are written as pure entries

    Floats are written with Python's shortest round-trip repr, so reading the
    file back reproduces every double exactly.
    """
    states = []
    for state in ensemble:
        if state.vector is not None:
            states.append({'type': 'pure', 'amplitudes': [_pair(z) for z in state.vector]})
        else:
            states.append({'type': 'mixed', 'matrix': [[_pair(z) for z in row] for row in state.matrix]})
    return {'dim': ensemble.dim, 'states': states}


def save_ensemble(path, ensemble):
    """
    Write an ensemble file

    Args:
        path: Output path
        ensemble: Ensemble
    """
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    file_path.write_text(json.dumps(ensemble_to_dict(ensemble), indent=2) + '\n')
    logger.info(f"Ensemble written to: {path}")
